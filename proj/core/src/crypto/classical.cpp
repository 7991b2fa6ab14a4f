#include "pqcside/crypto/classical.hpp"

#include <openssl/evp.h>

#include <memory>

#include "pqcside/crypto/hash.hpp"
#include "pqcside/error.hpp"

namespace pqcside::classical {

namespace {

using PkeyPtr = std::unique_ptr<EVP_PKEY, decltype(&EVP_PKEY_free)>;
using CtxPtr = std::unique_ptr<EVP_PKEY_CTX, decltype(&EVP_PKEY_CTX_free)>;

PkeyPtr gen_key(int type) {
    CtxPtr ctx(EVP_PKEY_CTX_new_id(type, nullptr), EVP_PKEY_CTX_free);
    EVP_PKEY* raw = nullptr;
    if (!ctx || EVP_PKEY_keygen_init(ctx.get()) != 1 || EVP_PKEY_keygen(ctx.get(), &raw) != 1) {
        throw Error(Errc::io_failure, "key generation failed");
    }
    return PkeyPtr(raw, EVP_PKEY_free);
}

Bytes raw_public(EVP_PKEY* key) {
    size_t len = 0;
    EVP_PKEY_get_raw_public_key(key, nullptr, &len);
    Bytes out(len);
    if (EVP_PKEY_get_raw_public_key(key, out.data(), &len) != 1) {
        throw Error(Errc::io_failure, "raw public key export failed");
    }
    return out;
}

Bytes raw_private(EVP_PKEY* key) {
    size_t len = 0;
    EVP_PKEY_get_raw_private_key(key, nullptr, &len);
    Bytes out(len);
    if (EVP_PKEY_get_raw_private_key(key, out.data(), &len) != 1) {
        throw Error(Errc::io_failure, "raw private key export failed");
    }
    return out;
}

PkeyPtr import_public(int type, ByteView raw) {
    PkeyPtr key(EVP_PKEY_new_raw_public_key(type, nullptr, raw.data(), raw.size()),
                EVP_PKEY_free);
    if (!key) throw Error(Errc::malformed_key, "raw public key import failed");
    return key;
}

PkeyPtr import_private(int type, ByteView raw) {
    PkeyPtr key(EVP_PKEY_new_raw_private_key(type, nullptr, raw.data(), raw.size()),
                EVP_PKEY_free);
    if (!key) throw Error(Errc::malformed_key, "raw private key import failed");
    return key;
}

// Returns false on degenerate (all-zero) shared points instead of throwing.
bool x25519_raw(ByteView scalar, ByteView peer_pub, Bytes& out) {
    PkeyPtr sk = import_private(EVP_PKEY_X25519, scalar);
    PkeyPtr pk = import_public(EVP_PKEY_X25519, peer_pub);
    CtxPtr ctx(EVP_PKEY_CTX_new(sk.get(), nullptr), EVP_PKEY_CTX_free);
    size_t len = 32;
    out.assign(32, 0);
    if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
        EVP_PKEY_derive_set_peer(ctx.get(), pk.get()) != 1 ||
        EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1) {
        return false;
    }
    return true;
}

Bytes kdf(ByteView raw_shared, ByteView ct, ByteView pk) {
    Bytes input(raw_shared.begin(), raw_shared.end());
    input.insert(input.end(), ct.begin(), ct.end());
    input.insert(input.end(), pk.begin(), pk.end());
    auto h = sha256(input);
    return Bytes(h.begin(), h.end());
}

}  // namespace

KemKeys x25519_keygen() {
    PkeyPtr key = gen_key(EVP_PKEY_X25519);
    KemKeys out;
    out.pk = raw_public(key.get());
    out.sk = raw_private(key.get());
    out.sk.insert(out.sk.end(), out.pk.begin(), out.pk.end());
    return out;
}

KemResult x25519_encaps(ByteView pk) {
    if (pk.size() != kX25519PkLen) throw Error(Errc::malformed_key, "bad X25519 public key length");
    PkeyPtr eph = gen_key(EVP_PKEY_X25519);
    Bytes eph_pub = raw_public(eph.get());
    Bytes eph_priv = raw_private(eph.get());
    Bytes raw;
    if (!x25519_raw(eph_priv, pk, raw)) {
        throw Error(Errc::malformed_key, "degenerate X25519 public key");
    }
    KemResult out;
    out.ciphertext = eph_pub;
    out.shared_secret = kdf(raw, eph_pub, pk);
    return out;
}

Bytes x25519_decaps(ByteView sk, ByteView ct) {
    if (sk.size() != kX25519SkLen) throw Error(Errc::malformed_input, "bad X25519 secret key length");
    if (ct.size() != kX25519CtLen) throw Error(Errc::malformed_input, "bad X25519 ciphertext length");
    ByteView scalar = sk.subspan(0, 32);
    ByteView own_pub = sk.subspan(32, 32);
    Bytes raw;
    if (!x25519_raw(scalar, ct, raw)) {
        // Implicit-rejection analog: derive a secret unrelated to any honest one.
        Bytes reject = to_bytes("x25519-reject");
        reject.insert(reject.end(), sk.begin(), sk.end());
        return kdf(reject, ct, own_pub);
    }
    return kdf(raw, ct, own_pub);
}

SigKeys ed25519_keygen() {
    PkeyPtr key = gen_key(EVP_PKEY_ED25519);
    return {raw_public(key.get()), raw_private(key.get())};
}

Bytes ed25519_sign(ByteView sk, ByteView message) {
    if (sk.size() != kEd25519SkLen) throw Error(Errc::malformed_key, "bad Ed25519 key length");
    PkeyPtr key = import_private(EVP_PKEY_ED25519, sk);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    size_t len = kEd25519SigLen;
    Bytes sig(len);
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1 ||
        EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1) {
        throw Error(Errc::io_failure, "Ed25519 signing failed");
    }
    sig.resize(len);
    return sig;
}

bool ed25519_verify(ByteView pk, ByteView message, ByteView signature) {
    if (pk.size() != kEd25519PkLen || signature.size() != kEd25519SigLen) return false;
    PkeyPtr key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, pk.data(), pk.size()),
                EVP_PKEY_free);
    if (!key) return false;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) {
        return false;
    }
    return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(),
                            message.size()) == 1;
}

}  // namespace pqcside::classical
