#include "pqcside/crypto/hash.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "pqcside/error.hpp"

namespace pqcside {

std::array<uint8_t, 32> sha256(ByteView data) {
    std::array<uint8_t, 32> out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error(Errc::io_failure, "SHA-256 failed");
    }
    return out;
}

Sha256::Sha256() {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        throw Error(Errc::io_failure, "SHA-256 init failed");
    }
    ctx_ = ctx;
}

Sha256::~Sha256() {
    EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

Sha256::Sha256(const Sha256& other) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_MD_CTX_copy_ex(ctx, static_cast<EVP_MD_CTX*>(other.ctx_)) != 1) {
        throw Error(Errc::io_failure, "SHA-256 copy failed");
    }
    ctx_ = ctx;
}

Sha256& Sha256::operator=(const Sha256& other) {
    if (this != &other) {
        if (EVP_MD_CTX_copy_ex(static_cast<EVP_MD_CTX*>(ctx_),
                               static_cast<EVP_MD_CTX*>(other.ctx_)) != 1) {
            throw Error(Errc::io_failure, "SHA-256 copy failed");
        }
    }
    return *this;
}

void Sha256::update(ByteView data) {
    if (EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size()) != 1) {
        throw Error(Errc::io_failure, "SHA-256 update failed");
    }
}

std::array<uint8_t, 32> Sha256::digest() const {
    Sha256 copy(*this);
    std::array<uint8_t, 32> out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(copy.ctx_), out.data(), &len) != 1) {
        throw Error(Errc::io_failure, "SHA-256 final failed");
    }
    return out;
}

Bytes hmac_sha256(ByteView key, ByteView data) {
    Bytes out(32);
    unsigned int len = 0;
    if (!HMAC(EVP_sha256(), key.data(), int(key.size()), data.data(), data.size(), out.data(),
              &len)) {
        throw Error(Errc::io_failure, "HMAC failed");
    }
    out.resize(len);
    return out;
}

Bytes hkdf_extract(ByteView salt, ByteView ikm) {
    return hmac_sha256(salt, ikm);
}

Bytes hkdf_expand(ByteView prk, ByteView info, size_t out_len) {
    Bytes okm;
    Bytes t;
    uint8_t counter = 1;
    while (okm.size() < out_len) {
        Bytes block = t;
        block.insert(block.end(), info.begin(), info.end());
        block.push_back(counter++);
        t = hmac_sha256(prk, block);
        okm.insert(okm.end(), t.begin(), t.end());
    }
    okm.resize(out_len);
    return okm;
}

}  // namespace pqcside
