#include "pqcside/crypto/provider.hpp"

#include "pqcside/crypto/classical.hpp"
#include "pqcside/crypto/mldsa.hpp"
#include "pqcside/crypto/mlkem.hpp"
#include "pqcside/crypto/test_double.hpp"
#include "pqcside/error.hpp"

namespace pqcside {

namespace {

struct AlgName {
    AlgId id;
    std::string_view name;
};

constexpr AlgName kAlgNames[] = {
    {AlgId::mlkem768, "ML-KEM-768"}, {AlgId::x25519, "x25519"},
    {AlgId::mldsa44, "ML-DSA-44"},   {AlgId::mldsa65, "ML-DSA-65"},
    {AlgId::mldsa87, "ML-DSA-87"},   {AlgId::ed25519, "ed25519"},
    {AlgId::td_kem, "td-kem"},       {AlgId::td_sig, "td-sig"},
};

mldsa::Level dsa_level(AlgId alg) {
    switch (alg) {
        case AlgId::mldsa44: return mldsa::Level::l44;
        case AlgId::mldsa65: return mldsa::Level::l65;
        default: return mldsa::Level::l87;
    }
}

bool is_kem(AlgId alg) {
    return alg == AlgId::mlkem768 || alg == AlgId::x25519 || alg == AlgId::td_kem;
}

bool is_sig(AlgId alg) {
    return alg == AlgId::mldsa44 || alg == AlgId::mldsa65 || alg == AlgId::mldsa87 ||
           alg == AlgId::ed25519 || alg == AlgId::td_sig;
}

void require_kem(AlgId alg) {
    if (!is_kem(alg)) throw Error(Errc::unknown_algorithm, "not a registered KEM algorithm");
}

void require_sig(AlgId alg) {
    if (!is_sig(alg)) throw Error(Errc::unknown_algorithm, "not a registered signature algorithm");
}

}  // namespace

std::string_view alg_name(AlgId alg) {
    for (const auto& e : kAlgNames) {
        if (e.id == alg) return e.name;
    }
    return "unknown";
}

std::optional<AlgId> alg_from_name(std::string_view name) {
    for (const auto& e : kAlgNames) {
        if (e.name == name) return e.id;
    }
    return std::nullopt;
}

Provider::Provider() {
    register_suite("pqc", {AlgId::mlkem768, AlgId::mldsa65}, false);
    register_suite("classical", {AlgId::x25519, AlgId::ed25519}, false);
    register_suite("testdouble", {AlgId::td_kem, AlgId::td_sig}, true);
}

KemKeyPair Provider::generate_kem_keypair(AlgId alg) const {
    require_kem(alg);
    switch (alg) {
        case AlgId::mlkem768: {
            auto kp = mlkem768::keygen();
            return {alg, std::move(kp.ek), std::move(kp.dk)};
        }
        case AlgId::x25519: {
            auto kp = classical::x25519_keygen();
            return {alg, std::move(kp.pk), std::move(kp.sk)};
        }
        default: {
            auto kp = test_double::kem_keygen();
            return {alg, std::move(kp.pk), std::move(kp.sk)};
        }
    }
}

std::pair<Bytes, SharedSecret> Provider::encapsulate(ByteView public_key, AlgId alg) const {
    require_kem(alg);
    if (public_key.size() != kem_sizes(alg).public_key) {
        throw Error(Errc::malformed_key, "public key length mismatch");
    }
    switch (alg) {
        case AlgId::mlkem768: {
            auto enc = mlkem768::encaps(public_key);
            return {std::move(enc.ciphertext), {std::move(enc.shared_secret)}};
        }
        case AlgId::x25519: {
            auto enc = classical::x25519_encaps(public_key);
            return {std::move(enc.ciphertext), {std::move(enc.shared_secret)}};
        }
        default: {
            auto enc = test_double::kem_encaps(public_key);
            return {std::move(enc.ciphertext), {std::move(enc.shared_secret)}};
        }
    }
}

SharedSecret Provider::decapsulate(ByteView secret_key, ByteView ciphertext, AlgId alg) const {
    require_kem(alg);
    KemSizes sz = kem_sizes(alg);
    if (secret_key.size() != sz.secret_key || ciphertext.size() != sz.ciphertext) {
        throw Error(Errc::malformed_input, "decapsulation input length mismatch");
    }
    switch (alg) {
        case AlgId::mlkem768: return {mlkem768::decaps(secret_key, ciphertext)};
        case AlgId::x25519: return {classical::x25519_decaps(secret_key, ciphertext)};
        default: return {test_double::kem_decaps(secret_key, ciphertext)};
    }
}

KemSizes Provider::kem_sizes(AlgId alg) const {
    require_kem(alg);
    switch (alg) {
        case AlgId::mlkem768:
            return {mlkem768::kEkLen, mlkem768::kDkLen, mlkem768::kCtLen, mlkem768::kSsLen};
        case AlgId::x25519:
            return {classical::kX25519PkLen, classical::kX25519SkLen, classical::kX25519CtLen, 32};
        default:
            return {test_double::kKemPkLen, test_double::kKemSkLen, test_double::kKemCtLen, 32};
    }
}

SigKeyPair Provider::generate_sig_keypair(AlgId alg) const {
    require_sig(alg);
    switch (alg) {
        case AlgId::ed25519: {
            auto kp = classical::ed25519_keygen();
            return {alg, std::move(kp.pk), std::move(kp.sk)};
        }
        case AlgId::td_sig: {
            auto kp = test_double::sig_keygen();
            return {alg, std::move(kp.pk), std::move(kp.sk)};
        }
        default: {
            auto kp = mldsa::keygen(dsa_level(alg));
            return {alg, std::move(kp.pk), std::move(kp.sk)};
        }
    }
}

Bytes Provider::sign(ByteView secret_key, AlgId alg, ByteView message) const {
    require_sig(alg);
    switch (alg) {
        case AlgId::ed25519: return classical::ed25519_sign(secret_key, message);
        case AlgId::td_sig: return test_double::sig_sign(secret_key, message);
        default: return mldsa::sign(dsa_level(alg), secret_key, message);
    }
}

bool Provider::verify(ByteView public_key, AlgId alg, ByteView message,
                      ByteView signature) const {
    if (!is_sig(alg)) return false;
    switch (alg) {
        case AlgId::ed25519: return classical::ed25519_verify(public_key, message, signature);
        case AlgId::td_sig: return test_double::sig_verify(public_key, message, signature);
        default: return mldsa::verify(dsa_level(alg), public_key, message, signature);
    }
}

SigSizes Provider::sig_sizes(AlgId alg) const {
    require_sig(alg);
    switch (alg) {
        case AlgId::ed25519:
            return {classical::kEd25519PkLen, classical::kEd25519SkLen, classical::kEd25519SigLen};
        case AlgId::td_sig:
            return {test_double::kSigPkLen, test_double::kSigSkLen, test_double::kSigLen};
        default: {
            auto sz = mldsa::sizes(dsa_level(alg));
            return {sz.pk, sz.sk, sz.sig};
        }
    }
}

const Provider::SuiteEntry* Provider::find(std::string_view name) const {
    for (const auto& e : suites_) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

bool Provider::has_suite(std::string_view name) const {
    return find(name) != nullptr;
}

SuiteId Provider::suite(std::string_view name) const {
    const SuiteEntry* e = find(name);
    if (!e) throw Error(Errc::unknown_suite, "no suite named '" + std::string(name) + "'");
    return e->id;
}

bool Provider::suite_test_only(std::string_view name) const {
    const SuiteEntry* e = find(name);
    if (!e) throw Error(Errc::unknown_suite, "no suite named '" + std::string(name) + "'");
    return e->test_only;
}

std::vector<std::string> Provider::suite_names() const {
    std::vector<std::string> out;
    for (const auto& e : suites_) out.push_back(e.name);
    return out;
}

void Provider::register_suite(std::string name, SuiteId id, bool test_only) {
    require_kem(id.kem_alg);
    require_sig(id.sig_alg);
    suites_.push_back({std::move(name), id, test_only});
}

const Provider& default_provider() {
    static Provider p;
    return p;
}

}  // namespace pqcside
