#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqcside/bytes.hpp"

namespace pqcside {

enum class AlgId : uint8_t {
    mlkem768 = 1,
    x25519 = 2,
    mldsa44 = 3,
    mldsa65 = 4,
    mldsa87 = 5,
    ed25519 = 6,
    td_kem = 7,  // deterministic test double, never benchmarked
    td_sig = 8,
};

std::string_view alg_name(AlgId alg);
std::optional<AlgId> alg_from_name(std::string_view name);

struct SuiteId {
    AlgId kem_alg;
    AlgId sig_alg;
};

struct KemSizes {
    size_t public_key, secret_key, ciphertext, shared_secret;
};

struct SigSizes {
    size_t public_key, secret_key, signature;
};

struct KemKeyPair {
    AlgId alg;
    Bytes public_key;
    Bytes secret_key;
};

struct SigKeyPair {
    AlgId alg;
    Bytes public_key;
    Bytes secret_key;
};

struct SharedSecret {
    Bytes bytes;  // always 32 for registered algorithms
};

// Uniform front over the KEM and signature primitives plus the suite
// registry. Suites are selected by name so deployments can swap algorithms
// through configuration alone. All operations are stateless per call and
// safe for concurrent use.
class Provider {
  public:
    Provider();

    KemKeyPair generate_kem_keypair(AlgId alg) const;
    std::pair<Bytes, SharedSecret> encapsulate(ByteView public_key, AlgId alg) const;
    SharedSecret decapsulate(ByteView secret_key, ByteView ciphertext, AlgId alg) const;
    KemSizes kem_sizes(AlgId alg) const;

    SigKeyPair generate_sig_keypair(AlgId alg) const;
    Bytes sign(ByteView secret_key, AlgId alg, ByteView message) const;
    // Total: rejection is a value, malformed inputs included.
    bool verify(ByteView public_key, AlgId alg, ByteView message, ByteView signature) const;
    SigSizes sig_sizes(AlgId alg) const;

    bool has_suite(std::string_view name) const;
    SuiteId suite(std::string_view name) const;  // throws Error{unknown_suite}
    bool suite_test_only(std::string_view name) const;
    std::vector<std::string> suite_names() const;

    // Registration is meant for process startup, before concurrent use.
    void register_suite(std::string name, SuiteId id, bool test_only);

  private:
    struct SuiteEntry {
        std::string name;
        SuiteId id;
        bool test_only;
    };
    std::vector<SuiteEntry> suites_;
    const SuiteEntry* find(std::string_view name) const;
};

const Provider& default_provider();

}  // namespace pqcside
