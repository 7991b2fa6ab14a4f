#pragma once

#include "pqcside/bytes.hpp"

// Hash-based stand-ins with the provider interface shape and a fake size
// table. They let protocol tests run without lattice arithmetic. The suite
// that exposes them is flagged test-only and is rejected by benchmark
// scenario validation.
namespace pqcside::test_double {

inline constexpr size_t kKemPkLen = 32;
inline constexpr size_t kKemSkLen = 32;
inline constexpr size_t kKemCtLen = 32;
inline constexpr size_t kSigPkLen = 32;
inline constexpr size_t kSigSkLen = 32;
inline constexpr size_t kSigLen = 32;

struct KemKeys {
    Bytes pk, sk;
};
KemKeys kem_keygen();
KemKeys kem_keygen_seeded(ByteView seed32);

struct KemResult {
    Bytes ciphertext, shared_secret;
};
KemResult kem_encaps(ByteView pk);
Bytes kem_decaps(ByteView sk, ByteView ct);

struct SigKeys {
    Bytes pk, sk;
};
SigKeys sig_keygen();
SigKeys sig_keygen_seeded(ByteView seed32);
Bytes sig_sign(ByteView sk, ByteView message);
bool sig_verify(ByteView pk, ByteView message, ByteView signature);

}  // namespace pqcside::test_double
