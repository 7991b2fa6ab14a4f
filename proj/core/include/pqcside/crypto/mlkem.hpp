#pragma once

#include "pqcside/bytes.hpp"

namespace pqcside::mlkem768 {

// Module-lattice KEM at NIST category 3 (k = 3, q = 3329).
inline constexpr size_t kEkLen = 1184;
inline constexpr size_t kDkLen = 2400;
inline constexpr size_t kCtLen = 1088;
inline constexpr size_t kSsLen = 32;

struct KeyPair {
    Bytes ek;  // encapsulation (public) key
    Bytes dk;  // decapsulation (secret) key
};

KeyPair keygen();

// Deterministic generation from the 64-byte seed d||z. Test entry point.
KeyPair keygen_derand(ByteView seed);

struct Encapsulation {
    Bytes ciphertext;
    Bytes shared_secret;
};

// Throws Error{malformed_key} if ek has the wrong length or fails the
// canonical-encoding check.
Encapsulation encaps(ByteView ek);
Encapsulation encaps_derand(ByteView ek, ByteView m32);

// Throws Error{malformed_input} on wrong-length inputs. A corrupted but
// well-formed ciphertext yields the implicit-rejection secret, never an error.
Bytes decaps(ByteView dk, ByteView ct);

}  // namespace pqcside::mlkem768
