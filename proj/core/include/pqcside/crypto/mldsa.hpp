#pragma once

#include "pqcside/bytes.hpp"

namespace pqcside::mldsa {

enum class Level { l44, l65, l87 };

struct Sizes {
    size_t pk;
    size_t sk;
    size_t sig;
};

Sizes sizes(Level level);

struct KeyPair {
    Bytes pk;
    Bytes sk;
};

KeyPair keygen(Level level);

// Deterministic generation from the 32-byte seed. Test entry point.
KeyPair keygen_derand(Level level, ByteView xi);

// Deterministic signing (empty context string). Throws Error{malformed_key}
// on a wrong-length secret key.
Bytes sign(Level level, ByteView sk, ByteView message);

// Total: malformed keys, signatures, or hints simply verify false.
bool verify(Level level, ByteView pk, ByteView message, ByteView signature);

}  // namespace pqcside::mldsa
