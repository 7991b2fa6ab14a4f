#pragma once

#include "pqcside/bytes.hpp"

// Pre-quantum suite: X25519 key agreement driven through the KEM interface
// (ciphertext = ephemeral public key) and Ed25519 signatures.
namespace pqcside::classical {

inline constexpr size_t kX25519PkLen = 32;
inline constexpr size_t kX25519SkLen = 64;  // scalar || own public key
inline constexpr size_t kX25519CtLen = 32;
inline constexpr size_t kEd25519PkLen = 32;
inline constexpr size_t kEd25519SkLen = 32;
inline constexpr size_t kEd25519SigLen = 64;

struct KemKeys {
    Bytes pk;
    Bytes sk;
};

KemKeys x25519_keygen();

struct KemResult {
    Bytes ciphertext;
    Bytes shared_secret;  // 32 bytes
};

KemResult x25519_encaps(ByteView pk);

// Never throws on a well-formed but hostile ciphertext: a degenerate point
// yields a garbage secret that fails downstream key confirmation.
Bytes x25519_decaps(ByteView sk, ByteView ct);

struct SigKeys {
    Bytes pk;
    Bytes sk;
};

SigKeys ed25519_keygen();
Bytes ed25519_sign(ByteView sk, ByteView message);
bool ed25519_verify(ByteView pk, ByteView message, ByteView signature);

}  // namespace pqcside::classical
