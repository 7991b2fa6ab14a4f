#pragma once

#include <array>

#include "pqcside/bytes.hpp"

namespace pqcside {

std::array<uint8_t, 32> sha256(ByteView data);

// Incremental SHA-256, used for handshake transcripts.
class Sha256 {
  public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&);
    Sha256& operator=(const Sha256&);

    void update(ByteView data);
    std::array<uint8_t, 32> digest() const;  // does not disturb the running state

  private:
    void* ctx_;
};

Bytes hmac_sha256(ByteView key, ByteView data);

// Two-phase extract-and-expand key derivation over HMAC-SHA256.
Bytes hkdf_extract(ByteView salt, ByteView ikm);
Bytes hkdf_expand(ByteView prk, ByteView info, size_t out_len);

}  // namespace pqcside
