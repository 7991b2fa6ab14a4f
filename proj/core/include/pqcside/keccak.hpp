#pragma once

#include <array>
#include <cstdint>

#include "pqcside/bytes.hpp"

namespace pqcside {

// Keccak sponge with incremental absorb and squeeze. Used as SHA3-256/512
// (pad 0x06) and SHAKE128/256 (pad 0x1f). Squeezing may be called repeatedly;
// output is the XOF prefix stream.
class Keccak {
  public:
    Keccak(size_t rate_bytes, uint8_t domain_pad);

    void absorb(ByteView data);
    void squeeze(uint8_t* out, size_t n);
    Bytes squeeze(size_t n);

    static Keccak sha3_256() { return Keccak(136, 0x06); }
    static Keccak sha3_512() { return Keccak(72, 0x06); }
    static Keccak shake128() { return Keccak(168, 0x1f); }
    static Keccak shake256() { return Keccak(136, 0x1f); }

  private:
    void permute();
    void pad_and_switch();

    std::array<uint64_t, 25> state_{};
    size_t rate_;
    uint8_t domain_;
    size_t pos_ = 0;
    bool squeezing_ = false;
};

std::array<uint8_t, 32> sha3_256(ByteView data);
std::array<uint8_t, 64> sha3_512(ByteView data);
Bytes shake128(ByteView data, size_t out_len);
Bytes shake256(ByteView data, size_t out_len);

}  // namespace pqcside
