#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pqcside {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(ByteView b) {
    return std::string(b.begin(), b.end());
}

std::string hex_encode(ByteView data);

// Throws Error{Errc::malformed_input} on odd length or non-hex characters.
Bytes hex_decode(std::string_view hex);

// Comparison that does not short-circuit on the first mismatching byte.
bool ct_equal(ByteView a, ByteView b);

inline void put_u16_be(Bytes& out, uint16_t v) {
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

inline void put_u24_be(Bytes& out, uint32_t v) {
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

inline void put_u32_be(Bytes& out, uint32_t v) {
    out.push_back(uint8_t(v >> 24));
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

inline void put_u64_be(Bytes& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(uint8_t(v >> shift));
}

// Sequential big-endian reader over a byte view. All getters throw
// Error{Errc::malformed_input} when the input is exhausted.
class ByteReader {
  public:
    explicit ByteReader(ByteView data) : data_(data) {}

    uint8_t u8();
    uint16_t u16_be();
    uint32_t u24_be();
    uint32_t u32_be();
    uint64_t u64_be();
    Bytes take(size_t n);
    size_t remaining() const { return data_.size() - pos_; }
    bool empty() const { return remaining() == 0; }

  private:
    void need(size_t n);
    ByteView data_;
    size_t pos_ = 0;
};

}  // namespace pqcside
