#include "pqcside/keccak.hpp"

#include <bit>

namespace pqcside {

namespace {

struct Tables {
    std::array<uint64_t, 24> rc{};
    std::array<int, 25> rho{};

    Tables() {
        // LFSR-derived round constants.
        auto rc_bit = [](int t) {
            if (t % 255 == 0) return 1;
            uint8_t r = 0x01;
            for (int i = 1; i <= t % 255; ++i) {
                uint8_t msb = r & 0x80;
                r <<= 1;
                if (msb) r ^= 0x71;
            }
            return int(r & 1);
        };
        for (int ir = 0; ir < 24; ++ir) {
            uint64_t v = 0;
            for (int j = 0; j <= 6; ++j) {
                if (rc_bit(j + 7 * ir)) v |= uint64_t(1) << ((1 << j) - 1);
            }
            rc[ir] = v;
        }
        // Rotation offsets, lane (x, y) at index x + 5y.
        rho[0] = 0;
        int x = 1, y = 0;
        for (int t = 0; t < 24; ++t) {
            rho[x + 5 * y] = ((t + 1) * (t + 2) / 2) % 64;
            int nx = y, ny = (2 * x + 3 * y) % 5;
            x = nx;
            y = ny;
        }
    }
};

const Tables& tables() {
    static Tables t;
    return t;
}

void keccak_f1600(std::array<uint64_t, 25>& a) {
    const Tables& tb = tables();
    for (int round = 0; round < 24; ++round) {
        // theta
        uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x) d[x] = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
        for (int i = 0; i < 25; ++i) a[i] ^= d[i % 5];
        // rho + pi
        uint64_t b[25];
        for (int x = 0; x < 5; ++x) {
            for (int y = 0; y < 5; ++y) {
                b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(a[x + 5 * y], tb.rho[x + 5 * y]);
            }
        }
        // chi
        for (int y = 0; y < 5; ++y) {
            for (int x = 0; x < 5; ++x) {
                a[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
            }
        }
        // iota
        a[0] ^= tb.rc[round];
    }
}

}  // namespace

Keccak::Keccak(size_t rate_bytes, uint8_t domain_pad) : rate_(rate_bytes), domain_(domain_pad) {}

void Keccak::absorb(ByteView data) {
    for (uint8_t byte : data) {
        state_[pos_ / 8] ^= uint64_t(byte) << (8 * (pos_ % 8));
        if (++pos_ == rate_) {
            keccak_f1600(state_);
            pos_ = 0;
        }
    }
}

void Keccak::pad_and_switch() {
    state_[pos_ / 8] ^= uint64_t(domain_) << (8 * (pos_ % 8));
    state_[(rate_ - 1) / 8] ^= uint64_t(0x80) << (8 * ((rate_ - 1) % 8));
    keccak_f1600(state_);
    pos_ = 0;
    squeezing_ = true;
}

void Keccak::squeeze(uint8_t* out, size_t n) {
    if (!squeezing_) pad_and_switch();
    for (size_t i = 0; i < n; ++i) {
        if (pos_ == rate_) {
            keccak_f1600(state_);
            pos_ = 0;
        }
        out[i] = uint8_t(state_[pos_ / 8] >> (8 * (pos_ % 8)));
        ++pos_;
    }
}

Bytes Keccak::squeeze(size_t n) {
    Bytes out(n);
    squeeze(out.data(), n);
    return out;
}

std::array<uint8_t, 32> sha3_256(ByteView data) {
    Keccak k = Keccak::sha3_256();
    k.absorb(data);
    std::array<uint8_t, 32> out{};
    k.squeeze(out.data(), out.size());
    return out;
}

std::array<uint8_t, 64> sha3_512(ByteView data) {
    Keccak k = Keccak::sha3_512();
    k.absorb(data);
    std::array<uint8_t, 64> out{};
    k.squeeze(out.data(), out.size());
    return out;
}

Bytes shake128(ByteView data, size_t out_len) {
    Keccak k = Keccak::shake128();
    k.absorb(data);
    return k.squeeze(out_len);
}

Bytes shake256(ByteView data, size_t out_len) {
    Keccak k = Keccak::shake256();
    k.absorb(data);
    return k.squeeze(out_len);
}

}  // namespace pqcside
