#include "pqcside/crypto/mlkem.hpp"

#include <array>
#include <cstring>

#include "pqcside/crypto/rand.hpp"
#include "pqcside/error.hpp"
#include "pqcside/keccak.hpp"

namespace pqcside::mlkem768 {

namespace {

constexpr int kN = 256;
constexpr int kQ = 3329;
constexpr int kK = 3;
constexpr int kEta1 = 2;
constexpr int kEta2 = 2;
constexpr int kDu = 10;
constexpr int kDv = 4;
constexpr int kPolyEnc12 = 384;                 // 256 coefficients at 12 bits
constexpr int kPkeDkLen = kK * kPolyEnc12;      // 1152
constexpr uint16_t kInv128 = 3303;              // 128^-1 mod q

using Poly = std::array<uint16_t, kN>;
using PolyVec = std::array<Poly, kK>;

uint16_t reduce(uint32_t x) { return uint16_t(x % kQ); }

int bitrev7(int i) {
    int r = 0;
    for (int b = 0; b < 7; ++b) {
        if (i & (1 << b)) r |= 1 << (6 - b);
    }
    return r;
}

struct ZetaTables {
    std::array<uint16_t, 128> ntt{};    // 17^bitrev7(i)
    std::array<uint16_t, 128> gamma{};  // 17^(2*bitrev7(i)+1), for base-case products

    ZetaTables() {
        auto pow17 = [](int e) {
            uint32_t r = 1, b = 17;
            while (e) {
                if (e & 1) r = r * b % kQ;
                b = b * b % kQ;
                e >>= 1;
            }
            return uint16_t(r);
        };
        for (int i = 0; i < 128; ++i) {
            ntt[i] = pow17(bitrev7(i));
            gamma[i] = pow17(2 * bitrev7(i) + 1);
        }
    }
};

const ZetaTables& zetas() {
    static ZetaTables t;
    return t;
}

void ntt(Poly& f) {
    const auto& z = zetas().ntt;
    int i = 1;
    for (int len = 128; len >= 2; len >>= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            uint32_t zeta = z[i++];
            for (int j = start; j < start + len; ++j) {
                uint16_t t = reduce(zeta * f[j + len]);
                f[j + len] = uint16_t((f[j] + kQ - t) % kQ);
                f[j] = uint16_t((f[j] + t) % kQ);
            }
        }
    }
}

void inv_ntt(Poly& f) {
    const auto& z = zetas().ntt;
    int i = 127;
    for (int len = 2; len <= 128; len <<= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            uint32_t zeta = z[i--];
            for (int j = start; j < start + len; ++j) {
                uint16_t t = f[j];
                f[j] = uint16_t((t + f[j + len]) % kQ);
                f[j + len] = reduce(zeta * ((f[j + len] + kQ - t) % kQ));
            }
        }
    }
    for (auto& c : f) c = reduce(uint32_t(c) * kInv128);
}

// Pairwise product in the NTT domain (128 degree-one factor rings).
Poly ntt_multiply(const Poly& a, const Poly& b) {
    const auto& g = zetas().gamma;
    Poly h{};
    for (int i = 0; i < 128; ++i) {
        uint32_t a0 = a[2 * i], a1 = a[2 * i + 1];
        uint32_t b0 = b[2 * i], b1 = b[2 * i + 1];
        h[2 * i] = reduce(a0 * b0 + reduce(a1 * b1) * g[i]);
        h[2 * i + 1] = reduce(a0 * b1 + a1 * b0);
    }
    return h;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < kN; ++i) r[i] = uint16_t((a[i] + b[i]) % kQ);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < kN; ++i) r[i] = uint16_t((a[i] + kQ - b[i]) % kQ);
    return r;
}

// Uniform NTT-domain sampling by 12-bit rejection from a SHAKE128 stream.
Poly sample_ntt(ByteView seed, uint8_t j, uint8_t i) {
    Keccak xof = Keccak::shake128();
    xof.absorb(seed);
    std::array<uint8_t, 2> idx{j, i};
    xof.absorb(idx);
    Poly f{};
    int n = 0;
    uint8_t buf[3];
    while (n < kN) {
        xof.squeeze(buf, 3);
        uint16_t d1 = uint16_t(buf[0] | (buf[1] & 0x0f) << 8);
        uint16_t d2 = uint16_t(buf[1] >> 4 | buf[2] << 4);
        if (d1 < kQ) f[n++] = d1;
        if (d2 < kQ && n < kN) f[n++] = d2;
    }
    return f;
}

// Centered binomial sample from PRF output (eta = 2 here for both roles).
Poly sample_cbd(int eta, ByteView prf_out) {
    Poly f{};
    size_t bit = 0;
    auto next_bit = [&] {
        uint8_t b = (prf_out[bit / 8] >> (bit % 8)) & 1;
        ++bit;
        return b;
    };
    for (int i = 0; i < kN; ++i) {
        int x = 0, y = 0;
        for (int t = 0; t < eta; ++t) x += next_bit();
        for (int t = 0; t < eta; ++t) y += next_bit();
        f[i] = uint16_t((x - y + kQ) % kQ);
    }
    return f;
}

Bytes prf(int eta, ByteView s, uint8_t n) {
    Keccak k = Keccak::shake256();
    k.absorb(s);
    k.absorb(std::array<uint8_t, 1>{n});
    return k.squeeze(size_t(64) * eta);
}

uint16_t compress(uint32_t x, int d) {
    // round(2^d * x / q) mod 2^d, ties up
    return uint16_t(((uint64_t(x) << (d + 1)) + kQ) / (2 * kQ) & ((1u << d) - 1));
}

uint16_t decompress(uint32_t y, int d) {
    return uint16_t((uint32_t(kQ) * y + (1u << (d - 1))) >> d);
}

// Little-endian bit packing of 256 d-bit values.
void byte_encode(const Poly& f, int d, Bytes& out) {
    uint32_t acc = 0;
    int bits = 0;
    for (int i = 0; i < kN; ++i) {
        acc |= uint32_t(f[i]) << bits;
        bits += d;
        while (bits >= 8) {
            out.push_back(uint8_t(acc));
            acc >>= 8;
            bits -= 8;
        }
    }
}

Poly byte_decode(const uint8_t* in, int d) {
    Poly f{};
    uint32_t acc = 0;
    int bits = 0;
    size_t pos = 0;
    for (int i = 0; i < kN; ++i) {
        while (bits < d) {
            acc |= uint32_t(in[pos++]) << bits;
            bits += 8;
        }
        f[i] = uint16_t(acc & ((1u << d) - 1));
        acc >>= d;
        bits -= d;
    }
    return f;
}

struct PkeKeys {
    Bytes ek;
    Bytes dk;
};

void expand_matrix(ByteView rho, std::array<PolyVec, kK>& a_hat) {
    for (int i = 0; i < kK; ++i) {
        for (int j = 0; j < kK; ++j) {
            a_hat[i][j] = sample_ntt(rho, uint8_t(j), uint8_t(i));
        }
    }
}

PkeKeys pke_keygen(ByteView d) {
    Bytes g_in(d.begin(), d.end());
    g_in.push_back(uint8_t(kK));
    auto g = sha3_512(g_in);
    ByteView rho(g.data(), 32), sigma(g.data() + 32, 32);

    std::array<PolyVec, kK> a_hat;
    expand_matrix(rho, a_hat);

    PolyVec s, e;
    uint8_t n = 0;
    for (int i = 0; i < kK; ++i) s[i] = sample_cbd(kEta1, prf(kEta1, sigma, n++));
    for (int i = 0; i < kK; ++i) e[i] = sample_cbd(kEta1, prf(kEta1, sigma, n++));
    for (auto& p : s) ntt(p);
    for (auto& p : e) ntt(p);

    PolyVec t_hat;
    for (int i = 0; i < kK; ++i) {
        Poly acc{};
        for (int j = 0; j < kK; ++j) acc = poly_add(acc, ntt_multiply(a_hat[i][j], s[j]));
        t_hat[i] = poly_add(acc, e[i]);
    }

    PkeKeys keys;
    keys.ek.reserve(kEkLen);
    for (const auto& p : t_hat) byte_encode(p, 12, keys.ek);
    keys.ek.insert(keys.ek.end(), rho.begin(), rho.end());
    keys.dk.reserve(kPkeDkLen);
    for (const auto& p : s) byte_encode(p, 12, keys.dk);
    return keys;
}

Bytes pke_encrypt(ByteView ek, ByteView m, ByteView r) {
    PolyVec t_hat;
    for (int i = 0; i < kK; ++i) t_hat[i] = byte_decode(ek.data() + i * kPolyEnc12, 12);
    ByteView rho = ek.subspan(kPkeDkLen, 32);

    std::array<PolyVec, kK> a_hat;
    expand_matrix(rho, a_hat);

    PolyVec y, e1;
    uint8_t n = 0;
    for (int i = 0; i < kK; ++i) y[i] = sample_cbd(kEta1, prf(kEta1, r, n++));
    for (int i = 0; i < kK; ++i) e1[i] = sample_cbd(kEta2, prf(kEta2, r, n++));
    Poly e2 = sample_cbd(kEta2, prf(kEta2, r, n++));
    for (auto& p : y) ntt(p);

    // u = invNTT(A^T * y) + e1
    PolyVec u;
    for (int i = 0; i < kK; ++i) {
        Poly acc{};
        for (int j = 0; j < kK; ++j) acc = poly_add(acc, ntt_multiply(a_hat[j][i], y[j]));
        inv_ntt(acc);
        u[i] = poly_add(acc, e1[i]);
    }

    Poly mu = byte_decode(m.data(), 1);
    for (auto& c : mu) c = decompress(c, 1);

    Poly v{};
    for (int j = 0; j < kK; ++j) v = poly_add(v, ntt_multiply(t_hat[j], y[j]));
    inv_ntt(v);
    v = poly_add(poly_add(v, e2), mu);

    Bytes ct;
    ct.reserve(kCtLen);
    for (auto& p : u) {
        Poly cu;
        for (int i = 0; i < kN; ++i) cu[i] = compress(p[i], kDu);
        byte_encode(cu, kDu, ct);
    }
    Poly cv;
    for (int i = 0; i < kN; ++i) cv[i] = compress(v[i], kDv);
    byte_encode(cv, kDv, ct);
    return ct;
}

Bytes pke_decrypt(ByteView dk, ByteView ct) {
    constexpr int kUBytes = 32 * kDu;  // 320 per polynomial
    PolyVec u;
    for (int i = 0; i < kK; ++i) {
        u[i] = byte_decode(ct.data() + i * kUBytes, kDu);
        for (auto& c : u[i]) c = decompress(c, kDu);
    }
    Poly v = byte_decode(ct.data() + kK * kUBytes, kDv);
    for (auto& c : v) c = decompress(c, kDv);

    PolyVec s_hat;
    for (int i = 0; i < kK; ++i) s_hat[i] = byte_decode(dk.data() + i * kPolyEnc12, 12);

    Poly acc{};
    for (int j = 0; j < kK; ++j) {
        Poly uj = u[j];
        ntt(uj);
        acc = poly_add(acc, ntt_multiply(s_hat[j], uj));
    }
    inv_ntt(acc);
    Poly w = poly_sub(v, acc);

    Poly mp;
    for (int i = 0; i < kN; ++i) mp[i] = compress(w[i], 1);
    Bytes m;
    byte_encode(mp, 1, m);
    return m;
}

Bytes hash_h(ByteView data) {
    auto h = sha3_256(data);
    return Bytes(h.begin(), h.end());
}

bool ek_is_canonical(ByteView ek) {
    // Twelve-bit decoding is modular, so re-encoding reproduces the input
    // exactly when every stored coefficient is already reduced.
    for (int i = 0; i < kK; ++i) {
        Poly f = byte_decode(ek.data() + i * kPolyEnc12, 12);
        for (uint16_t c : f) {
            if (c >= kQ) return false;
        }
    }
    return true;
}

}  // namespace

KeyPair keygen_derand(ByteView seed) {
    if (seed.size() != 64) throw Error(Errc::malformed_input, "keygen seed must be 64 bytes");
    ByteView d = seed.subspan(0, 32), z = seed.subspan(32, 32);
    PkeKeys pke = pke_keygen(d);
    KeyPair kp;
    kp.ek = pke.ek;
    kp.dk = std::move(pke.dk);
    kp.dk.insert(kp.dk.end(), kp.ek.begin(), kp.ek.end());
    Bytes h = hash_h(kp.ek);
    kp.dk.insert(kp.dk.end(), h.begin(), h.end());
    kp.dk.insert(kp.dk.end(), z.begin(), z.end());
    return kp;
}

KeyPair keygen() {
    return keygen_derand(random_bytes(64));
}

Encapsulation encaps_derand(ByteView ek, ByteView m32) {
    if (ek.size() != kEkLen) throw Error(Errc::malformed_key, "bad encapsulation key length");
    if (!ek_is_canonical(ek)) throw Error(Errc::malformed_key, "non-canonical encapsulation key");
    if (m32.size() != 32) throw Error(Errc::malformed_input, "encaps seed must be 32 bytes");

    Bytes g_in(m32.begin(), m32.end());
    Bytes h = hash_h(ek);
    g_in.insert(g_in.end(), h.begin(), h.end());
    auto g = sha3_512(g_in);

    Encapsulation out;
    out.shared_secret.assign(g.begin(), g.begin() + 32);
    out.ciphertext = pke_encrypt(ek, m32, ByteView(g.data() + 32, 32));
    return out;
}

Encapsulation encaps(ByteView ek) {
    return encaps_derand(ek, random_bytes(32));
}

Bytes decaps(ByteView dk, ByteView ct) {
    if (dk.size() != kDkLen) throw Error(Errc::malformed_input, "bad decapsulation key length");
    if (ct.size() != kCtLen) throw Error(Errc::malformed_input, "bad ciphertext length");

    ByteView dk_pke = dk.subspan(0, kPkeDkLen);
    ByteView ek = dk.subspan(kPkeDkLen, kEkLen);
    ByteView h = dk.subspan(kPkeDkLen + kEkLen, 32);
    ByteView z = dk.subspan(kPkeDkLen + kEkLen + 32, 32);
    if (!ct_equal(hash_h(ek), h)) throw Error(Errc::malformed_input, "decapsulation key hash mismatch");

    Bytes m = pke_decrypt(dk_pke, ct);
    Bytes g_in = m;
    g_in.insert(g_in.end(), h.begin(), h.end());
    auto g = sha3_512(g_in);

    // Implicit rejection: on re-encryption mismatch return SHAKE256(z || ct).
    Keccak j = Keccak::shake256();
    j.absorb(z);
    j.absorb(ct);
    Bytes k_bar = j.squeeze(32);

    Bytes ct2 = pke_encrypt(ek, m, ByteView(g.data() + 32, 32));
    if (!ct_equal(ct, ct2)) return k_bar;
    return Bytes(g.begin(), g.begin() + 32);
}

}  // namespace pqcside::mlkem768
