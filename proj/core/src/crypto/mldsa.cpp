#include "pqcside/crypto/mldsa.hpp"

#include <array>
#include <cstring>
#include <vector>

#include "pqcside/crypto/rand.hpp"
#include "pqcside/error.hpp"
#include "pqcside/keccak.hpp"

namespace pqcside::mldsa {

namespace {

constexpr int kN = 256;
constexpr int32_t kQ = 8380417;
constexpr int kD = 13;

struct Params {
    int k, l;
    int32_t eta;
    int32_t tau;
    int32_t beta;
    int32_t gamma1;
    int32_t gamma2;
    int32_t omega;
    int lambda_bytes;  // lambda / 4
    int gamma1_bits;   // 1 + bitlen(gamma1 - 1)
    int eta_bits;      // bitlen(2 * eta)
};

const Params& params(Level level) {
    static const Params p44{4, 4, 2, 39, 78, 1 << 17, (kQ - 1) / 88, 80, 32, 18, 3};
    static const Params p65{6, 5, 4, 49, 196, 1 << 19, (kQ - 1) / 32, 55, 48, 20, 4};
    static const Params p87{8, 7, 2, 60, 120, 1 << 19, (kQ - 1) / 32, 75, 64, 20, 3};
    switch (level) {
        case Level::l44: return p44;
        case Level::l65: return p65;
        default: return p87;
    }
}

using Poly = std::array<int32_t, kN>;
using PolyVec = std::vector<Poly>;

int32_t mod_q(int64_t x) {
    int32_t r = int32_t(x % kQ);
    return r < 0 ? r + kQ : r;
}

// Centered representative in (-q/2, q/2].
int32_t centered(int32_t x) {
    return x > (kQ - 1) / 2 ? x - kQ : x;
}

int bitrev8(int i) {
    int r = 0;
    for (int b = 0; b < 8; ++b) {
        if (i & (1 << b)) r |= 1 << (7 - b);
    }
    return r;
}

const std::array<int32_t, 256>& zetas() {
    static const std::array<int32_t, 256> table = [] {
        std::array<int32_t, 256> t{};
        auto powz = [](int e) {
            int64_t r = 1, b = 1753;
            while (e) {
                if (e & 1) r = r * b % kQ;
                b = b * b % kQ;
                e >>= 1;
            }
            return int32_t(r);
        };
        for (int i = 0; i < 256; ++i) t[i] = powz(bitrev8(i));
        return t;
    }();
    return table;
}

void ntt(Poly& a) {
    const auto& z = zetas();
    int k = 0;
    for (int len = 128; len > 0; len >>= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            int32_t zeta = z[++k];
            for (int j = start; j < start + len; ++j) {
                int32_t t = mod_q(int64_t(zeta) * a[j + len]);
                a[j + len] = mod_q(int64_t(a[j]) - t);
                a[j] = mod_q(int64_t(a[j]) + t);
            }
        }
    }
}

void inv_ntt(Poly& a) {
    const auto& z = zetas();
    int k = 256;
    for (int len = 1; len < kN; len <<= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            int32_t zeta = z[--k];
            for (int j = start; j < start + len; ++j) {
                int32_t t = a[j];
                a[j] = mod_q(int64_t(t) + a[j + len]);
                a[j + len] = mod_q(int64_t(zeta) * mod_q(int64_t(a[j + len]) - t));
            }
        }
    }
    constexpr int64_t kInv256 = 8347681;  // 256^-1 mod q
    for (auto& c : a) c = mod_q(kInv256 * c);
}

Poly poly_mul_ntt(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < kN; ++i) r[i] = mod_q(int64_t(a[i]) * b[i]);
    return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < kN; ++i) r[i] = mod_q(int64_t(a[i]) + b[i]);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < kN; ++i) r[i] = mod_q(int64_t(a[i]) - b[i]);
    return r;
}

int32_t inf_norm(const Poly& a) {
    int32_t m = 0;
    for (int32_t c : a) {
        int32_t v = centered(c);
        if (v < 0) v = -v;
        if (v > m) m = v;
    }
    return m;
}

int32_t inf_norm(const PolyVec& v) {
    int32_t m = 0;
    for (const auto& p : v) m = std::max(m, inf_norm(p));
    return m;
}

// --- rounding -------------------------------------------------------------

void power2round(int32_t r, int32_t& r1, int32_t& r0) {
    int32_t rp = mod_q(r);
    int32_t m = rp & ((1 << kD) - 1);
    if (m > (1 << (kD - 1))) m -= 1 << kD;
    r0 = m;
    r1 = (rp - m) >> kD;
}

void decompose(const Params& p, int32_t r, int32_t& r1, int32_t& r0) {
    int32_t rp = mod_q(r);
    int32_t m = rp % (2 * p.gamma2);
    if (m > p.gamma2) m -= 2 * p.gamma2;
    if (rp - m == kQ - 1) {
        r1 = 0;
        r0 = m - 1;
    } else {
        r1 = (rp - m) / (2 * p.gamma2);
        r0 = m;
    }
}

int32_t high_bits(const Params& p, int32_t r) {
    int32_t r1, r0;
    decompose(p, r, r1, r0);
    return r1;
}

bool make_hint(const Params& p, int32_t z, int32_t r) {
    return high_bits(p, r) != high_bits(p, mod_q(int64_t(r) + z));
}

int32_t use_hint(const Params& p, bool hint, int32_t r) {
    int32_t m = (kQ - 1) / (2 * p.gamma2);
    int32_t r1, r0;
    decompose(p, r, r1, r0);
    if (!hint) return r1;
    if (r0 > 0) return (r1 + 1) % m;
    return (r1 - 1 + m) % m;
}

// --- sampling ---------------------------------------------------------------

Poly rej_ntt_poly(ByteView seed, uint8_t s, uint8_t r) {
    Keccak xof = Keccak::shake128();
    xof.absorb(seed);
    xof.absorb(std::array<uint8_t, 2>{s, r});
    Poly f{};
    int n = 0;
    uint8_t b[3];
    while (n < kN) {
        xof.squeeze(b, 3);
        int32_t z = b[0] | b[1] << 8 | (b[2] & 0x7f) << 16;
        if (z < kQ) f[n++] = z;
    }
    return f;
}

std::vector<PolyVec> expand_a(const Params& p, ByteView rho) {
    std::vector<PolyVec> a(p.k, PolyVec(p.l));
    for (int r = 0; r < p.k; ++r) {
        for (int s = 0; s < p.l; ++s) a[r][s] = rej_ntt_poly(rho, uint8_t(s), uint8_t(r));
    }
    return a;
}

Poly rej_bounded_poly(const Params& p, ByteView seed, uint16_t nonce) {
    Keccak xof = Keccak::shake256();
    xof.absorb(seed);
    xof.absorb(std::array<uint8_t, 2>{uint8_t(nonce), uint8_t(nonce >> 8)});
    Poly f{};
    int n = 0;
    auto coeff = [&](int32_t z, bool& ok) -> int32_t {
        if (p.eta == 2) {
            if (z < 15) {
                ok = true;
                return 2 - z % 5;
            }
        } else {
            if (z < 9) {
                ok = true;
                return 4 - z;
            }
        }
        ok = false;
        return 0;
    };
    uint8_t b;
    while (n < kN) {
        xof.squeeze(&b, 1);
        bool ok;
        int32_t c = coeff(b & 0xf, ok);
        if (ok) f[n++] = mod_q(c);
        if (n == kN) break;
        c = coeff(b >> 4, ok);
        if (ok) f[n++] = mod_q(c);
    }
    return f;
}

// --- bit packing -------------------------------------------------------------

void pack_bits(Bytes& out, const Poly& f, int bits, int32_t offset) {
    // stores offset - centered(f[i]) when offset > 0, else raw values
    uint64_t acc = 0;
    int fill = 0;
    for (int i = 0; i < kN; ++i) {
        uint32_t v = offset ? uint32_t(offset - centered(f[i])) : uint32_t(f[i]);
        acc |= uint64_t(v) << fill;
        fill += bits;
        while (fill >= 8) {
            out.push_back(uint8_t(acc));
            acc >>= 8;
            fill -= 8;
        }
    }
}

Poly unpack_bits(const uint8_t* in, int bits, int32_t offset) {
    Poly f{};
    uint64_t acc = 0;
    int fill = 0;
    size_t pos = 0;
    for (int i = 0; i < kN; ++i) {
        while (fill < bits) {
            acc |= uint64_t(in[pos++]) << fill;
            fill += 8;
        }
        uint32_t v = uint32_t(acc & ((uint64_t(1) << bits) - 1));
        acc >>= bits;
        fill -= bits;
        f[i] = offset ? mod_q(int64_t(offset) - int64_t(v)) : int32_t(v);
    }
    return f;
}

// --- hashing helpers ---------------------------------------------------------

Bytes shake256_cat(std::initializer_list<ByteView> parts, size_t out_len) {
    Keccak h = Keccak::shake256();
    for (ByteView part : parts) h.absorb(part);
    return h.squeeze(out_len);
}

Poly sample_in_ball(const Params& p, ByteView c_tilde) {
    Keccak h = Keccak::shake256();
    h.absorb(c_tilde);
    uint8_t signs[8];
    h.squeeze(signs, 8);
    Poly c{};
    int bit = 0;
    for (int i = kN - p.tau; i < kN; ++i) {
        uint8_t j;
        do {
            h.squeeze(&j, 1);
        } while (j > i);
        c[i] = c[j];
        bool neg = (signs[bit / 8] >> (bit % 8)) & 1;
        ++bit;
        c[j] = mod_q(neg ? -1 : 1);
    }
    return c;
}

// --- hint packing -------------------------------------------------------------

Bytes hint_pack(const Params& p, const std::vector<std::array<bool, kN>>& h) {
    Bytes out(size_t(p.omega) + p.k, 0);
    int idx = 0;
    for (int i = 0; i < p.k; ++i) {
        for (int j = 0; j < kN; ++j) {
            if (h[i][j]) out[idx++] = uint8_t(j);
        }
        out[p.omega + i] = uint8_t(idx);
    }
    return out;
}

bool hint_unpack(const Params& p, ByteView in, std::vector<std::array<bool, kN>>& h) {
    h.assign(p.k, {});
    int idx = 0;
    for (int i = 0; i < p.k; ++i) {
        int end = in[p.omega + i];
        if (end < idx || end > p.omega) return false;
        for (int j = idx; j < end; ++j) {
            if (j > idx && in[j] <= in[j - 1]) return false;  // strictly increasing
            h[i][in[j]] = true;
        }
        idx = end;
    }
    for (int j = idx; j < p.omega; ++j) {
        if (in[j] != 0) return false;
    }
    return true;
}

int hint_weight(const std::vector<std::array<bool, kN>>& h) {
    int w = 0;
    for (const auto& poly : h) {
        for (bool b : poly) w += b;
    }
    return w;
}

// --- key / signature layout ----------------------------------------------------

size_t pk_len(const Params& p) { return 32 + size_t(p.k) * 320; }
size_t sk_len(const Params& p) {
    return 128 + size_t(p.l + p.k) * 32 * p.eta_bits + size_t(p.k) * 32 * kD;
}
size_t sig_len(const Params& p) {
    return size_t(p.lambda_bytes) + size_t(p.l) * 32 * p.gamma1_bits + p.omega + p.k;
}

// Message representative for the pure variant with empty context string.
Bytes format_message(ByteView message) {
    Bytes m;
    m.reserve(message.size() + 2);
    m.push_back(0);
    m.push_back(0);
    m.insert(m.end(), message.begin(), message.end());
    return m;
}

struct SecretKeyView {
    ByteView rho, key, tr;
    PolyVec s1, s2, t0;
};

SecretKeyView sk_decode(const Params& p, ByteView sk) {
    SecretKeyView v;
    v.rho = sk.subspan(0, 32);
    v.key = sk.subspan(32, 32);
    v.tr = sk.subspan(64, 64);
    size_t pos = 128;
    size_t eta_bytes = size_t(32) * p.eta_bits;
    v.s1.resize(p.l);
    for (auto& poly : v.s1) {
        poly = unpack_bits(sk.data() + pos, p.eta_bits, p.eta);
        pos += eta_bytes;
    }
    v.s2.resize(p.k);
    for (auto& poly : v.s2) {
        poly = unpack_bits(sk.data() + pos, p.eta_bits, p.eta);
        pos += eta_bytes;
    }
    v.t0.resize(p.k);
    for (auto& poly : v.t0) {
        poly = unpack_bits(sk.data() + pos, kD, 1 << (kD - 1));
        pos += size_t(32) * kD;
    }
    return v;
}

}  // namespace

Sizes sizes(Level level) {
    const Params& p = params(level);
    return {pk_len(p), sk_len(p), sig_len(p)};
}

KeyPair keygen_derand(Level level, ByteView xi) {
    if (xi.size() != 32) throw Error(Errc::malformed_input, "keygen seed must be 32 bytes");
    const Params& p = params(level);

    std::array<uint8_t, 2> kl{uint8_t(p.k), uint8_t(p.l)};
    Bytes expanded = shake256_cat({xi, ByteView(kl)}, 128);
    ByteView rho(expanded.data(), 32);
    ByteView rho_prime(expanded.data() + 32, 64);
    ByteView key(expanded.data() + 96, 32);

    auto a_hat = expand_a(p, rho);
    PolyVec s1(p.l), s2(p.k);
    for (int r = 0; r < p.l; ++r) s1[r] = rej_bounded_poly(p, rho_prime, uint16_t(r));
    for (int r = 0; r < p.k; ++r) s2[r] = rej_bounded_poly(p, rho_prime, uint16_t(p.l + r));

    PolyVec s1_hat = s1;
    for (auto& poly : s1_hat) ntt(poly);

    PolyVec t(p.k);
    for (int i = 0; i < p.k; ++i) {
        Poly acc{};
        for (int j = 0; j < p.l; ++j) acc = poly_add(acc, poly_mul_ntt(a_hat[i][j], s1_hat[j]));
        inv_ntt(acc);
        t[i] = poly_add(acc, s2[i]);
    }

    PolyVec t1(p.k), t0(p.k);
    for (int i = 0; i < p.k; ++i) {
        for (int j = 0; j < kN; ++j) power2round(t[i][j], t1[i][j], t0[i][j]);
    }

    KeyPair kp;
    kp.pk.assign(rho.begin(), rho.end());
    for (const auto& poly : t1) pack_bits(kp.pk, poly, 10, 0);

    Bytes tr = shake256_cat({ByteView(kp.pk)}, 64);
    kp.sk.assign(rho.begin(), rho.end());
    kp.sk.insert(kp.sk.end(), key.begin(), key.end());
    kp.sk.insert(kp.sk.end(), tr.begin(), tr.end());
    for (const auto& poly : s1) pack_bits(kp.sk, poly, p.eta_bits, p.eta);
    for (const auto& poly : s2) pack_bits(kp.sk, poly, p.eta_bits, p.eta);
    for (const auto& poly : t0) {
        Poly canon;
        for (int j = 0; j < kN; ++j) canon[j] = mod_q(poly[j]);
        pack_bits(kp.sk, canon, kD, 1 << (kD - 1));
    }
    return kp;
}

KeyPair keygen(Level level) {
    return keygen_derand(level, random_bytes(32));
}

Bytes sign(Level level, ByteView sk, ByteView message) {
    const Params& p = params(level);
    if (sk.size() != sk_len(p)) throw Error(Errc::malformed_key, "bad signing key length");

    SecretKeyView skv = sk_decode(p, sk);
    auto a_hat = expand_a(p, skv.rho);
    PolyVec s1_hat = skv.s1, s2_hat = skv.s2, t0_hat = skv.t0;
    for (auto& poly : s1_hat) ntt(poly);
    for (auto& poly : s2_hat) ntt(poly);
    for (auto& poly : t0_hat) ntt(poly);

    Bytes mp = format_message(message);
    Bytes mu = shake256_cat({skv.tr, ByteView(mp)}, 64);

    // Deterministic variant: hedging randomness fixed to zero.
    Bytes rnd(32, 0);
    Bytes rho2 = shake256_cat({skv.key, ByteView(rnd), ByteView(mu)}, 64);

    for (uint16_t kappa = 0;; kappa = uint16_t(kappa + p.l)) {
        PolyVec y(p.l);
        for (int r = 0; r < p.l; ++r) {
            uint16_t nonce = uint16_t(kappa + r);
            std::array<uint8_t, 2> nb{uint8_t(nonce), uint8_t(nonce >> 8)};
            Bytes v = shake256_cat({ByteView(rho2), ByteView(nb)}, size_t(32) * p.gamma1_bits);
            y[r] = unpack_bits(v.data(), p.gamma1_bits, p.gamma1);
        }

        PolyVec y_hat = y;
        for (auto& poly : y_hat) ntt(poly);
        PolyVec w(p.k);
        for (int i = 0; i < p.k; ++i) {
            Poly acc{};
            for (int j = 0; j < p.l; ++j) acc = poly_add(acc, poly_mul_ntt(a_hat[i][j], y_hat[j]));
            inv_ntt(acc);
            w[i] = acc;
        }

        Bytes w1_enc;
        int w1_bits = p.gamma2 == (kQ - 1) / 88 ? 6 : 4;
        for (int i = 0; i < p.k; ++i) {
            Poly w1;
            for (int j = 0; j < kN; ++j) w1[j] = high_bits(p, w[i][j]);
            pack_bits(w1_enc, w1, w1_bits, 0);
        }
        Bytes c_tilde = shake256_cat({ByteView(mu), ByteView(w1_enc)}, size_t(p.lambda_bytes));

        Poly c = sample_in_ball(p, c_tilde);
        Poly c_hat = c;
        ntt(c_hat);

        PolyVec z(p.l);
        for (int j = 0; j < p.l; ++j) {
            Poly cs1 = poly_mul_ntt(c_hat, s1_hat[j]);
            inv_ntt(cs1);
            z[j] = poly_add(y[j], cs1);
        }
        if (inf_norm(z) >= p.gamma1 - p.beta) continue;

        PolyVec w_minus_cs2(p.k);
        bool r0_ok = true;
        for (int i = 0; i < p.k; ++i) {
            Poly cs2 = poly_mul_ntt(c_hat, s2_hat[i]);
            inv_ntt(cs2);
            w_minus_cs2[i] = poly_sub(w[i], cs2);
            for (int j = 0; j < kN; ++j) {
                int32_t r1, r0;
                decompose(p, w_minus_cs2[i][j], r1, r0);
                if (std::abs(r0) >= p.gamma2 - p.beta) {
                    r0_ok = false;
                    break;
                }
            }
            if (!r0_ok) break;
        }
        if (!r0_ok) continue;

        std::vector<std::array<bool, kN>> hints(p.k);
        bool ct0_ok = true;
        int weight = 0;
        for (int i = 0; i < p.k; ++i) {
            Poly ct0 = poly_mul_ntt(c_hat, t0_hat[i]);
            inv_ntt(ct0);
            if (inf_norm(ct0) >= p.gamma2) {
                ct0_ok = false;
                break;
            }
            for (int j = 0; j < kN; ++j) {
                int32_t neg_ct0 = mod_q(-int64_t(ct0[j]));
                int32_t r = mod_q(int64_t(w_minus_cs2[i][j]) + ct0[j]);
                hints[i][j] = make_hint(p, neg_ct0, r);
                weight += hints[i][j];
            }
        }
        if (!ct0_ok || weight > p.omega) continue;

        Bytes sig = c_tilde;
        for (const auto& poly : z) pack_bits(sig, poly, p.gamma1_bits, p.gamma1);
        Bytes hint_bytes = hint_pack(p, hints);
        sig.insert(sig.end(), hint_bytes.begin(), hint_bytes.end());
        return sig;
    }
}

bool verify(Level level, ByteView pk, ByteView message, ByteView signature) {
    const Params& p = params(level);
    if (pk.size() != pk_len(p) || signature.size() != sig_len(p)) return false;

    ByteView rho = pk.subspan(0, 32);
    PolyVec t1(p.k);
    for (int i = 0; i < p.k; ++i) t1[i] = unpack_bits(pk.data() + 32 + i * 320, 10, 0);

    ByteView c_tilde = signature.subspan(0, p.lambda_bytes);
    size_t z_bytes = size_t(32) * p.gamma1_bits;
    PolyVec z(p.l);
    for (int j = 0; j < p.l; ++j) {
        z[j] = unpack_bits(signature.data() + p.lambda_bytes + j * z_bytes, p.gamma1_bits, p.gamma1);
    }
    std::vector<std::array<bool, kN>> hints;
    if (!hint_unpack(p, signature.subspan(p.lambda_bytes + p.l * z_bytes), hints)) return false;
    if (inf_norm(z) >= p.gamma1 - p.beta) return false;

    auto a_hat = expand_a(p, rho);
    Bytes tr = shake256_cat({pk}, 64);
    Bytes mp = format_message(message);
    Bytes mu = shake256_cat({ByteView(tr), ByteView(mp)}, 64);

    Poly c = sample_in_ball(p, c_tilde);
    Poly c_hat = c;
    ntt(c_hat);
    PolyVec z_hat = z;
    for (auto& poly : z_hat) ntt(poly);

    int w1_bits = p.gamma2 == (kQ - 1) / 88 ? 6 : 4;
    Bytes w1_enc;
    for (int i = 0; i < p.k; ++i) {
        // A*z - c * t1 * 2^d
        Poly az{};
        for (int j = 0; j < p.l; ++j) az = poly_add(az, poly_mul_ntt(a_hat[i][j], z_hat[j]));
        Poly t1_shifted;
        for (int j = 0; j < kN; ++j) t1_shifted[j] = mod_q(int64_t(t1[i][j]) << kD);
        ntt(t1_shifted);
        Poly acc = poly_sub(az, poly_mul_ntt(c_hat, t1_shifted));
        inv_ntt(acc);
        Poly w1;
        for (int j = 0; j < kN; ++j) w1[j] = use_hint(p, hints[i][j], acc[j]);
        pack_bits(w1_enc, w1, w1_bits, 0);
    }
    Bytes expected = shake256_cat({ByteView(mu), ByteView(w1_enc)}, size_t(p.lambda_bytes));
    return ct_equal(expected, c_tilde);
}

}  // namespace pqcside::mldsa
