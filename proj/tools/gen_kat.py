#!/usr/bin/env python3
"""Generates tests/kat_vectors.hpp from independent reference implementations.

Reference sources:
  - ML-KEM-768 / ML-DSA-44/65/87: pyca/cryptography (OpenSSL 3.5 backend)
  - SHA3/SHAKE: hashlib
  - HKDF-SHA256: hmac/hashlib (manual extract-and-expand)
  - AES-256-GCM: pyca/cryptography AESGCM
  - Student-t quantiles: scipy.stats
Run once; the generated header is committed so the C++ test suite stays
hermetic.
"""

import hashlib
import hmac as hmac_mod

from cryptography.hazmat.primitives.asymmetric import mlkem, mldsa, ed25519, x25519
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives import serialization
from scipy import stats as sps

out = []
out.append("// Generated by tools/gen_kat.py -- frozen reference vectors. Do not edit.")
out.append("#pragma once")
out.append("#include <string_view>")
out.append("")
out.append("namespace kat {")


def emit(name, value):
    if isinstance(value, (bytes, bytearray)):
        out.append(f'inline constexpr std::string_view {name} = "{bytes(value).hex()}";')
    else:
        out.append(f"inline constexpr double {name} = {value!r};")


# ---- ML-KEM-768 ----------------------------------------------------------
for i in range(2):
    k = mlkem.MLKEM768PrivateKey.generate()
    seed = k.private_bytes_raw()  # d || z, 64 bytes
    ek = k.public_key().public_bytes_raw()
    ss, ct = k.public_key().encapsulate()
    bad = bytearray(ct)
    bad[100 + 13 * i] ^= 0x20
    ss_rej = k.decapsulate(bytes(bad))
    emit(f"mlkem768_seed_{i}", seed)
    emit(f"mlkem768_ek_{i}", ek)
    emit(f"mlkem768_ct_{i}", ct)
    emit(f"mlkem768_ss_{i}", ss)
    emit(f"mlkem768_ct_bad_{i}", bytes(bad))
    emit(f"mlkem768_ss_rej_{i}", ss_rej)

# ---- ML-DSA 44 / 65 / 87 -------------------------------------------------
for lvl, cls in ((44, mldsa.MLDSA44PrivateKey), (65, mldsa.MLDSA65PrivateKey), (87, mldsa.MLDSA87PrivateKey)):
    d = cls.generate()
    seed = d.private_bytes_raw()  # xi, 32 bytes
    pk = d.public_key().public_bytes_raw()
    msg = bytes(f"mldsa-{lvl} reference message".encode())
    sig = d.sign(msg)
    emit(f"mldsa{lvl}_seed", seed)
    emit(f"mldsa{lvl}_pk", pk)
    emit(f"mldsa{lvl}_msg", msg)
    emit(f"mldsa{lvl}_sig", sig)

# ---- SHA3 / SHAKE --------------------------------------------------------
emit("sha3_256_empty", hashlib.sha3_256(b"").digest())
emit("sha3_256_abc", hashlib.sha3_256(b"abc").digest())
emit("sha3_512_empty", hashlib.sha3_512(b"").digest())
emit("sha3_512_abc", hashlib.sha3_512(b"abc").digest())
emit("shake128_abc_64", hashlib.shake_128(b"abc").digest(64))
emit("shake256_abc_64", hashlib.shake_256(b"abc").digest(64))
emit("shake256_empty_32", hashlib.shake_256(b"").digest(32))
# 200-byte message crossing the rate boundary
long_msg = bytes(range(200))
emit("shake128_long_200", hashlib.shake_128(long_msg).digest(200))
emit("sha3_256_long", hashlib.sha3_256(long_msg).digest())

# ---- HKDF-SHA256 (extract with salt, expand with ASCII label) ------------
def hkdf_extract(salt, ikm):
    return hmac_mod.new(salt, ikm, hashlib.sha256).digest()

def hkdf_expand(prk, info, n):
    okm = b""
    t = b""
    i = 1
    while len(okm) < n:
        t = hmac_mod.new(prk, t + info + bytes([i]), hashlib.sha256).digest()
        okm += t
        i += 1
    return okm[:n]

zero32 = bytes(32)
prk = hkdf_extract(zero32, zero32)
for label in ("c2s", "s2c", "cfin", "sfin"):
    emit(f"hkdf_zero_{label}", hkdf_expand(prk, label.encode(), 32))
# one non-trivial vector
ss_t = bytes(range(32))
th_t = bytes(range(100, 132))
prk2 = hkdf_extract(th_t, ss_t)
emit("hkdf_t_c2s", hkdf_expand(prk2, b"c2s", 32))
emit("hkdf_t_sfin", hkdf_expand(prk2, b"sfin", 32))

# ---- AES-256-GCM ----------------------------------------------------------
key = bytes(range(32))
pt = b"record layer sanity payload"
for seq in (0, 1, 7):
    nonce = seq.to_bytes(12, "big")
    ct = AESGCM(key).encrypt(nonce, pt, b"")
    emit(f"gcm_seq{seq}_ct", ct)
emit("gcm_key", key)
emit("gcm_pt", pt)
emit("gcm_empty_ct", AESGCM(key).encrypt((0).to_bytes(12, "big"), b"", b""))

# ---- Ed25519 / X25519 -----------------------------------------------------
ek_priv = ed25519.Ed25519PrivateKey.generate()
emit("ed25519_sk", ek_priv.private_bytes_raw())
emit("ed25519_pk", ek_priv.public_key().public_bytes_raw())
emit("ed25519_msg", b"classical suite reference")
emit("ed25519_sig", ek_priv.sign(b"classical suite reference"))

xa = x25519.X25519PrivateKey.generate()
xb = x25519.X25519PrivateKey.generate()
emit("x25519_sk_a", xa.private_bytes_raw())
emit("x25519_pk_a", xa.public_key().public_bytes_raw())
emit("x25519_sk_b", xb.private_bytes_raw())
emit("x25519_pk_b", xb.public_key().public_bytes_raw())
emit("x25519_shared", xa.exchange(xb.public_key()))

# ---- Student-t quantiles ---------------------------------------------------
pairs = []
for df in (1, 2, 3, 5, 10, 29, 30, 100, 500):
    for p in (0.6, 0.75, 0.9, 0.95, 0.975, 0.99, 0.995):
        pairs.append((p, df, float(sps.t.ppf(p, df))))
out.append("struct TQuantile { double p; int df; double value; };")
out.append("inline constexpr TQuantile t_quantiles[] = {")
for p, df, v in pairs:
    out.append(f"    {{{p!r}, {df}, {v!r}}},")
out.append("};")

# ---- ci_over_run_medians worked example ------------------------------------
import statistics
meds = [53.9] * 15 + [54.1] * 15
mean = statistics.fmean(meds)
s = statistics.stdev(meds)
import math
hw = float(sps.t.ppf(0.975, 29)) * s / math.sqrt(30)
emit("ci_example_mean", mean)
emit("ci_example_halfwidth", hw)

out.append("}  // namespace kat")
print("\n".join(out))
