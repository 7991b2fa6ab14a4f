#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pqcside/bytes.hpp"
#include "pqcside/crypto/provider.hpp"

namespace pqcside {

// Compact signed identity binding with a byte-deterministic canonical
// encoding: fixed field order, big-endian integers, length-prefixed byte
// strings. Deliberately not X.509.
struct Certificate {
    uint8_t version = 1;
    uint64_t serial = 0;
    std::string subject;
    uint64_t not_before = 0;  // epoch seconds
    uint64_t not_after = 0;
    AlgId subject_sig_alg = AlgId::mldsa65;
    Bytes subject_public_key;
    std::string issuer;
    AlgId issuer_sig_alg = AlgId::mldsa65;
    Bytes issuer_signature;

    bool self_signed() const { return subject == issuer; }
};

// Canonical bytes covered by the issuer signature (everything but the
// signature itself).
Bytes encode_tbs(const Certificate& cert);
Bytes encode_certificate(const Certificate& cert);
Certificate decode_certificate(ByteView data);

struct CertificateChain {
    Certificate entity;
    std::vector<Certificate> intermediates;
    Certificate root;

    std::vector<const Certificate*> ordered() const;  // entity, intermediates..., root
};

Bytes encode_chain(const CertificateChain& chain);
CertificateChain decode_chain(ByteView data);

struct Validity {
    uint64_t not_before;
    uint64_t not_after;
};

// Self-issue by passing std::nullopt as issuer_cert: subject == issuer and
// the certificate signs itself with issuer_keys.
Certificate issue_certificate(const SigKeyPair& issuer_keys,
                              const std::optional<Certificate>& issuer_cert,
                              const std::string& subject, ByteView subject_public_key,
                              AlgId subject_sig_alg, Validity validity,
                              const Provider& provider = default_provider());

enum class ChainFailure { none, bad_signature, name_mismatch, expired, untrusted_root };

std::string_view chain_failure_name(ChainFailure f);

struct ValidationReport {
    bool accepted = false;
    ChainFailure failure_reason = ChainFailure::none;
    std::chrono::microseconds verify_duration{0};
};

// Pure in its accept/reject outcome; verify_duration is wall time on a
// monotonic clock. Check order is fixed: root identity, name chaining,
// validity windows, then signatures.
ValidationReport validate_chain(const CertificateChain& chain, const Certificate& trust_root,
                                uint64_t now_epoch_s,
                                const Provider& provider = default_provider());

// --- credential files -------------------------------------------------------
// Certificate file: one canonically encoded certificate.
// Chain file: concatenated certificates, entity first, root last.
// Key file: magic "PQK1", one algorithm byte, then u32-length-prefixed
// public and secret keys.

void write_certificate_file(const std::filesystem::path& path, const Certificate& cert);
Certificate read_certificate_file(const std::filesystem::path& path);
void write_chain_file(const std::filesystem::path& path, const CertificateChain& chain);
CertificateChain read_chain_file(const std::filesystem::path& path);

struct KeyFile {
    AlgId alg;
    Bytes public_key;
    Bytes secret_key;
};

void write_key_file(const std::filesystem::path& path, const KeyFile& key);
KeyFile read_key_file(const std::filesystem::path& path);

}  // namespace pqcside
