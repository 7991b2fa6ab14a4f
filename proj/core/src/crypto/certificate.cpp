#include "pqcside/crypto/certificate.hpp"

#include <fstream>

#include "pqcside/crypto/rand.hpp"
#include "pqcside/error.hpp"

namespace pqcside {

namespace {

void put_string(Bytes& out, const std::string& s) {
    if (s.size() > 0xffff) throw Error(Errc::malformed_input, "name too long");
    put_u16_be(out, uint16_t(s.size()));
    out.insert(out.end(), s.begin(), s.end());
}

void put_blob(Bytes& out, ByteView b) {
    put_u32_be(out, uint32_t(b.size()));
    out.insert(out.end(), b.begin(), b.end());
}

std::string read_string(ByteReader& r) {
    uint16_t len = r.u16_be();
    Bytes raw = r.take(len);
    return std::string(raw.begin(), raw.end());
}

Bytes read_blob(ByteReader& r) {
    uint32_t len = r.u32_be();
    return r.take(len);
}

Certificate decode_one(ByteReader& r) {
    Certificate c;
    c.version = r.u8();
    c.serial = r.u64_be();
    c.subject = read_string(r);
    c.not_before = r.u64_be();
    c.not_after = r.u64_be();
    c.subject_sig_alg = AlgId(r.u8());
    c.subject_public_key = read_blob(r);
    c.issuer = read_string(r);
    c.issuer_sig_alg = AlgId(r.u8());
    c.issuer_signature = read_blob(r);
    return c;
}

}  // namespace

Bytes encode_tbs(const Certificate& cert) {
    Bytes out;
    out.push_back(cert.version);
    put_u64_be(out, cert.serial);
    put_string(out, cert.subject);
    put_u64_be(out, cert.not_before);
    put_u64_be(out, cert.not_after);
    out.push_back(uint8_t(cert.subject_sig_alg));
    put_blob(out, cert.subject_public_key);
    put_string(out, cert.issuer);
    out.push_back(uint8_t(cert.issuer_sig_alg));
    return out;
}

Bytes encode_certificate(const Certificate& cert) {
    Bytes out = encode_tbs(cert);
    put_blob(out, cert.issuer_signature);
    return out;
}

Certificate decode_certificate(ByteView data) {
    ByteReader r(data);
    Certificate c = decode_one(r);
    if (!r.empty()) throw Error(Errc::malformed_input, "trailing bytes after certificate");
    return c;
}

std::vector<const Certificate*> CertificateChain::ordered() const {
    std::vector<const Certificate*> v;
    v.push_back(&entity);
    for (const auto& c : intermediates) v.push_back(&c);
    v.push_back(&root);
    return v;
}

Bytes encode_chain(const CertificateChain& chain) {
    Bytes out;
    for (const Certificate* c : chain.ordered()) {
        Bytes enc = encode_certificate(*c);
        out.insert(out.end(), enc.begin(), enc.end());
    }
    return out;
}

CertificateChain decode_chain(ByteView data) {
    std::vector<Certificate> certs;
    ByteReader r(data);
    while (!r.empty()) certs.push_back(decode_one(r));
    if (certs.size() < 2) throw Error(Errc::malformed_input, "chain needs entity and root");
    CertificateChain chain;
    chain.entity = std::move(certs.front());
    chain.root = std::move(certs.back());
    chain.intermediates.assign(certs.begin() + 1, certs.end() - 1);
    return chain;
}

Certificate issue_certificate(const SigKeyPair& issuer_keys,
                              const std::optional<Certificate>& issuer_cert,
                              const std::string& subject, ByteView subject_public_key,
                              AlgId subject_sig_alg, Validity validity,
                              const Provider& provider) {
    if (validity.not_before >= validity.not_after) {
        throw Error(Errc::invalid_validity_window, "not_before must precede not_after");
    }
    Certificate cert;
    cert.version = 1;
    Bytes serial = random_bytes(8);
    for (uint8_t b : serial) cert.serial = cert.serial << 8 | b;
    cert.subject = subject;
    cert.not_before = validity.not_before;
    cert.not_after = validity.not_after;
    cert.subject_sig_alg = subject_sig_alg;
    cert.subject_public_key.assign(subject_public_key.begin(), subject_public_key.end());
    cert.issuer = issuer_cert ? issuer_cert->subject : subject;
    cert.issuer_sig_alg = issuer_keys.alg;
    cert.issuer_signature = provider.sign(issuer_keys.secret_key, issuer_keys.alg, encode_tbs(cert));
    return cert;
}

std::string_view chain_failure_name(ChainFailure f) {
    switch (f) {
        case ChainFailure::none: return "None";
        case ChainFailure::bad_signature: return "BadSignature";
        case ChainFailure::name_mismatch: return "NameMismatch";
        case ChainFailure::expired: return "Expired";
        case ChainFailure::untrusted_root: return "UntrustedRoot";
    }
    return "?";
}

ValidationReport validate_chain(const CertificateChain& chain, const Certificate& trust_root,
                                uint64_t now_epoch_s, const Provider& provider) {
    auto start = std::chrono::steady_clock::now();
    ValidationReport report;

    auto finish = [&](bool ok, ChainFailure reason) {
        report.accepted = ok;
        report.failure_reason = reason;
        report.verify_duration = std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - start);
        return report;
    };

    std::vector<const Certificate*> certs = chain.ordered();

    if (encode_certificate(chain.root) != encode_certificate(trust_root)) {
        return finish(false, ChainFailure::untrusted_root);
    }
    for (size_t i = 0; i + 1 < certs.size(); ++i) {
        if (certs[i]->issuer != certs[i + 1]->subject) {
            return finish(false, ChainFailure::name_mismatch);
        }
    }
    if (!chain.root.self_signed()) return finish(false, ChainFailure::name_mismatch);
    for (const Certificate* c : certs) {
        if (now_epoch_s < c->not_before || now_epoch_s > c->not_after) {
            return finish(false, ChainFailure::expired);
        }
    }
    for (size_t i = 0; i < certs.size(); ++i) {
        const Certificate* signer = certs[std::min(i + 1, certs.size() - 1)];
        if (certs[i]->issuer_sig_alg != signer->subject_sig_alg) {
            return finish(false, ChainFailure::bad_signature);
        }
        if (!provider.verify(signer->subject_public_key, certs[i]->issuer_sig_alg,
                             encode_tbs(*certs[i]), certs[i]->issuer_signature)) {
            return finish(false, ChainFailure::bad_signature);
        }
    }
    return finish(true, ChainFailure::none);
}

namespace {

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::filesystem::path& path, ByteView data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_failure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
    if (!out) throw Error(Errc::io_failure, "short write to " + path.string());
}

}  // namespace

void write_certificate_file(const std::filesystem::path& path, const Certificate& cert) {
    write_file(path, encode_certificate(cert));
}

Certificate read_certificate_file(const std::filesystem::path& path) {
    return decode_certificate(read_file(path));
}

void write_chain_file(const std::filesystem::path& path, const CertificateChain& chain) {
    write_file(path, encode_chain(chain));
}

CertificateChain read_chain_file(const std::filesystem::path& path) {
    return decode_chain(read_file(path));
}

void write_key_file(const std::filesystem::path& path, const KeyFile& key) {
    Bytes out = to_bytes("PQK1");
    out.push_back(uint8_t(key.alg));
    put_u32_be(out, uint32_t(key.public_key.size()));
    out.insert(out.end(), key.public_key.begin(), key.public_key.end());
    put_u32_be(out, uint32_t(key.secret_key.size()));
    out.insert(out.end(), key.secret_key.begin(), key.secret_key.end());
    write_file(path, out);
}

KeyFile read_key_file(const std::filesystem::path& path) {
    Bytes data = read_file(path);
    ByteReader r(data);
    Bytes magic = r.take(4);
    if (to_string(magic) != "PQK1") {
        throw Error(Errc::credential_error, "bad key file magic in " + path.string());
    }
    KeyFile key;
    key.alg = AlgId(r.u8());
    key.public_key = r.take(r.u32_be());
    uint32_t sk_len = r.u32_be();
    key.secret_key = r.take(sk_len);
    if (!r.empty()) throw Error(Errc::credential_error, "trailing bytes in " + path.string());
    return key;
}

}  // namespace pqcside
