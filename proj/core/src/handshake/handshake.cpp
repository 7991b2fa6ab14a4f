#include "pqcside/handshake/handshake.hpp"

#include <ctime>

#include "pqcside/crypto/hash.hpp"
#include "pqcside/crypto/rand.hpp"
#include "pqcside/error.hpp"

namespace pqcside::hs {

namespace {

constexpr std::string_view kServerSigLabel = "pqcside-hs-v1 server signature";
constexpr std::string_view kClientSigLabel = "pqcside-hs-v1 client signature";
constexpr std::string_view kClientFinLabel = "client finished";
constexpr std::string_view kServerFinLabel = "server finished";

using Clock = std::chrono::steady_clock;

uint64_t us_since(Clock::time_point t0) {
    return uint64_t(
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count());
}

Bytes labeled_digest(std::string_view label, const std::array<uint8_t, 32>& digest) {
    Bytes out = to_bytes(label);
    out.insert(out.end(), digest.begin(), digest.end());
    return out;
}

std::array<uint8_t, 32> hash_parts(std::initializer_list<ByteView> parts) {
    Sha256 h;
    for (ByteView p : parts) h.update(p);
    return h.digest();
}

Bytes finished_mac(ByteView key, std::string_view label, const std::array<uint8_t, 32>& digest) {
    return hmac_sha256(key, labeled_digest(label, digest));
}

uint64_t wall_now() {
    return uint64_t(std::time(nullptr));
}

}  // namespace

SessionKeys derive_session_keys(ByteView shared_secret, ByteView transcript_hash) {
    if (shared_secret.size() != 32 || transcript_hash.size() != 32) {
        throw Error(Errc::malformed_input, "key derivation inputs must be 32 bytes");
    }
    Bytes prk = hkdf_extract(transcript_hash, shared_secret);
    SessionKeys keys;
    keys.client_to_server_key = hkdf_expand(prk, to_bytes("c2s"), 32);
    keys.server_to_client_key = hkdf_expand(prk, to_bytes("s2c"), 32);
    keys.client_finished_key = hkdf_expand(prk, to_bytes("cfin"), 32);
    keys.server_finished_key = hkdf_expand(prk, to_bytes("sfin"), 32);
    return keys;
}

std::string_view hs_error_name(HsError e) {
    switch (e) {
        case HsError::none: return "None";
        case HsError::bad_config: return "BadConfig";
        case HsError::no_common_suite: return "NoCommonSuite";
        case HsError::chain_invalid: return "ChainInvalid";
        case HsError::bad_server_signature: return "BadServerSignature";
        case HsError::bad_client_signature: return "BadClientSignature";
        case HsError::bad_finished_mac: return "BadFinishedMac";
        case HsError::suite_mismatch: return "SuiteMismatch";
        case HsError::parse_error: return "ParseError";
    }
    return "?";
}

HandshakeBase::HandshakeBase(HandshakeConfig config, const Provider& provider)
    : config_(std::move(config)), provider_(provider) {
    if (!provider_.has_suite(config_.suite)) {
        throw Error(Errc::bad_config, "unknown suite '" + config_.suite + "'");
    }
    suite_id_ = provider_.suite(config_.suite);
}

const SessionKeys& HandshakeBase::keys() const {
    if (!session_keys_) throw Error(Errc::bad_config, "session keys not derived");
    return *session_keys_;
}

uint64_t HandshakeBase::duration_us() const {
    if (!started_flag_) return 0;
    auto end = (phase_ == Phase::established || phase_ == Phase::failed) ? ended_ : Clock::now();
    return uint64_t(std::chrono::duration_cast<std::chrono::microseconds>(end - started_).count());
}

void HandshakeBase::note_start() {
    if (!started_flag_) {
        started_ = Clock::now();
        started_flag_ = true;
    }
}

void HandshakeBase::note_end() {
    ended_ = Clock::now();
}

void HandshakeBase::fail(HsError err) {
    error_ = err;
    phase_ = Phase::failed;
    note_end();
}

void HandshakeBase::advance(Phase next) {
    // Phases only move forward.
    if (int(next) > int(phase_)) phase_ = next;
}

Bytes HandshakeBase::timed_sign(ByteView sk, AlgId alg, ByteView msg) {
    auto t0 = Clock::now();
    Bytes sig = provider_.sign(sk, alg, msg);
    timings_.sign_us += us_since(t0);
    return sig;
}

bool HandshakeBase::timed_verify(ByteView pk, AlgId alg, ByteView msg, ByteView sig) {
    auto t0 = Clock::now();
    bool ok = provider_.verify(pk, alg, msg, sig);
    timings_.verify_us += us_since(t0);
    return ok;
}

KemKeyPair HandshakeBase::timed_kem_keygen(AlgId alg) {
    auto t0 = Clock::now();
    KemKeyPair kp = provider_.generate_kem_keypair(alg);
    timings_.kem_us += us_since(t0);
    return kp;
}

std::pair<Bytes, SharedSecret> HandshakeBase::timed_encapsulate(ByteView pk, AlgId alg) {
    auto t0 = Clock::now();
    auto result = provider_.encapsulate(pk, alg);
    timings_.kem_us += us_since(t0);
    return result;
}

SharedSecret HandshakeBase::timed_decapsulate(ByteView sk, ByteView ct, AlgId alg) {
    auto t0 = Clock::now();
    SharedSecret ss = provider_.decapsulate(sk, ct, alg);
    timings_.kem_us += us_since(t0);
    return ss;
}

ValidationReport HandshakeBase::timed_validate_chain(const CertificateChain& chain,
                                                     const Certificate& trust_root) {
    ValidationReport report = validate_chain(chain, trust_root, wall_now(), provider_);
    timings_.verify_us += uint64_t(report.verify_duration.count());
    return report;
}

// --- client -----------------------------------------------------------------

ClientHandshake::ClientHandshake(HandshakeConfig config, const Provider& provider)
    : HandshakeBase(std::move(config), provider) {
    if (!config_.trust_root) {
        throw Error(Errc::bad_config, "client requires a trust root");
    }
    if (config_.mutual_auth && (!config_.local_chain || config_.local_sig_key.empty())) {
        throw Error(Errc::bad_config, "mutual authentication requires a client chain and key");
    }
}

Bytes ClientHandshake::start() {
    if (phase_ != Phase::start) throw Error(Errc::bad_config, "handshake already started");
    note_start();
    ClientHello hello;
    hello.client_nonce = random_bytes(kNonceLen);
    hello.offered_suites = {config_.suite};
    hello.mutual_auth_request = config_.mutual_auth;
    client_hello_frame_ = encode_frame(hello);
    transcript_.update(client_hello_frame_);
    advance(Phase::sent_hello);
    return client_hello_frame_;
}

std::optional<Bytes> ClientHandshake::on_server_hello(ByteView frame) {
    if (phase_ != Phase::sent_hello) {
        fail(HsError::parse_error);
        return std::nullopt;
    }
    ServerHello sh;
    try {
        sh = decode_server_hello(frame);
    } catch (const Error&) {
        fail(HsError::parse_error);
        return std::nullopt;
    }
    server_hello_frame_.assign(frame.begin(), frame.end());

    if (sh.chosen_suite != config_.suite) {
        fail(HsError::suite_mismatch);
        return std::nullopt;
    }

    CertificateChain chain;
    try {
        chain = decode_chain(sh.server_chain);
    } catch (const Error&) {
        fail(HsError::chain_invalid);
        return std::nullopt;
    }
    ValidationReport report = timed_validate_chain(chain, *config_.trust_root);
    if (!report.accepted) {
        chain_failure_ = report.failure_reason;
        fail(HsError::chain_invalid);
        return std::nullopt;
    }

    // Signature covers every byte of both hello messages (minus itself).
    auto signed_digest = hash_parts({client_hello_frame_, server_hello_signed_part(sh)});
    if (!timed_verify(chain.entity.subject_public_key, chain.entity.subject_sig_alg,
                      labeled_digest(kServerSigLabel, signed_digest), sh.server_signature)) {
        fail(HsError::bad_server_signature);
        return std::nullopt;
    }

    Bytes ciphertext;
    SharedSecret ss;
    try {
        auto enc = timed_encapsulate(sh.ephemeral_kem_public_key, suite_id_.kem_alg);
        ciphertext = std::move(enc.first);
        ss = std::move(enc.second);
    } catch (const Error&) {
        fail(HsError::parse_error);
        return std::nullopt;
    }

    transcript_.update(server_hello_frame_);
    auto th_keys = transcript_digest();  // hash(CH || SH)
    session_keys_ = derive_session_keys(ss.bytes, th_keys);

    ClientKey ck;
    ck.kem_ciphertext = std::move(ciphertext);
    if (config_.mutual_auth) {
        ck.client_chain = encode_chain(*config_.local_chain);
        auto sig_digest = hash_parts(
            {client_hello_frame_, server_hello_frame_, client_key_prefix_for_signature(ck)});
        ck.client_signature =
            timed_sign(config_.local_sig_key, config_.local_chain->entity.subject_sig_alg,
                       labeled_digest(kClientSigLabel, sig_digest));
    }
    auto fin_digest = hash_parts(
        {client_hello_frame_, server_hello_frame_, client_key_prefix_for_finished(ck)});
    ck.client_finished =
        finished_mac(session_keys_->client_finished_key, kClientFinLabel, fin_digest);

    Bytes ck_frame = encode_frame(ck);
    transcript_.update(ck_frame);
    auto final_digest = transcript_digest();  // hash(CH || SH || CK)
    finished_transcript_digest_.assign(final_digest.begin(), final_digest.end());
    return ck_frame;
}

bool ClientHandshake::on_server_finished(ByteView frame) {
    if (phase_ != Phase::sent_hello || !session_keys_) {
        fail(HsError::parse_error);
        return false;
    }
    ServerFinished sf;
    try {
        sf = decode_server_finished(frame);
    } catch (const Error&) {
        fail(HsError::parse_error);
        return false;
    }
    std::array<uint8_t, 32> digest{};
    std::copy(finished_transcript_digest_.begin(), finished_transcript_digest_.end(),
              digest.begin());
    Bytes expected = finished_mac(session_keys_->server_finished_key, kServerFinLabel, digest);
    if (!ct_equal(expected, sf.server_finished)) {
        fail(HsError::bad_finished_mac);
        return false;
    }
    advance(Phase::established);
    note_end();
    return true;
}

// --- server -----------------------------------------------------------------

ServerHandshake::ServerHandshake(HandshakeConfig config, const Provider& provider)
    : HandshakeBase(std::move(config), provider) {
    if (!config_.local_chain || config_.local_sig_key.empty()) {
        throw Error(Errc::bad_config, "server requires a certificate chain and key");
    }
    if (config_.mutual_auth && !config_.trust_root) {
        throw Error(Errc::bad_config, "mutual authentication requires a trust root");
    }
}

std::optional<Bytes> ServerHandshake::on_client_hello(ByteView frame) {
    if (phase_ != Phase::start) {
        fail(HsError::parse_error);
        return std::nullopt;
    }
    note_start();
    ClientHello ch;
    try {
        ch = decode_client_hello(frame);
    } catch (const Error&) {
        fail(HsError::parse_error);
        return std::nullopt;
    }
    client_hello_frame_.assign(frame.begin(), frame.end());
    client_requested_mutual_ = ch.mutual_auth_request;

    bool offered = false;
    for (const auto& s : ch.offered_suites) offered = offered || s == config_.suite;
    if (!offered) {
        fail(HsError::no_common_suite);
        return std::nullopt;
    }

    ephemeral_ = timed_kem_keygen(suite_id_.kem_alg);

    ServerHello sh;
    sh.server_nonce = random_bytes(kNonceLen);
    sh.chosen_suite = config_.suite;
    sh.server_chain = encode_chain(*config_.local_chain);
    sh.ephemeral_kem_public_key = ephemeral_.public_key;
    auto signed_digest = hash_parts({client_hello_frame_, server_hello_signed_part(sh)});
    sh.server_signature =
        timed_sign(config_.local_sig_key, config_.local_chain->entity.subject_sig_alg,
                   labeled_digest(kServerSigLabel, signed_digest));

    server_hello_frame_ = encode_frame(sh);
    transcript_.update(client_hello_frame_);
    transcript_.update(server_hello_frame_);
    advance(Phase::sent_hello);
    return server_hello_frame_;
}

std::optional<Bytes> ServerHandshake::on_client_key(ByteView frame) {
    if (phase_ != Phase::sent_hello) {
        fail(HsError::parse_error);
        return std::nullopt;
    }
    ClientKey ck;
    try {
        ck = decode_client_key(frame);
    } catch (const Error&) {
        fail(HsError::parse_error);
        return std::nullopt;
    }

    bool mutual = config_.mutual_auth || client_requested_mutual_;
    if (mutual) {
        CertificateChain chain;
        try {
            if (ck.client_chain.empty()) throw Error(Errc::malformed_input, "no client chain");
            chain = decode_chain(ck.client_chain);
        } catch (const Error&) {
            fail(HsError::chain_invalid);
            return std::nullopt;
        }
        ValidationReport report = timed_validate_chain(chain, *config_.trust_root);
        if (!report.accepted) {
            chain_failure_ = report.failure_reason;
            fail(HsError::chain_invalid);
            return std::nullopt;
        }
        auto sig_digest = hash_parts(
            {client_hello_frame_, server_hello_frame_, client_key_prefix_for_signature(ck)});
        if (!timed_verify(chain.entity.subject_public_key, chain.entity.subject_sig_alg,
                          labeled_digest(kClientSigLabel, sig_digest), ck.client_signature)) {
            fail(HsError::bad_client_signature);
            return std::nullopt;
        }
    }

    SharedSecret ss;
    try {
        ss = timed_decapsulate(ephemeral_.secret_key, ck.kem_ciphertext, suite_id_.kem_alg);
    } catch (const Error&) {
        fail(HsError::parse_error);
        return std::nullopt;
    }

    auto th_keys = transcript_digest();  // hash(CH || SH)
    SessionKeys keys = derive_session_keys(ss.bytes, th_keys);

    // Key confirmation: a mismatch here is where a tampered or implicitly
    // rejected KEM ciphertext becomes a deterministic failure.
    auto fin_digest = hash_parts(
        {client_hello_frame_, server_hello_frame_, client_key_prefix_for_finished(ck)});
    Bytes expected = finished_mac(keys.client_finished_key, kClientFinLabel, fin_digest);
    if (!ct_equal(expected, ck.client_finished)) {
        fail(HsError::bad_finished_mac);
        return std::nullopt;
    }
    session_keys_ = std::move(keys);

    transcript_.update(frame);
    auto final_digest = transcript_digest();
    ServerFinished sf;
    sf.server_finished =
        finished_mac(session_keys_->server_finished_key, kServerFinLabel, final_digest);
    advance(Phase::established);
    note_end();
    return encode_frame(sf);
}

}  // namespace pqcside::hs
