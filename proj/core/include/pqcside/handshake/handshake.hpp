#pragma once

#include <optional>
#include <string>

#include "pqcside/crypto/certificate.hpp"
#include "pqcside/crypto/hash.hpp"
#include "pqcside/crypto/provider.hpp"
#include "pqcside/handshake/messages.hpp"

namespace pqcside::hs {

// Signed-KEM key establishment: the server authenticates with its
// certificate chain and a transcript signature over an ephemeral KEM key;
// the client encapsulates to it; finished MACs give explicit key
// confirmation (which is also where KEM implicit rejection surfaces).

struct HandshakeConfig {
    std::string suite = "pqc";
    std::optional<CertificateChain> local_chain;  // server always; client iff mutual
    Bytes local_sig_key;                          // secret key matching local_chain entity
    std::optional<Certificate> trust_root;        // client always; server iff mutual
    bool mutual_auth = false;
};

struct SessionKeys {
    Bytes client_to_server_key;
    Bytes server_to_client_key;
    Bytes client_finished_key;
    Bytes server_finished_key;

    bool operator==(const SessionKeys&) const = default;
};

// Deterministic extract-and-expand: extract with salt = transcript_hash,
// expand with labels "c2s", "s2c", "cfin", "sfin".
SessionKeys derive_session_keys(ByteView shared_secret, ByteView transcript_hash);

enum class Phase { start, sent_hello, established, failed };

enum class HsError {
    none,
    bad_config,
    no_common_suite,
    chain_invalid,
    bad_server_signature,
    bad_client_signature,
    bad_finished_mac,
    suite_mismatch,
    parse_error,
};

std::string_view hs_error_name(HsError e);

struct CryptoTimings {
    uint64_t kem_us = 0;     // keypair + encapsulate + decapsulate
    uint64_t sign_us = 0;
    uint64_t verify_us = 0;  // signature verification + chain validation

    uint64_t total_us() const { return kem_us + sign_us + verify_us; }
};

class HandshakeBase {
  public:
    Phase phase() const { return phase_; }
    HsError error() const { return error_; }
    ChainFailure chain_failure() const { return chain_failure_; }
    const SessionKeys& keys() const;
    const std::string& negotiated_suite() const { return negotiated_suite_; }
    const CryptoTimings& crypto_timings() const { return timings_; }
    // Wall span from the first message processed until established/failed.
    uint64_t duration_us() const;

  protected:
    explicit HandshakeBase(HandshakeConfig config, const Provider& provider);

    void note_start();
    void note_end();
    void fail(HsError err);
    void advance(Phase next);

    Bytes timed_sign(ByteView sk, AlgId alg, ByteView msg);
    bool timed_verify(ByteView pk, AlgId alg, ByteView msg, ByteView sig);
    KemKeyPair timed_kem_keygen(AlgId alg);
    std::pair<Bytes, SharedSecret> timed_encapsulate(ByteView pk, AlgId alg);
    SharedSecret timed_decapsulate(ByteView sk, ByteView ct, AlgId alg);
    ValidationReport timed_validate_chain(const CertificateChain& chain,
                                          const Certificate& trust_root);

    std::array<uint8_t, 32> transcript_digest() const { return transcript_.digest(); }

    HandshakeConfig config_;
    const Provider& provider_;
    SuiteId suite_id_{};
    Phase phase_ = Phase::start;
    HsError error_ = HsError::none;
    ChainFailure chain_failure_ = ChainFailure::none;
    std::string negotiated_suite_;
    Sha256 transcript_;
    std::optional<SessionKeys> session_keys_;
    CryptoTimings timings_;
    std::chrono::steady_clock::time_point started_{};
    std::chrono::steady_clock::time_point ended_{};
    bool started_flag_ = false;
};

class ClientHandshake : public HandshakeBase {
  public:
    // Throws Error{bad_config} when required credentials are missing or the
    // suite is unknown.
    ClientHandshake(HandshakeConfig config, const Provider& provider = default_provider());

    Bytes start();  // ClientHello frame
    // Returns the ClientKey frame, or nullopt with phase() == failed.
    std::optional<Bytes> on_server_hello(ByteView frame);
    // Returns true when the handshake completed and keys() are confirmed.
    bool on_server_finished(ByteView frame);

  private:
    Bytes client_hello_frame_;
    Bytes server_hello_frame_;
    Bytes finished_transcript_digest_;
};

class ServerHandshake : public HandshakeBase {
  public:
    ServerHandshake(HandshakeConfig config, const Provider& provider = default_provider());

    std::optional<Bytes> on_client_hello(ByteView frame);  // ServerHello frame
    std::optional<Bytes> on_client_key(ByteView frame);    // ServerFinished frame

  private:
    Bytes client_hello_frame_;
    Bytes server_hello_frame_;
    KemKeyPair ephemeral_;
    bool client_requested_mutual_ = false;
};

}  // namespace pqcside::hs
