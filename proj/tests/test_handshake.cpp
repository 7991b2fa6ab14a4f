#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ctime>
#include <random>

#include "kat_vectors.hpp"
#include "pqcside/error.hpp"
#include "pqcside/handshake/handshake.hpp"
#include "test_helpers.hpp"

using namespace pqcside;
using namespace pqcside::hs;
using pqcside::testing::client_config;
using pqcside::testing::make_credentials;
using pqcside::testing::make_suite_credentials;
using pqcside::testing::server_config;

namespace {

struct HonestRun {
    Bytes ch, sh, ck, sf;
    SessionKeys client_keys, server_keys;
};

HonestRun run_honest(const std::string& suite, bool mutual = false) {
    auto server_creds = make_suite_credentials(suite, "server");
    auto client_creds = make_suite_credentials(suite, "client");

    HandshakeConfig ccfg = client_config(suite, server_creds);
    HandshakeConfig scfg = server_config(suite, server_creds);
    if (mutual) {
        ccfg.mutual_auth = true;
        ccfg.local_chain = client_creds.entity_chain;
        ccfg.local_sig_key = client_creds.entity_keys.secret_key;
        scfg.mutual_auth = true;
        scfg.trust_root = client_creds.root_cert;
    }

    ClientHandshake client(ccfg);
    ServerHandshake server(scfg);

    HonestRun run;
    run.ch = client.start();
    auto sh = server.on_client_hello(run.ch);
    REQUIRE(sh.has_value());
    run.sh = *sh;
    auto ck = client.on_server_hello(run.sh);
    REQUIRE_MESSAGE(ck.has_value(), hs_error_name(client.error()));
    run.ck = *ck;
    auto sf = server.on_client_key(run.ck);
    REQUIRE_MESSAGE(sf.has_value(), hs_error_name(server.error()));
    run.sf = *sf;
    REQUIRE(client.on_server_finished(run.sf));
    REQUIRE(client.phase() == Phase::established);
    REQUIRE(server.phase() == Phase::established);
    run.client_keys = client.keys();
    run.server_keys = server.keys();
    return run;
}

}  // namespace

TEST_CASE("honest handshake: both sides derive identical keys") {
    for (const std::string suite : {"pqc", "classical", "testdouble"}) {
        CAPTURE(suite);
        HonestRun run = run_honest(suite);
        CHECK(run.client_keys == run.server_keys);
        CHECK(run.client_keys.client_to_server_key != run.client_keys.server_to_client_key);
        CHECK(run.client_keys.client_finished_key != run.client_keys.server_finished_key);
    }
}

TEST_CASE("mutual authentication round trip") {
    HonestRun run = run_honest("pqc", true);
    CHECK(run.client_keys == run.server_keys);
}

TEST_CASE("repeated handshakes never repeat keys or ephemeral public keys") {
    auto creds = make_suite_credentials("testdouble");
    HandshakeConfig scfg = server_config("testdouble", creds);
    Bytes last_eph;
    for (int i = 0; i < 3; ++i) {
        ClientHandshake client(client_config("testdouble", creds));
        ServerHandshake server(scfg);
        Bytes ch = client.start();
        auto sh_frame = server.on_client_hello(ch);
        REQUIRE(sh_frame);
        ServerHello sh = decode_server_hello(*sh_frame);
        CHECK(sh.ephemeral_kem_public_key != last_eph);
        last_eph = sh.ephemeral_kem_public_key;
    }
}

TEST_CASE("client offers exactly the configured suite") {
    auto creds = make_suite_credentials("classical");
    ClientHandshake client(client_config("classical", creds));
    ClientHello ch = decode_client_hello(client.start());
    REQUIRE(ch.offered_suites.size() == 1);
    CHECK(ch.offered_suites[0] == "classical");
    CHECK(ch.client_nonce.size() == 32);
    CHECK(ch.version == 1);
}

TEST_CASE("config validation") {
    auto creds = make_suite_credentials("pqc");
    HandshakeConfig no_root;
    no_root.suite = "pqc";
    CHECK_THROWS_AS(ClientHandshake{no_root}, Error);

    HandshakeConfig no_chain;
    no_chain.suite = "pqc";
    CHECK_THROWS_AS(ServerHandshake{no_chain}, Error);

    HandshakeConfig unknown = client_config("nope", creds);
    CHECK_THROWS_AS(ClientHandshake{unknown}, Error);

    HandshakeConfig mutual_no_client_chain = client_config("pqc", creds);
    mutual_no_client_chain.mutual_auth = true;
    CHECK_THROWS_AS(ClientHandshake{mutual_no_client_chain}, Error);
}

TEST_CASE("no common suite") {
    auto pqc_creds = make_suite_credentials("pqc");
    auto cls_creds = make_suite_credentials("classical");
    ClientHandshake client(client_config("classical", cls_creds));
    ServerHandshake server(server_config("pqc", pqc_creds));
    Bytes ch = client.start();
    auto sh = server.on_client_hello(ch);
    CHECK_FALSE(sh.has_value());
    CHECK(server.phase() == Phase::failed);
    CHECK(server.error() == HsError::no_common_suite);
}

TEST_CASE("untrusted root is rejected with the chain detail") {
    auto creds = make_suite_credentials("pqc");
    auto other = make_suite_credentials("pqc");
    ClientHandshake client(client_config("pqc", other));  // trusts the wrong root
    ServerHandshake server(server_config("pqc", creds));
    Bytes ch = client.start();
    auto sh = server.on_client_hello(ch);
    REQUIRE(sh);
    auto ck = client.on_server_hello(*sh);
    CHECK_FALSE(ck.has_value());
    CHECK(client.error() == HsError::chain_invalid);
    CHECK(client.chain_failure() == ChainFailure::untrusted_root);
}

TEST_CASE("expired server chain is rejected") {
    const Provider& p = default_provider();
    uint64_t now = uint64_t(std::time(nullptr));
    auto root_keys = p.generate_sig_keypair(AlgId::mldsa65);
    Certificate root = issue_certificate(root_keys, std::nullopt, "root", root_keys.public_key,
                                         AlgId::mldsa65, {now - 5000, now + 5000});
    auto entity_keys = p.generate_sig_keypair(AlgId::mldsa65);
    Certificate entity = issue_certificate(root_keys, root, "server", entity_keys.public_key,
                                           AlgId::mldsa65, {now - 5000, now - 3000});

    HandshakeConfig scfg;
    scfg.suite = "pqc";
    scfg.local_chain = CertificateChain{entity, {}, root};
    scfg.local_sig_key = entity_keys.secret_key;
    HandshakeConfig ccfg;
    ccfg.suite = "pqc";
    ccfg.trust_root = root;

    ClientHandshake client(ccfg);
    ServerHandshake server(scfg);
    auto sh = server.on_client_hello(client.start());
    REQUIRE(sh);
    CHECK_FALSE(client.on_server_hello(*sh).has_value());
    CHECK(client.error() == HsError::chain_invalid);
    CHECK(client.chain_failure() == ChainFailure::expired);
}

TEST_CASE("kem ciphertext flip surfaces as a finished-MAC failure") {
    auto creds = make_suite_credentials("pqc");
    ClientHandshake client(client_config("pqc", creds));
    ServerHandshake server(server_config("pqc", creds));
    auto sh = server.on_client_hello(client.start());
    REQUIRE(sh);
    auto ck_frame = client.on_server_hello(*sh);
    REQUIRE(ck_frame);

    // flip one bit inside the kem_ciphertext field (starts after the 4-byte
    // frame header and its own 4-byte length prefix)
    Bytes tampered = *ck_frame;
    tampered[4 + 4 + 100] ^= 0x01;
    auto sf = server.on_client_key(tampered);
    CHECK_FALSE(sf.has_value());
    CHECK(server.error() == HsError::bad_finished_mac);
}

TEST_CASE("mutual auth required but client omits chain") {
    auto creds = make_suite_credentials("pqc");
    // client does not request mutual auth and sends no chain; server demands it
    HandshakeConfig scfg = server_config("pqc", creds);
    scfg.mutual_auth = true;
    scfg.trust_root = creds.root_cert;
    ClientHandshake client(client_config("pqc", creds));
    ServerHandshake server(scfg);
    auto sh = server.on_client_hello(client.start());
    REQUIRE(sh);
    auto ck = client.on_server_hello(*sh);
    REQUIRE(ck);
    auto sf = server.on_client_key(*ck);
    CHECK_FALSE(sf.has_value());
    CHECK(server.error() == HsError::chain_invalid);
}

TEST_CASE("downgrade resistance: recorded hello with altered suite list fails") {
    auto pqc_creds = make_suite_credentials("pqc");
    ClientHandshake client(client_config("pqc", pqc_creds));
    ServerHandshake server(server_config("pqc", pqc_creds));
    Bytes ch = client.start();

    // The attacker rewrites the offered suite to an equal-length name before
    // the server sees it. The server still picks "pqc" (its only suite), and
    // every downstream check must notice the transcript divergence.
    Bytes altered = ch;
    std::string fake = "qqq";
    bool replaced = false;
    for (size_t i = 0; i + 3 <= altered.size(); ++i) {
        if (altered[i] == 'p' && altered[i + 1] == 'q' && altered[i + 2] == 'c') {
            std::copy(fake.begin(), fake.end(), altered.begin() + i);
            replaced = true;
            break;
        }
    }
    REQUIRE(replaced);
    auto sh = server.on_client_hello(altered);
    // either the server refuses outright, or the client detects the forged
    // transcript in the signature check
    if (sh.has_value()) {
        auto ck = client.on_server_hello(*sh);
        if (ck.has_value()) {
            auto sf = server.on_client_key(*ck);
            CHECK_FALSE(sf.has_value());
        } else {
            CHECK(client.phase() == Phase::failed);
        }
    } else {
        CHECK(server.phase() == Phase::failed);
    }
}

TEST_CASE("exhaustive single-bit tamper of every handshake message fails, testdouble suite") {
    // Fast suite keeps the exhaustive sweep cheap; the acceptance suite
    // repeats this for the real suites.
    auto creds = make_suite_credentials("testdouble");
    HandshakeConfig ccfg = client_config("testdouble", creds);
    HandshakeConfig scfg = server_config("testdouble", creds);

    HonestRun recorded = run_honest("testdouble");

    auto run_with_tamper = [&](int msg_index, size_t bit) {
        ClientHandshake client(ccfg);
        ServerHandshake server(scfg);
        auto flip = [&](Bytes frame, int idx) {
            if (idx == msg_index) frame[bit / 8] ^= uint8_t(1 << (bit % 8));
            return frame;
        };
        try {
            Bytes ch = flip(client.start(), 0);
            auto sh = server.on_client_hello(ch);
            if (!sh) return false;
            auto ck = client.on_server_hello(flip(*sh, 1));
            if (!ck) return false;
            auto sf = server.on_client_key(flip(*ck, 2));
            if (!sf) return false;
            return client.on_server_finished(flip(*sf, 3));
        } catch (const Error&) {
            return false;
        }
    };

    const Bytes* frames[] = {&recorded.ch, &recorded.sh, &recorded.ck, &recorded.sf};
    std::mt19937_64 rng(99);
    for (int msg = 0; msg < 4; ++msg) {
        size_t nbits = frames[msg]->size() * 8;
        // sample positions densely but bounded; acceptance runs the full sweep
        for (int trial = 0; trial < 200; ++trial) {
            size_t bit = rng() % nbits;
            CAPTURE(msg);
            CAPTURE(bit);
            CHECK_FALSE(run_with_tamper(msg, bit));
        }
    }
}

TEST_CASE("derive_session_keys: deterministic and matches the reference kdf") {
    Bytes zero(32, 0);
    SessionKeys keys = derive_session_keys(zero, zero);
    CHECK(hex_encode(keys.client_to_server_key) == kat::hkdf_zero_c2s);
    CHECK(hex_encode(keys.server_to_client_key) == kat::hkdf_zero_s2c);
    CHECK(hex_encode(keys.client_finished_key) == kat::hkdf_zero_cfin);
    CHECK(hex_encode(keys.server_finished_key) == kat::hkdf_zero_sfin);

    Bytes ss(32), th(32);
    for (int i = 0; i < 32; ++i) {
        ss[i] = uint8_t(i);
        th[i] = uint8_t(100 + i);
    }
    SessionKeys keys2 = derive_session_keys(ss, th);
    CHECK(hex_encode(keys2.client_to_server_key) == kat::hkdf_t_c2s);
    CHECK(hex_encode(keys2.server_finished_key) == kat::hkdf_t_sfin);
    CHECK(derive_session_keys(ss, th) == keys2);
}

TEST_CASE("one transcript bit flips all four derived keys") {
    std::mt19937_64 rng(5);
    Bytes ss(32), th(32);
    for (auto& b : ss) b = uint8_t(rng());
    for (auto& b : th) b = uint8_t(rng());
    SessionKeys base = derive_session_keys(ss, th);
    for (int trial = 0; trial < 32; ++trial) {
        Bytes th2 = th;
        size_t bit = rng() % 256;
        th2[bit / 8] ^= uint8_t(1 << (bit % 8));
        SessionKeys other = derive_session_keys(ss, th2);
        CHECK(other.client_to_server_key != base.client_to_server_key);
        CHECK(other.server_to_client_key != base.server_to_client_key);
        CHECK(other.client_finished_key != base.client_finished_key);
        CHECK(other.server_finished_key != base.server_finished_key);
    }
}

TEST_CASE("phase monotonicity and timing accounting") {
    auto creds = make_suite_credentials("pqc");
    ClientHandshake client(client_config("pqc", creds));
    ServerHandshake server(server_config("pqc", creds));

    CHECK(client.phase() == Phase::start);
    Bytes ch = client.start();
    CHECK(client.phase() == Phase::sent_hello);
    auto sh = server.on_client_hello(ch);
    REQUIRE(sh);
    CHECK(server.phase() == Phase::sent_hello);
    auto ck = client.on_server_hello(*sh);
    REQUIRE(ck);
    auto sf = server.on_client_key(*ck);
    REQUIRE(sf);
    CHECK(server.phase() == Phase::established);
    REQUIRE(client.on_server_finished(*sf));
    CHECK(client.phase() == Phase::established);

    // feeding a stale message cannot move an established machine backwards
    auto again = server.on_client_key(*ck);
    CHECK_FALSE(again.has_value());

    // wall duration dominates the summed crypto time on both sides
    CHECK(client.duration_us() >= client.crypto_timings().total_us());
    CHECK(server.duration_us() >= server.crypto_timings().total_us());
    CHECK(server.crypto_timings().sign_us > 0);
    CHECK(client.crypto_timings().verify_us > 0);
    CHECK(client.crypto_timings().kem_us > 0);
}

TEST_CASE("key agreement holds across 200 randomized handshakes per suite") {
    for (const std::string suite : {"pqc", "classical"}) {
        auto creds = make_suite_credentials(suite);
        HandshakeConfig ccfg = client_config(suite, creds);
        HandshakeConfig scfg = server_config(suite, creds);
        for (int i = 0; i < 200; ++i) {
            ClientHandshake client(ccfg);
            ServerHandshake server(scfg);
            auto sh = server.on_client_hello(client.start());
            REQUIRE(sh);
            auto ck = client.on_server_hello(*sh);
            REQUIRE(ck);
            auto sf = server.on_client_key(*ck);
            REQUIRE(sf);
            REQUIRE(client.on_server_finished(*sf));
            REQUIRE(client.keys() == server.keys());
        }
    }
}
