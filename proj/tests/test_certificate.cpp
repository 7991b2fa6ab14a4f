#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <set>

#include "pqcside/crypto/certificate.hpp"
#include "pqcside/error.hpp"
#include "test_helpers.hpp"

using namespace pqcside;
using pqcside::testing::make_credentials;

namespace {
uint64_t now_s() {
    return uint64_t(std::time(nullptr));
}
}  // namespace

TEST_CASE("canonical encoding round trips") {
    auto creds = make_credentials(AlgId::mldsa65, AlgId::mldsa65);
    Bytes enc = encode_certificate(creds.entity_chain.entity);
    Certificate back = decode_certificate(enc);
    CHECK(encode_certificate(back) == enc);
    CHECK(back.subject == "server");
    CHECK(back.issuer == "root-ca");
}

TEST_CASE("encoding is injective on a corpus of distinct tuples") {
    auto keys = default_provider().generate_sig_keypair(AlgId::td_sig);
    std::set<Bytes> seen;
    int count = 0;
    for (uint64_t serial : {1ull, 2ull, 1ull << 40}) {
        for (const char* subject : {"a", "b", "ab"}) {
            for (uint64_t nb : {100ull, 200ull}) {
                Certificate c;
                c.serial = serial;
                c.subject = subject;
                c.issuer = "i";
                c.not_before = nb;
                c.not_after = nb + 10;
                c.subject_sig_alg = AlgId::td_sig;
                c.subject_public_key = keys.public_key;
                c.issuer_sig_alg = AlgId::td_sig;
                c.issuer_signature = Bytes(32, 1);
                seen.insert(encode_certificate(c));
                ++count;
            }
        }
    }
    // subject="a" with issuer "b…" style collisions are what the
    // length-prefixed fields prevent
    Certificate c1, c2;
    c1.subject = "ab";
    c1.issuer = "c";
    c2.subject = "a";
    c2.issuer = "bc";
    CHECK(encode_tbs(c1) != encode_tbs(c2));
    CHECK(int(seen.size()) == count);
}

TEST_CASE("self-issued root verifies under its own key") {
    auto creds = make_credentials(AlgId::mldsa65, AlgId::mldsa65);
    const Certificate& root = creds.root_cert;
    CHECK(root.self_signed());
    CHECK(default_provider().verify(root.subject_public_key, root.issuer_sig_alg, encode_tbs(root),
                                    root.issuer_signature));
}

TEST_CASE("mixed-level chain validates: CA at 87 signing entity at 65") {
    auto creds = make_credentials(AlgId::mldsa87, AlgId::mldsa65);
    ValidationReport r = validate_chain(creds.entity_chain, creds.root_cert, now_s());
    CHECK(r.accepted);
    CHECK(r.failure_reason == ChainFailure::none);
    CHECK(r.verify_duration.count() > 0);
}

TEST_CASE("three-link chain with intermediate validates") {
    const Provider& p = default_provider();
    uint64_t now = now_s();
    auto root_keys = p.generate_sig_keypair(AlgId::mldsa65);
    Certificate root = issue_certificate(root_keys, std::nullopt, "root", root_keys.public_key,
                                         AlgId::mldsa65, {now - 10, now + 1000});
    auto mid_keys = p.generate_sig_keypair(AlgId::mldsa65);
    Certificate mid = issue_certificate(root_keys, root, "mid", mid_keys.public_key,
                                        AlgId::mldsa65, {now - 10, now + 1000});
    auto leaf_keys = p.generate_sig_keypair(AlgId::mldsa65);
    Certificate leaf = issue_certificate(mid_keys, mid, "leaf", leaf_keys.public_key,
                                         AlgId::mldsa65, {now - 10, now + 1000});
    CertificateChain chain{leaf, {mid}, root};
    CHECK(validate_chain(chain, root, now).accepted);

    // chain decode keeps order
    CertificateChain back = decode_chain(encode_chain(chain));
    CHECK(back.entity.subject == "leaf");
    REQUIRE(back.intermediates.size() == 1);
    CHECK(back.intermediates[0].subject == "mid");
    CHECK(back.root.subject == "root");
}

TEST_CASE("failure reasons") {
    auto creds = make_credentials(AlgId::mldsa65, AlgId::mldsa65);
    uint64_t now = now_s();

    SUBCASE("flipped signature bit") {
        CertificateChain chain = creds.entity_chain;
        chain.entity.issuer_signature[10] ^= 0x04;
        ValidationReport r = validate_chain(chain, creds.root_cert, now);
        CHECK_FALSE(r.accepted);
        CHECK(r.failure_reason == ChainFailure::bad_signature);
    }
    SUBCASE("name mismatch") {
        CertificateChain chain = creds.entity_chain;
        chain.entity.issuer = "someone-else";
        ValidationReport r = validate_chain(chain, creds.root_cert, now);
        CHECK_FALSE(r.accepted);
        CHECK(r.failure_reason == ChainFailure::name_mismatch);
    }
    SUBCASE("expired") {
        ValidationReport r = validate_chain(creds.entity_chain, creds.root_cert, now + 7200);
        CHECK_FALSE(r.accepted);
        CHECK(r.failure_reason == ChainFailure::expired);
        ValidationReport r2 = validate_chain(creds.entity_chain, creds.root_cert, 10);
        CHECK(r2.failure_reason == ChainFailure::expired);
    }
    SUBCASE("untrusted root") {
        auto other = make_credentials(AlgId::mldsa65, AlgId::mldsa65);
        ValidationReport r = validate_chain(creds.entity_chain, other.root_cert, now);
        CHECK_FALSE(r.accepted);
        CHECK(r.failure_reason == ChainFailure::untrusted_root);
    }
}

TEST_CASE("validation is pure in its outcome") {
    auto creds = make_credentials(AlgId::mldsa44, AlgId::mldsa65);
    CertificateChain tampered = creds.entity_chain;
    tampered.entity.issuer_signature[0] ^= 1;
    uint64_t now = now_s();
    for (int i = 0; i < 5; ++i) {
        CHECK(validate_chain(creds.entity_chain, creds.root_cert, now).accepted);
        ValidationReport r = validate_chain(tampered, creds.root_cert, now);
        CHECK_FALSE(r.accepted);
        CHECK(r.failure_reason == ChainFailure::bad_signature);
    }
}

TEST_CASE("invalid validity window") {
    const Provider& p = default_provider();
    auto keys = p.generate_sig_keypair(AlgId::td_sig);
    CHECK_THROWS_AS(issue_certificate(keys, std::nullopt, "x", keys.public_key, AlgId::td_sig,
                                      {100, 100}),
                    Error);
    CHECK_THROWS_AS(issue_certificate(keys, std::nullopt, "x", keys.public_key, AlgId::td_sig,
                                      {200, 100}),
                    Error);
}

TEST_CASE("distinct serials per issue") {
    auto creds = make_credentials(AlgId::td_sig, AlgId::td_sig);
    CHECK(creds.root_cert.serial != creds.entity_chain.entity.serial);
}

TEST_CASE("credential files round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("pqcside-cert-test-" + std::to_string(getpid()));
    fs::create_directories(dir);

    auto creds = make_credentials(AlgId::mldsa65, AlgId::mldsa65);
    write_certificate_file(dir / "root.cert", creds.root_cert);
    Certificate root = read_certificate_file(dir / "root.cert");
    CHECK(encode_certificate(root) == encode_certificate(creds.root_cert));

    write_chain_file(dir / "server.chain", creds.entity_chain);
    CertificateChain chain = read_chain_file(dir / "server.chain");
    CHECK(encode_chain(chain) == encode_chain(creds.entity_chain));

    KeyFile kf{AlgId::mldsa65, creds.entity_keys.public_key, creds.entity_keys.secret_key};
    write_key_file(dir / "server.key", kf);
    KeyFile back = read_key_file(dir / "server.key");
    CHECK(back.alg == AlgId::mldsa65);
    CHECK(back.public_key == kf.public_key);
    CHECK(back.secret_key == kf.secret_key);

    // corrupt magic
    {
        std::ofstream f(dir / "bad.key", std::ios::binary);
        f << "NOPE";
    }
    CHECK_THROWS_AS(read_key_file(dir / "bad.key"), Error);
    CHECK_THROWS_AS(read_key_file(dir / "missing.key"), Error);

    fs::remove_all(dir);
}
