#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kat_vectors.hpp"
#include "pqcside/error.hpp"
#include "pqcside/record/channel.hpp"

using namespace pqcside;

namespace {

struct Pair {
    RecordChannel a;  // sends with key K1, receives with K2
    RecordChannel b;
};

Pair make_pair() {
    Bytes k1(32, 0x11), k2(32, 0x22);
    return {RecordChannel(k1, k2), RecordChannel(k2, k1)};
}

Bytes strip_header(const Bytes& record) {
    REQUIRE(record.size() >= 4);
    uint32_t len = uint32_t(record[0]) << 24 | uint32_t(record[1]) << 16 |
                   uint32_t(record[2]) << 8 | record[3];
    REQUIRE(len == record.size() - 4);
    return Bytes(record.begin() + 4, record.end());
}

}  // namespace

TEST_CASE("seal/open round trip across sizes") {
    auto [a, b] = make_pair();
    std::mt19937_64 rng(1);
    for (size_t size : {size_t(0), size_t(1), size_t(100), size_t(16384)}) {
        Bytes pt(size);
        for (auto& byte : pt) byte = uint8_t(rng());
        Bytes record = a.seal(pt);
        CHECK(record.size() == 4 + size + 16);
        CHECK(b.open(strip_header(record)) == pt);
    }
}

TEST_CASE("gcm reference vector with sequence-number nonces") {
    Bytes key = hex_decode(kat::gcm_key);
    Bytes pt = hex_decode(kat::gcm_pt);
    RecordChannel tx(key, key);
    CHECK(hex_encode(strip_header(tx.seal(pt))) == kat::gcm_seq0_ct);
    CHECK(hex_encode(strip_header(tx.seal(pt))) == kat::gcm_seq1_ct);

    RecordChannel tx7(key, key, 7, 0);
    CHECK(hex_encode(strip_header(tx7.seal(pt))) == kat::gcm_seq7_ct);

    RecordChannel rx(key, key);
    CHECK(rx.open(hex_decode(kat::gcm_seq0_ct)) == pt);
}

TEST_CASE("empty plaintext gives a 16-byte ciphertext record") {
    Bytes key = hex_decode(kat::gcm_key);
    RecordChannel tx(key, key);
    Bytes record = tx.seal({});
    CHECK(record.size() == 4 + 16);
    CHECK(hex_encode(strip_header(record)) == kat::gcm_empty_ct);
}

TEST_CASE("oversize plaintext is refused without closing the channel") {
    auto [a, b] = make_pair();
    Bytes big(16385, 0);
    CHECK_THROWS_AS(a.seal(big), Error);
    CHECK(a.is_open());
    CHECK(a.send_seq() == 0);
    Bytes ok(16384, 0);
    CHECK_NOTHROW(a.seal(ok));
}

TEST_CASE("replay fails: nonce has advanced") {
    auto [a, b] = make_pair();
    Bytes record = strip_header(a.seal(to_bytes("hello")));
    CHECK(b.open(record) == to_bytes("hello"));
    CHECK_THROWS_AS(b.open(record), Error);
    CHECK_FALSE(b.is_open());
}

TEST_CASE("reordering fails") {
    auto [a, b] = make_pair();
    Bytes r1 = strip_header(a.seal(to_bytes("one")));
    Bytes r2 = strip_header(a.seal(to_bytes("two")));
    CHECK_THROWS_AS(b.open(r2), Error);
    CHECK_FALSE(b.is_open());
}

TEST_CASE("tampered record closes the channel permanently") {
    auto [a, b] = make_pair();
    Bytes record = strip_header(a.seal(to_bytes("payload")));
    record[3] ^= 0x40;
    try {
        b.open(record);
        FAIL("tamper accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::auth_failure);
    }
    // every subsequent operation reports a closed channel
    try {
        b.open(strip_header(a.seal(to_bytes("next"))));
        FAIL("closed channel accepted a record");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::channel_closed);
    }
    try {
        b.seal(to_bytes("x"));
        FAIL("closed channel sealed");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::channel_closed);
    }
}

TEST_CASE("sequence numbers advance once per record, only on success") {
    auto [a, b] = make_pair();
    CHECK(a.send_seq() == 0);
    a.seal(to_bytes("1"));
    a.seal(to_bytes("2"));
    CHECK(a.send_seq() == 2);

    Bytes r = strip_header(a.seal(to_bytes("3")));
    Bytes bad = r;
    bad[0] ^= 1;
    RecordChannel rx(Bytes(32, 0x22), Bytes(32, 0x11), 0, 2);
    CHECK_THROWS(rx.open(bad));
    CHECK(rx.recv_seq() == 2);  // unchanged after failure
}

TEST_CASE("counter exhaustion closes the channel") {
    Bytes k(32, 9);
    RecordChannel tx(k, k, UINT64_MAX - 1, 0);
    CHECK_NOTHROW(tx.seal(to_bytes("last")));
    try {
        tx.seal(to_bytes("overflow"));
        FAIL("overflow not caught");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::channel_closed);
    }
    CHECK_FALSE(tx.is_open());
}

TEST_CASE("lossless ordered stream of many random payloads") {
    auto [a, b] = make_pair();
    std::mt19937_64 rng(77);
    for (int i = 0; i < 2000; ++i) {
        size_t size = rng() % 2048;
        Bytes pt(size);
        for (auto& byte : pt) byte = uint8_t(rng());
        CHECK(b.open(strip_header(a.seal(pt))) == pt);
    }
    CHECK(a.send_seq() == 2000);
    CHECK(b.recv_seq() == 2000);
}
