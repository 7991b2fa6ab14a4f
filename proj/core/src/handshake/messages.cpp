#include "pqcside/handshake/messages.hpp"

#include "pqcside/error.hpp"

namespace pqcside::hs {

namespace {

void put_short(Bytes& out, ByteView b) {
    if (b.size() > 0xffff) throw Error(Errc::protocol_parse_error, "short field overflow");
    put_u16_be(out, uint16_t(b.size()));
    out.insert(out.end(), b.begin(), b.end());
}

void put_bulk(Bytes& out, ByteView b) {
    put_u32_be(out, uint32_t(b.size()));
    out.insert(out.end(), b.begin(), b.end());
}

Bytes take_short(ByteReader& r) {
    return r.take(r.u16_be());
}

Bytes take_bulk(ByteReader& r) {
    return r.take(r.u32_be());
}

Bytes frame(MsgType type, const Bytes& body) {
    if (body.size() > kMaxFrameBody) throw Error(Errc::protocol_parse_error, "frame body overflow");
    Bytes out;
    out.reserve(body.size() + 4);
    out.push_back(uint8_t(type));
    put_u24_be(out, uint32_t(body.size()));
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

ByteReader open_frame(ByteView data, MsgType expect) {
    ByteReader r(data);
    uint8_t type = r.u8();
    uint32_t len = r.u24_be();
    if (type != uint8_t(expect)) throw Error(Errc::protocol_parse_error, "unexpected message type");
    if (len != r.remaining()) throw Error(Errc::protocol_parse_error, "frame length mismatch");
    return r;
}

void expect_done(ByteReader& r) {
    if (!r.empty()) throw Error(Errc::protocol_parse_error, "trailing bytes in frame body");
}

void expect_len(const Bytes& b, size_t n, const char* what) {
    if (b.size() != n) throw Error(Errc::protocol_parse_error, std::string(what) + " length");
}

}  // namespace

MsgType frame_type(ByteView data) {
    if (data.empty()) throw Error(Errc::protocol_parse_error, "empty frame");
    uint8_t t = data[0];
    if (t < 1 || t > 4) throw Error(Errc::protocol_parse_error, "unknown message type");
    return MsgType(t);
}

Bytes encode_frame(const ClientHello& m) {
    Bytes body;
    body.push_back(m.version);
    put_short(body, m.client_nonce);
    if (m.offered_suites.size() > 0xff) {
        throw Error(Errc::protocol_parse_error, "too many offered suites");
    }
    body.push_back(uint8_t(m.offered_suites.size()));
    for (const auto& s : m.offered_suites) put_short(body, to_bytes(s));
    body.push_back(m.mutual_auth_request ? 1 : 0);
    return frame(MsgType::client_hello, body);
}

ClientHello decode_client_hello(ByteView data) {
    ByteReader r = open_frame(data, MsgType::client_hello);
    ClientHello m;
    m.version = r.u8();
    if (m.version != kProtocolVersion) throw Error(Errc::protocol_parse_error, "bad version");
    m.client_nonce = take_short(r);
    expect_len(m.client_nonce, kNonceLen, "client nonce");
    uint8_t n = r.u8();
    for (int i = 0; i < n; ++i) m.offered_suites.push_back(to_string(take_short(r)));
    uint8_t mutual = r.u8();
    if (mutual > 1) throw Error(Errc::protocol_parse_error, "bad mutual-auth flag");
    m.mutual_auth_request = mutual == 1;
    expect_done(r);
    return m;
}

namespace {
void server_hello_body(Bytes& body, const ServerHello& m, bool with_signature) {
    put_short(body, m.server_nonce);
    put_short(body, to_bytes(m.chosen_suite));
    put_bulk(body, m.server_chain);
    put_bulk(body, m.ephemeral_kem_public_key);
    if (with_signature) put_bulk(body, m.server_signature);
}
}  // namespace

Bytes encode_frame(const ServerHello& m) {
    Bytes body;
    server_hello_body(body, m, true);
    return frame(MsgType::server_hello, body);
}

Bytes server_hello_signed_part(const ServerHello& m) {
    Bytes body;
    server_hello_body(body, m, false);
    return body;
}

ServerHello decode_server_hello(ByteView data) {
    ByteReader r = open_frame(data, MsgType::server_hello);
    ServerHello m;
    m.server_nonce = take_short(r);
    expect_len(m.server_nonce, kNonceLen, "server nonce");
    m.chosen_suite = to_string(take_short(r));
    m.server_chain = take_bulk(r);
    m.ephemeral_kem_public_key = take_bulk(r);
    m.server_signature = take_bulk(r);
    expect_done(r);
    return m;
}

namespace {
void client_key_body(Bytes& body, const ClientKey& m, int fields) {
    put_bulk(body, m.kem_ciphertext);
    put_bulk(body, m.client_chain);
    if (fields >= 2) put_bulk(body, m.client_signature);
    if (fields >= 3) put_short(body, m.client_finished);
}
}  // namespace

Bytes encode_frame(const ClientKey& m) {
    Bytes body;
    client_key_body(body, m, 3);
    return frame(MsgType::client_key, body);
}

Bytes client_key_prefix_for_signature(const ClientKey& m) {
    Bytes body;
    client_key_body(body, m, 1);
    return body;
}

Bytes client_key_prefix_for_finished(const ClientKey& m) {
    Bytes body;
    client_key_body(body, m, 2);
    return body;
}

ClientKey decode_client_key(ByteView data) {
    ByteReader r = open_frame(data, MsgType::client_key);
    ClientKey m;
    m.kem_ciphertext = take_bulk(r);
    m.client_chain = take_bulk(r);
    m.client_signature = take_bulk(r);
    m.client_finished = take_short(r);
    expect_len(m.client_finished, kFinishedLen, "client finished");
    expect_done(r);
    return m;
}

Bytes encode_frame(const ServerFinished& m) {
    Bytes body;
    put_short(body, m.server_finished);
    return frame(MsgType::server_finished, body);
}

ServerFinished decode_server_finished(ByteView data) {
    ByteReader r = open_frame(data, MsgType::server_finished);
    ServerFinished m;
    m.server_finished = take_short(r);
    expect_len(m.server_finished, kFinishedLen, "server finished");
    expect_done(r);
    return m;
}

}  // namespace pqcside::hs
