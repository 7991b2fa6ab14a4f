#pragma once

#include <string>
#include <vector>

#include "pqcside/bytes.hpp"

namespace pqcside::hs {

// Wire frames: one byte of message type (1..4), three bytes of big-endian
// body length, then the body. Variable-length fields inside bodies carry
// their own length prefixes (u16 for short fields, u32 for bulk fields).

enum class MsgType : uint8_t {
    client_hello = 1,
    server_hello = 2,
    client_key = 3,
    server_finished = 4,
};

inline constexpr uint8_t kProtocolVersion = 1;
inline constexpr size_t kNonceLen = 32;
inline constexpr size_t kFinishedLen = 32;
inline constexpr size_t kMaxFrameBody = (1u << 24) - 1;

struct ClientHello {
    uint8_t version = kProtocolVersion;
    Bytes client_nonce;  // 32 bytes
    std::vector<std::string> offered_suites;
    bool mutual_auth_request = false;
};

struct ServerHello {
    Bytes server_nonce;  // 32 bytes
    std::string chosen_suite;
    Bytes server_chain;  // encoded certificate chain
    Bytes ephemeral_kem_public_key;
    Bytes server_signature;
};

struct ClientKey {
    Bytes kem_ciphertext;
    Bytes client_chain;      // empty unless mutual authentication
    Bytes client_signature;  // empty unless mutual authentication
    Bytes client_finished;   // 32 bytes
};

struct ServerFinished {
    Bytes server_finished;  // 32 bytes
};

Bytes encode_frame(const ClientHello& m);
Bytes encode_frame(const ServerHello& m);
Bytes encode_frame(const ClientKey& m);
Bytes encode_frame(const ServerFinished& m);

// Throws Error{protocol_parse_error} on anything but one whole well-formed
// frame of the requested type: wrong type byte, wrong version, length
// mismatch, or trailing bytes.
ClientHello decode_client_hello(ByteView frame);
ServerHello decode_server_hello(ByteView frame);
ClientKey decode_client_key(ByteView frame);
ServerFinished decode_server_finished(ByteView frame);

MsgType frame_type(ByteView frame);  // throws on empty input

// Body bytes of a ServerHello re-encoded with an empty signature field;
// the server signature covers the hash of ClientHello || this.
Bytes server_hello_signed_part(const ServerHello& m);

// ClientKey body fields up to but excluding a trailing field, used for the
// client signature (excludes signature + finished) and the finished MAC
// (excludes finished only).
Bytes client_key_prefix_for_signature(const ClientKey& m);
Bytes client_key_prefix_for_finished(const ClientKey& m);

}  // namespace pqcside::hs
