#pragma once

#include <cstdint>

#include "pqcside/bytes.hpp"

namespace pqcside {

// One direction pair of an established tunnel. AEAD is AES-256-GCM with a
// 96-bit nonce formed by the record sequence number left-padded with zeros
// and empty associated data. Wire format per record: u32 big-endian
// ciphertext length, then ciphertext (plaintext + 16-byte tag).
//
// Any authentication failure closes the channel permanently, as does
// sequence-counter exhaustion.
class RecordChannel {
  public:
    static constexpr size_t kMaxPlaintext = 16384;
    static constexpr size_t kTagLen = 16;

    RecordChannel(ByteView send_key, ByteView recv_key, uint64_t initial_send_seq = 0,
                  uint64_t initial_recv_seq = 0);

    // Returns header + ciphertext, ready for the wire.
    // Throws Error{oversize} beyond kMaxPlaintext, Error{channel_closed}.
    Bytes seal(ByteView plaintext);

    // Takes one record's ciphertext (without the length header).
    // Throws Error{auth_failure} on tamper/replay/reorder (closing the
    // channel) and Error{channel_closed} afterwards.
    Bytes open(ByteView ciphertext);

    bool is_open() const { return open_; }
    uint64_t send_seq() const { return send_seq_; }
    uint64_t recv_seq() const { return recv_seq_; }

  private:
    Bytes send_key_;
    Bytes recv_key_;
    uint64_t send_seq_;
    uint64_t recv_seq_;
    bool open_ = true;
};

}  // namespace pqcside
