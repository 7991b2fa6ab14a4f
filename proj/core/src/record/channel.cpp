#include "pqcside/record/channel.hpp"

#include <openssl/evp.h>

#include <memory>

#include "pqcside/error.hpp"

namespace pqcside {

namespace {

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

std::array<uint8_t, 12> seq_nonce(uint64_t seq) {
    std::array<uint8_t, 12> nonce{};
    for (int i = 0; i < 8; ++i) nonce[11 - i] = uint8_t(seq >> (8 * i));
    return nonce;
}

}  // namespace

RecordChannel::RecordChannel(ByteView send_key, ByteView recv_key, uint64_t initial_send_seq,
                             uint64_t initial_recv_seq)
    : send_key_(send_key.begin(), send_key.end()),
      recv_key_(recv_key.begin(), recv_key.end()),
      send_seq_(initial_send_seq),
      recv_seq_(initial_recv_seq) {
    if (send_key_.size() != 32 || recv_key_.size() != 32) {
        throw Error(Errc::malformed_input, "record keys must be 32 bytes");
    }
}

Bytes RecordChannel::seal(ByteView plaintext) {
    if (!open_) throw Error(Errc::channel_closed, "seal on closed channel");
    if (plaintext.size() > kMaxPlaintext) {
        throw Error(Errc::oversize, "plaintext exceeds record limit");
    }
    if (send_seq_ == UINT64_MAX) {
        open_ = false;
        throw Error(Errc::channel_closed, "send sequence exhausted");
    }

    auto nonce = seq_nonce(send_seq_);
    CipherCtx ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    Bytes ct(plaintext.size() + kTagLen);
    int len = 0;
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, send_key_.data(),
                                   nonce.data()) != 1 ||
        (plaintext.size() > 0 &&
         EVP_EncryptUpdate(ctx.get(), ct.data(), &len, plaintext.data(),
                           int(plaintext.size())) != 1)) {
        throw Error(Errc::io_failure, "AEAD seal failed");
    }
    int fin_len = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), ct.data() + len, &fin_len) != 1 ||
        EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagLen,
                            ct.data() + plaintext.size()) != 1) {
        throw Error(Errc::io_failure, "AEAD seal failed");
    }
    ++send_seq_;

    Bytes record;
    record.reserve(4 + ct.size());
    put_u32_be(record, uint32_t(ct.size()));
    record.insert(record.end(), ct.begin(), ct.end());
    return record;
}

Bytes RecordChannel::open(ByteView ciphertext) {
    if (!open_) throw Error(Errc::channel_closed, "open on closed channel");
    if (ciphertext.size() < kTagLen || ciphertext.size() > kMaxPlaintext + kTagLen) {
        open_ = false;
        throw Error(Errc::auth_failure, "record size out of range");
    }
    if (recv_seq_ == UINT64_MAX) {
        open_ = false;
        throw Error(Errc::channel_closed, "receive sequence exhausted");
    }

    auto nonce = seq_nonce(recv_seq_);
    size_t pt_len = ciphertext.size() - kTagLen;
    Bytes pt(pt_len);
    Bytes tag(ciphertext.end() - kTagLen, ciphertext.end());
    CipherCtx ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    int len = 0;
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, recv_key_.data(),
                                   nonce.data()) != 1 ||
        (pt_len > 0 &&
         EVP_DecryptUpdate(ctx.get(), pt.data(), &len, ciphertext.data(), int(pt_len)) != 1) ||
        EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagLen, tag.data()) != 1) {
        open_ = false;
        throw Error(Errc::auth_failure, "AEAD open failed");
    }
    int fin_len = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), pt.data() + len, &fin_len) != 1) {
        open_ = false;
        throw Error(Errc::auth_failure, "record authentication failed");
    }
    ++recv_seq_;
    pt.resize(size_t(len) + size_t(fin_len));
    return pt;
}

}  // namespace pqcside
