#include "sfwt/crypto/keccak.hpp"

namespace sfwt::crypto {

namespace {

constexpr std::array<std::uint64_t, 24> round_constants{
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr std::array<int, 24> rotations{1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                        27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

constexpr std::array<int, 24> lanes{10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                    15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline std::uint64_t rotl(std::uint64_t x, int n) { return (x << n) | (x >> (64 - n)); }

void keccak_f1600(std::array<std::uint64_t, 25>& a) {
    for (auto rc : round_constants) {
        // theta
        std::uint64_t c[5];
        for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x) {
            std::uint64_t d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) a[y + x] ^= d;
        }
        // rho + pi
        std::uint64_t carry = a[1];
        for (int i = 0; i < 24; ++i) {
            std::uint64_t tmp = a[lanes[i]];
            a[lanes[i]] = rotl(carry, rotations[i]);
            carry = tmp;
        }
        // chi
        for (int y = 0; y < 25; y += 5) {
            std::uint64_t row[5];
            for (int x = 0; x < 5; ++x) row[x] = a[y + x];
            for (int x = 0; x < 5; ++x) a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
        // iota
        a[0] ^= rc;
    }
}

void absorb_block(std::array<std::uint64_t, 25>& state, const std::uint8_t* block, std::size_t rate) {
    for (std::size_t i = 0; i < rate / 8; ++i) {
        std::uint64_t lane = 0;
        for (int b = 7; b >= 0; --b) lane = (lane << 8) | block[i * 8 + b];
        state[i] ^= lane;
    }
    keccak_f1600(state);
}

}  // namespace

Keccak256& Keccak256::update(std::span<const std::uint8_t> data) {
    for (auto byte : data) {
        buffer_[buffered_++] = byte;
        if (buffered_ == rate) {
            absorb_block(state_, buffer_.data(), rate);
            buffered_ = 0;
        }
    }
    return *this;
}

Keccak256& Keccak256::update(std::string_view data) {
    return update(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Hash256 Keccak256::finish() {
    std::fill(buffer_.begin() + static_cast<std::ptrdiff_t>(buffered_), buffer_.end(), 0);
    buffer_[buffered_] |= 0x01;
    buffer_[rate - 1] |= 0x80;
    absorb_block(state_, buffer_.data(), rate);

    Hash256 out{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(state_[i / 8] >> (8 * (i % 8)));
    }
    state_.fill(0);
    buffered_ = 0;
    return out;
}

Hash256 keccak256(std::span<const std::uint8_t> data) { return Keccak256{}.update(data).finish(); }

}  // namespace sfwt::crypto
