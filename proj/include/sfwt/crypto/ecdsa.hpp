#pragma once

#include "sfwt/common/types.hpp"
#include "sfwt/crypto/keccak.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sfwt::crypto {

/// ECDSA over secp256k1 with Ethereum-style addresses and public-key recovery.
///
/// Signed message convention: digest = keccak256(sessionId bytes), no prefix.
/// Wire forms: session id 0x + 64 hex, signature 0x + 130 hex (r || s || v, v in {0,1}),
/// address 0x + 40 hex.

class CryptoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by recover_signer for malformed or non-canonical signatures. Recovery
/// never silently yields an address for those inputs.
class SignatureError : public CryptoError {
public:
    using CryptoError::CryptoError;
};

using SecretKey = std::array<std::uint8_t, 32>;
/// Uncompressed point x || y without the 0x04 prefix.
using PublicKey = std::array<std::uint8_t, 64>;

struct KeyPair {
    SecretKey secret{};
    PublicKey pub{};
};

struct SessionId {
    std::array<std::uint8_t, 32> bytes{};

    std::string to_hex() const { return sfwt::to_hex(bytes); }
    static SessionId from_hex(std::string_view text);
    bool operator==(const SessionId&) const = default;
};

struct Signature {
    std::array<std::uint8_t, 32> r{};
    std::array<std::uint8_t, 32> s{};
    std::uint8_t v = 0;

    std::array<std::uint8_t, 65> to_bytes() const;
    static Signature from_bytes(std::span<const std::uint8_t> bytes);
    std::string to_hex() const;
    static Signature from_hex(std::string_view text);
    bool operator==(const Signature&) const = default;
};

/// Seeded generation is deterministic: keccak256("sfwt/keygen" || seed_be64 || counter_be32)
/// is rejection-sampled into [1, n-1]. Without a seed the OpenSSL CSPRNG is used.
KeyPair generate_keypair(std::optional<std::uint64_t> seed = std::nullopt);

/// Throws CryptoError when the scalar is zero or not below the curve order.
PublicKey public_key_of(const SecretKey& secret);

/// last 20 bytes of keccak256(pk). Throws CryptoError if pk is not on the curve.
Address address_of(const PublicKey& pub);

Hash256 session_digest(const SessionId& session);

/// RFC 6979 (HMAC-SHA256) deterministic nonce, low-s normalised, v chosen for recovery.
Signature sign_session(const SessionId& session, const SecretKey& secret);

/// Throws SignatureError on out-of-range r/s, high s, bad v, or a failed recovery.
PublicKey recover_public_key(const SessionId& session, const Signature& sig);
Address recover_signer(const SessionId& session, const Signature& sig);

bool is_low_s(const Signature& sig);

}  // namespace sfwt::crypto
