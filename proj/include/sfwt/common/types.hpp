#pragma once

#include "sfwt/common/hex.hpp"
#include "sfwt/common/uint256.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace sfwt {

/// 20-byte account identifier, rendered as 0x + 40 lowercase hex digits.
class Address {
public:
    static constexpr std::size_t size = 20;

    Address() = default;
    explicit Address(const std::array<std::uint8_t, size>& bytes) : bytes_(bytes) {}

    /// Case-insensitive; requires the 0x prefix and exactly 40 hex digits.
    static Address from_hex(std::string_view text);

    std::string to_hex() const;
    const std::array<std::uint8_t, size>& bytes() const { return bytes_; }
    bool is_zero() const;

    auto operator<=>(const Address&) const = default;

private:
    std::array<std::uint8_t, size> bytes_{};
};

using Amount = Uint256;
using TimeSec = std::uint64_t;

/// ERC1155/ERC721 token identifier (full 256-bit range).
struct TokenId {
    Uint256 value;

    TokenId() = default;
    explicit TokenId(Uint256 v) : value(std::move(v)) {}
    explicit TokenId(std::uint64_t v) : value(v) {}

    static TokenId parse(std::string_view decimal) { return TokenId{parse_uint256(decimal)}; }
    std::string to_string() const { return to_decimal(value); }

    friend bool operator==(const TokenId& a, const TokenId& b) { return a.value == b.value; }
    friend bool operator<(const TokenId& a, const TokenId& b) { return a.value < b.value; }
};

}  // namespace sfwt
