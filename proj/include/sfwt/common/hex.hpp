#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfwt {

using Bytes = std::vector<std::uint8_t>;

/// Lowercase hex, "0x" prefixed.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Accepts an optional 0x/0X prefix and either case. Throws std::invalid_argument on
/// odd length or non-hex characters.
Bytes from_hex(std::string_view text);

template <std::size_t N>
std::array<std::uint8_t, N> from_hex_fixed(std::string_view text) {
    auto bytes = from_hex(text);
    if (bytes.size() != N) {
        throw std::invalid_argument("expected " + std::to_string(N) + " bytes of hex, got " +
                                    std::to_string(bytes.size()));
    }
    std::array<std::uint8_t, N> out{};
    std::copy(bytes.begin(), bytes.end(), out.begin());
    return out;
}

}  // namespace sfwt
