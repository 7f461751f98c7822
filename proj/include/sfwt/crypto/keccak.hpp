#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sfwt::crypto {

using Hash256 = std::array<std::uint8_t, 32>;

/// Incremental Keccak-256 with the original 0x01 padding (the Ethereum variant, not
/// FIPS-202 SHA3-256).
class Keccak256 {
public:
    Keccak256& update(std::span<const std::uint8_t> data);
    Keccak256& update(std::string_view data);
    Hash256 finish();

private:
    static constexpr std::size_t rate = 136;

    std::array<std::uint64_t, 25> state_{};
    std::array<std::uint8_t, rate> buffer_{};
    std::size_t buffered_ = 0;
};

Hash256 keccak256(std::span<const std::uint8_t> data);

}  // namespace sfwt::crypto
