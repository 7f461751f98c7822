#include "sfwt/common/uint256.hpp"

#include <limits>

namespace sfwt {

Uint256 parse_uint256(std::string_view text) {
    if (text.empty() || text.size() > 78) {
        throw std::invalid_argument("not a 256-bit decimal integer: '" + std::string(text) + "'");
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
        }
    }
    try {
        return Uint256(std::string(text));
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("integer exceeds 256 bits: '" + std::string(text) + "'");
    }
}

std::string to_decimal(const Uint256& value) { return value.str(); }

std::uint64_t to_u64(const Uint256& value) {
    if (value > std::numeric_limits<std::uint64_t>::max()) {
        throw std::out_of_range("value does not fit in 64 bits: " + value.str());
    }
    return value.convert_to<std::uint64_t>();
}

}  // namespace sfwt
