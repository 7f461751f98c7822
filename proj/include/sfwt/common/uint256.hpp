#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sfwt {

/// Unsigned 256-bit integer. Overflow and underflow throw std::overflow_error /
/// std::range_error instead of wrapping.
using Uint256 = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<256, 256, boost::multiprecision::unsigned_magnitude,
                                           boost::multiprecision::checked, void>>;

/// Parses a non-empty string of ASCII decimal digits. Rejects signs, hex, whitespace.
Uint256 parse_uint256(std::string_view text);

std::string to_decimal(const Uint256& value);

/// Narrowing that throws std::out_of_range when the value does not fit.
std::uint64_t to_u64(const Uint256& value);

}  // namespace sfwt
