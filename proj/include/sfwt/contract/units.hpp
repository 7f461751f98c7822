#pragma once

#include "sfwt/common/types.hpp"

#include <string>
#include <string_view>

namespace sfwt::contract {

/// "86400", "90s", "30m", "2h", "1day", "3days", "1d", "1w". Throws std::invalid_argument.
TimeSec parse_duration(std::string_view text);

/// "1024", "512B", "10KB", "10MB", "10GB", "1TB" using decimal multiples (10GB = 10*10^9 bytes).
Uint256 parse_data_size(std::string_view text);

/// "1day", "2h 5m", "45s".
std::string format_duration(TimeSec seconds);
/// "10GB", "1.5GB", "512B".
std::string format_data_size(const Uint256& bytes);

}  // namespace sfwt::contract
