#include "sfwt/contract/units.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace sfwt::contract {

namespace {

std::pair<std::string_view, std::string> split_number(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == 0) throw std::invalid_argument("expected a number: '" + std::string(text) + "'");
    std::string unit(text.substr(i));
    unit.erase(std::remove_if(unit.begin(), unit.end(), [](unsigned char c) { return std::isspace(c); }),
               unit.end());
    std::transform(unit.begin(), unit.end(), unit.begin(), [](unsigned char c) { return std::tolower(c); });
    return {text.substr(0, i), unit};
}

}  // namespace

TimeSec parse_duration(std::string_view text) {
    auto [digits, unit] = split_number(text);
    TimeSec factor;
    if (unit.empty() || unit == "s" || unit == "sec" || unit == "secs") {
        factor = 1;
    } else if (unit == "m" || unit == "min" || unit == "mins") {
        factor = 60;
    } else if (unit == "h" || unit == "hour" || unit == "hours") {
        factor = 3600;
    } else if (unit == "d" || unit == "day" || unit == "days") {
        factor = 86400;
    } else if (unit == "w" || unit == "week" || unit == "weeks") {
        factor = 7 * 86400;
    } else {
        throw std::invalid_argument("unknown duration unit '" + unit + "'");
    }
    auto value = parse_uint256(digits) * factor;
    try {
        return to_u64(value);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("duration too large: '" + std::string(text) + "'");
    }
}

Uint256 parse_data_size(std::string_view text) {
    auto [digits, unit] = split_number(text);
    Uint256 factor;
    if (unit.empty() || unit == "b") {
        factor = 1;
    } else if (unit == "kb") {
        factor = 1000;
    } else if (unit == "mb") {
        factor = 1000000;
    } else if (unit == "gb") {
        factor = 1000000000;
    } else if (unit == "tb") {
        factor = Uint256(1000000000) * 1000;
    } else {
        throw std::invalid_argument("unknown data unit '" + unit + "'");
    }
    try {
        return parse_uint256(digits) * factor;
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("data size too large: '" + std::string(text) + "'");
    }
}

std::string format_duration(TimeSec seconds) {
    if (seconds == 0) return "0s";
    if (seconds % 86400 == 0) return std::to_string(seconds / 86400) + "day";
    std::string out;
    auto part = [&](TimeSec unit, const char* suffix) {
        if (seconds >= unit) {
            if (!out.empty()) out += ' ';
            out += std::to_string(seconds / unit) + suffix;
            seconds %= unit;
        }
    };
    part(86400, "d");
    part(3600, "h");
    part(60, "m");
    part(1, "s");
    return out;
}

std::string format_data_size(const Uint256& bytes) {
    struct Unit {
        std::uint64_t factor;
        const char* suffix;
    };
    static constexpr Unit units[] = {
        {1000000000000ULL, "TB"}, {1000000000ULL, "GB"}, {1000000ULL, "MB"}, {1000ULL, "KB"}};
    for (const auto& u : units) {
        if (bytes >= u.factor) {
            Uint256 whole = bytes / u.factor;
            Uint256 tenths = (bytes % u.factor) * 10 / u.factor;
            return to_decimal(whole) + (tenths.is_zero() ? "" : "." + to_decimal(tenths)) + u.suffix;
        }
    }
    return to_decimal(bytes) + "B";
}

}  // namespace sfwt::contract
