#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace meshplot {

// Shortest decimal string that round-trips to the same double.
// NaN prints as "nan"; negative zero prints as "0".
inline std::string format_shortest(double value) {
    if (std::isnan(value)) return "nan";
    if (value == 0.0) return "0";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

// Parses an entire token as a double. Accepts "nan" (any case); rejects
// partial matches, infinities and out-of-range values.
inline std::optional<double> parse_number(std::string_view token) {
    if (token.empty()) return std::nullopt;
    double value = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) return std::nullopt;
    if (!std::isfinite(value) && !std::isnan(value)) return std::nullopt;
    return value;
}

}  // namespace meshplot
