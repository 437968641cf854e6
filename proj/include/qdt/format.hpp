#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

namespace qdt {

/// Fixed 12-significant-digit rendering, trailing zeros kept ("%#.12g"
/// semantics), independent of the C locale.
inline std::string format_number(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (x == 0.0)
        return "0.00000000000";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 11);
    const std::string_view sci(buf, static_cast<std::size_t>(res.ptr - buf));
    const auto epos = sci.find('e');
    const int exponent = std::atoi(std::string(sci.substr(epos + 1)).c_str());
    if (exponent < -4 || exponent >= 12)
        return std::string(sci);
    res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 11 - exponent);
    return std::string(buf, res.ptr);
}

/// Shortest round-trip rendering, used where a value is echoed rather than
/// reported (query descriptions, serialized scenarios).
inline std::string format_shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace qdt
