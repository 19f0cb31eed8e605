#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tprs {

/// Shortest round-trip decimal form of a double ("inf" for +infinity),
/// identical across runs for identical values.
inline std::string format_double(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::invalid_argument("not a number: " + std::string(text));
    return v;
}

inline std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::invalid_argument("not an unsigned integer: " + std::string(text));
    return v;
}

}  // namespace tprs
