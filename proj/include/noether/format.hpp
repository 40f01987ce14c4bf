#pragma once

#include <charconv>
#include <string>

namespace noether {

/// Shortest text that parses back to the same double.
inline std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

}  // namespace noether
