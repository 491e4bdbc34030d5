#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace txplace::detail {

/// Formats a double with 17 significant digits (round-trip exact).
inline std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Formats with two decimals, the rendering used in report tables.
inline std::string real2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline double parse_real(const std::string& s, const std::string& what = "value") {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::runtime_error("cannot parse real value '" + s + "' for " + what);
    return v;
}

inline long long parse_int(const std::string& s, const std::string& what = "value") {
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw std::runtime_error("cannot parse integer '" + s + "' for " + what);
    return v;
}

}  // namespace txplace::detail
