#pragma once

#include "halfplane/error.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace halfplane {

/// Shortest decimal text that reads back to the same double; locale independent.
inline std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

/// Inverse of format_number.
inline double parse_number(const std::string& s) {
    if (s == "nan") {
        return std::nan("");
    }
    if (s == "inf") {
        return HUGE_VAL;
    }
    if (s == "-inf") {
        return -HUGE_VAL;
    }
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        throw Error(ErrorKind::InvalidArgument, "not a number: '" + s + "'");
    }
    return v;
}

}  // namespace halfplane
