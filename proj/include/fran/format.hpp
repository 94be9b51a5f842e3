#pragma once

#include <charconv>
#include <string>

namespace fran {

// 12 significant digits, locale independent; shared by all tabular output.
inline std::string format_g12(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace fran
