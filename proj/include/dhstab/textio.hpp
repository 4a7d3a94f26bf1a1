#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dhstab/errors.hpp"

namespace dhstab {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("read error on '" + path + "'");
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("write error on '" + path + "'");
}

/// Strict full-token number parse; `pos` seeds the error position.
inline double parse_double_token(const std::string& tok, std::size_t pos) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("expected a number, got '" + tok + "'", pos);
    return v;
}

/// Shortest decimal form that round-trips a double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer a shorter representation when it parses back identically
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v)
            return probe;
    }
    return buf;
}

} // namespace dhstab
