#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "dhstab/matrix.hpp"
#include "dhstab/textio.hpp"

namespace dhstab {

enum class MatrixFormat { matrix_market, csv };

namespace detail {

inline std::string lower(std::string s) {
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace detail

/// MatrixMarket array format, column-major. Real matrices write one value
/// per line, complex ones "re im".
inline std::string write_matrix_market(const Matrix& m) {
    std::ostringstream out;
    const bool cplx = m.mode() == Mode::cplx;
    out << "%%MatrixMarket matrix array " << (cplx ? "complex" : "real") << " general\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) {
            out << format_double(m(i, j).real());
            if (cplx)
                out << " " << format_double(m(i, j).imag());
            out << "\n";
        }
    return out.str();
}

inline Matrix read_matrix_market(const std::string& text) {
    // line scanner with explicit offsets for error positions
    std::size_t cursor = 0, line_pos = 0;
    std::string line;
    auto next_line = [&]() -> bool {
        if (cursor >= text.size())
            return false;
        line_pos = cursor;
        std::size_t end = text.find('\n', cursor);
        if (end == std::string::npos)
            end = text.size();
        line = text.substr(cursor, end - cursor);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        cursor = end + 1;
        return true;
    };
    if (!next_line())
        throw ParseError("MatrixMarket: empty input", 0);
    std::istringstream hdr(line);
    std::string banner, object, fmt, field, symmetry;
    hdr >> banner >> object >> fmt >> field >> symmetry;
    if (detail::lower(banner) != "%%matrixmarket")
        throw ParseError("MatrixMarket: missing %%MatrixMarket banner", 0);
    if (detail::lower(object) != "matrix" || detail::lower(fmt) != "array")
        throw ParseError("MatrixMarket: only 'matrix array' supported", 0);
    const std::string f = detail::lower(field);
    if (f != "real" && f != "complex" && f != "integer")
        throw ParseError("MatrixMarket: unsupported field '" + field + "'", 0);
    if (detail::lower(symmetry) != "general")
        throw ParseError("MatrixMarket: only 'general' symmetry supported", 0);
    const bool cplx = f == "complex";

    // skip comments, read size line
    do {
        if (!next_line())
            throw ParseError("MatrixMarket: missing size line", text.size());
    } while (line.empty() || line[0] == '%');
    std::istringstream size_line(line);
    long rows = -1, cols = -1;
    size_line >> rows >> cols;
    if (rows < 0 || cols < 0 || size_line.fail())
        throw ParseError("MatrixMarket: bad size line '" + line + "'", line_pos);

    Matrix m = Matrix::zero(static_cast<int>(rows), static_cast<int>(cols),
                            cplx ? Mode::cplx : Mode::real);
    // remaining tokens, column-major
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(rows) * cols * (cplx ? 2 : 1));
    while (next_line()) {
        if (line.empty() || line[0] == '%')
            continue;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok)
            vals.push_back(parse_double_token(tok, line_pos));
    }
    const std::size_t expect = static_cast<std::size_t>(rows) * cols * (cplx ? 2 : 1);
    if (vals.size() != expect)
        throw ParseError("MatrixMarket: expected " + std::to_string(expect) +
                             " numeric entries, found " + std::to_string(vals.size()),
                         text.size());
    std::size_t k = 0;
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) {
            if (cplx) {
                m(i, j) = cdouble(vals[k], vals[k + 1]);
                k += 2;
            } else {
                m(i, j) = vals[k++];
            }
        }
    return m;
}

/// Comma-separated rows; real matrices only.
inline std::string write_csv(const Matrix& m) {
    if (m.mode() != Mode::real)
        throw ModeError("write_csv: complex matrices need MatrixMarket format");
    std::ostringstream out;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j)
                out << ",";
            out << format_double(m(i, j).real());
        }
        out << "\n";
    }
    return out.str();
}

inline Matrix read_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string::npos)
            line_end = text.size();
        std::string line = text.substr(line_start, line_end - line_start);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                blank = false;
        if (!blank && line[0] != '#') {
            std::vector<double> row;
            std::size_t field_start = 0;
            while (true) {
                std::size_t comma = line.find(',', field_start);
                std::string tok = line.substr(field_start, comma == std::string::npos
                                                               ? std::string::npos
                                                               : comma - field_start);
                // trim
                while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
                    tok.erase(tok.begin());
                while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
                    tok.pop_back();
                row.push_back(parse_double_token(tok, line_start + field_start));
                if (comma == std::string::npos)
                    break;
                field_start = comma + 1;
            }
            if (!rows.empty() && row.size() != rows.front().size())
                throw ParseError("csv: ragged row (" + std::to_string(row.size()) + " vs " +
                                     std::to_string(rows.front().size()) + " fields)",
                                 line_start);
            rows.push_back(std::move(row));
        }
        if (line_end == text.size())
            break;
        line_start = line_end + 1;
    }
    if (rows.empty())
        throw ParseError("csv: no data rows", 0);
    Matrix m = Matrix::zero(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()),
                            Mode::real);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

/// Sniffs the format from the content: a %%MatrixMarket banner wins, else CSV.
inline Matrix read_matrix_text(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    if (text.compare(i, 2, "%%") == 0)
        return read_matrix_market(text);
    return read_csv(text);
}

inline Matrix read_matrix_file(const std::string& path) {
    return read_matrix_text(read_text_file(path));
}

/// Format by extension: .csv writes CSV (real only), everything else
/// MatrixMarket.
inline void write_matrix_file(const std::string& path, const Matrix& m) {
    const bool csv = path.size() >= 4 && detail::lower(path.substr(path.size() - 4)) == ".csv";
    write_text_file(path, csv ? write_csv(m) : write_matrix_market(m));
}

} // namespace dhstab
