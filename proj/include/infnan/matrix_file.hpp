// Plain-text linear-system files.
//
// Format (whitespace separated):
//   line 1:              n nrhs
//   lines 2 .. n+1:      n entries per line — the rows of A
//   lines n+2 .. 2n+1:   nrhs entries per line — the rows of B
//
// Entry tokens are decimal floating-point numbers; `inf`, `-inf`, and `nan`
// are accepted case-insensitively, and a leading `+` is allowed everywhere.
// Serialization uses shortest-round-trip rendering, so parse -> serialize ->
// parse is the identity on the stored values.
//
// Parse failures throw MatrixParseError carrying the 1-based line and column
// of the offending token.
#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace infnan {

struct MatrixParseError : std::runtime_error {
    MatrixParseError(std::string what_, int line_, int column_)
        : std::runtime_error(std::move(what_)), line(line_), column(column_) {}
    int line;
    int column;
};

// A is stored column-major n x n, B column-major n x nrhs (the layout the
// solver consumes), even though the file lists rows.
struct MatrixFileData {
    int n = 0;
    int nrhs = 0;
    std::vector<double> a;
    std::vector<double> b;
};

namespace detail {

struct FileToken {
    std::string_view text;
    int line, column;
};

inline std::vector<FileToken> tokenize_matrix_file(std::string_view text) {
    std::vector<FileToken> toks;
    int line = 1, column = 1;
    size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\n') {
            ++line;
            column = 1;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            ++column;
            ++i;
        } else {
            const int tok_line = line, tok_col = column;
            size_t j = i;
            while (j < text.size() &&
                   !std::isspace(static_cast<unsigned char>(text[j])))
                ++j;
            toks.push_back({text.substr(i, j - i), tok_line, tok_col});
            column += static_cast<int>(j - i);
            i = j;
        }
    }
    return toks;
}

inline double parse_value_token(const FileToken& t) {
    std::string_view s = t.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw MatrixParseError("invalid numeric token '" + std::string(t.text) +
                                   "'",
                               t.line, t.column);
    return v;
}

inline long parse_int_token(const FileToken& t, const char* what) {
    long v = 0;
    const auto* first = t.text.data();
    const auto* last = t.text.data() + t.text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || v < 0)
        throw MatrixParseError(std::string("invalid ") + what + " '" +
                                   std::string(t.text) + "'",
                               t.line, t.column);
    return v;
}

} // namespace detail

inline MatrixFileData parse_matrix_file(std::string_view text) {
    const auto toks = detail::tokenize_matrix_file(text);
    size_t pos = 0;
    auto need = [&](const char* what) -> const detail::FileToken& {
        if (pos >= toks.size()) {
            const int line = toks.empty() ? 1 : toks.back().line;
            const int col = toks.empty()
                                ? 1
                                : toks.back().column +
                                      static_cast<int>(toks.back().text.size());
            throw MatrixParseError(
                std::string("unexpected end of input, expected ") + what, line,
                col);
        }
        return toks[pos++];
    };

    MatrixFileData f;
    const long n = detail::parse_int_token(need("matrix order n"), "matrix order");
    const long nrhs =
        detail::parse_int_token(need("right-hand-side count nrhs"),
                                "right-hand-side count");
    if (n > 100000 || nrhs > 100000) {
        const auto& t = toks[pos - 1];
        throw MatrixParseError("dimension too large", t.line, t.column);
    }
    f.n = static_cast<int>(n);
    f.nrhs = static_cast<int>(nrhs);
    f.a.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    f.b.assign(static_cast<size_t>(n) * static_cast<size_t>(nrhs), 0.0);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            f.a[static_cast<size_t>(i + j * n)] =
                detail::parse_value_token(need("matrix entry"));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < nrhs; ++j)
            f.b[static_cast<size_t>(i + j * n)] =
                detail::parse_value_token(need("right-hand-side entry"));
    if (pos != toks.size()) {
        const auto& t = toks[pos];
        throw MatrixParseError("trailing content after the expected " +
                                   std::to_string(n) + "+" + std::to_string(n) +
                                   " rows",
                               t.line, t.column);
    }
    return f;
}

// Shortest-round-trip rendering; to_chars spells non-finite values as
// inf / -inf / nan, which the parser accepts back.
inline std::string format_value(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string serialize_matrix_file(const MatrixFileData& f) {
    std::ostringstream os;
    os << f.n << ' ' << f.nrhs << '\n';
    for (int i = 0; i < f.n; ++i) {
        for (int j = 0; j < f.n; ++j) {
            if (j) os << ' ';
            os << format_value(f.a[static_cast<size_t>(i + j * f.n)]);
        }
        os << '\n';
    }
    for (int i = 0; i < f.n; ++i) {
        for (int j = 0; j < f.nrhs; ++j) {
            if (j) os << ' ';
            os << format_value(f.b[static_cast<size_t>(i + j * f.n)]);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace infnan
