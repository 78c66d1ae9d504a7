#pragma once

// Matrix file formats.  Text: a "rows cols" header line, then one line per
// row of whitespace-separated complex tokens (a, bi, a+bi, a-bi; bare i
// means 1i; decimal with optional exponent).  JSON: {"rows": m, "cols": n,
// "data": [[[re,im],...],...]}.  All doubles serialize shortest
// round-trip, so parse(serialize(M)) == M exactly in both formats.

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"

namespace numrange {

enum class MatrixFormat { text, json };

// Parse failure with a 1-based position; 0 means the coordinate is unknown
// (semantic errors inside JSON documents).
struct ParseError : std::runtime_error {
    std::size_t line;
    std::size_t col;
    ParseError(const std::string& msg, std::size_t line_, std::size_t col_)
        : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                             ": " + msg),
          line(line_),
          col(col_) {}
};

// Shortest round-trip decimal form.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Complex token in the text grammar; omits a zero imaginary part unless it
// carries a sign bit that equality-preserving round-trips would lose.
inline std::string format_complex(Complex z) {
    const double re = z.real(), im = z.imag();
    const bool im_plain_zero = im == 0.0 && !std::signbit(im);
    if (im_plain_zero) return format_double(re);
    const bool re_plain_zero = re == 0.0 && !std::signbit(re);
    std::string imtok = format_double(im) + "i";
    if (re_plain_zero) return imtok;
    if (imtok[0] != '-') return format_double(re) + "+" + imtok;
    return format_double(re) + imtok;
}

namespace detail {

inline double parse_double_token(std::string_view s, std::size_t line, std::size_t col) {
    std::string_view body = s;
    // from_chars rejects an explicit leading plus, which the a+bi form feeds
    // here for its imaginary half.
    if (body.size() >= 2 && body[0] == '+' && body[1] != '+' && body[1] != '-')
        body.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
    if (res.ec != std::errc() || res.ptr != body.data() + body.size())
        throw ParseError("malformed number '" + std::string(s) + "'", line, col);
    if (!std::isfinite(v))
        throw ParseError("non-finite value '" + std::string(s) + "'", line, col);
    return v;
}

// The imaginary half of a token, trailing 'i' already stripped: empty and
// "+" mean 1, "-" means -1.
inline double parse_imag_coeff(std::string_view s, std::size_t line, std::size_t col) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double_token(s, line, col);
}

inline Complex parse_complex_token(std::string_view tok, std::size_t line, std::size_t col) {
    if (tok.empty()) throw ParseError("empty token", line, col);
    // Split at the last sign that is neither leading nor an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        if ((tok[i] == '+' || tok[i] == '-') && tok[i - 1] != 'e' && tok[i - 1] != 'E')
            split = i;
    }
    if (split == std::string_view::npos) {
        if (tok.back() == 'i')
            return Complex(0.0, parse_imag_coeff(tok.substr(0, tok.size() - 1), line, col));
        return Complex(parse_double_token(tok, line, col), 0.0);
    }
    if (tok.back() != 'i')
        throw ParseError("malformed token '" + std::string(tok) +
                             "': two-part form must end in 'i'",
                         line, col);
    const double re = parse_double_token(tok.substr(0, split), line, col);
    const double im =
        parse_imag_coeff(tok.substr(split, tok.size() - split - 1), line, col + split);
    return Complex(re, im);
}

struct TextLine {
    std::string_view body;
    std::size_t number;  // 1-based
};

inline std::vector<TextLine> nonblank_lines(std::string_view content) {
    std::vector<TextLine> lines;
    std::size_t pos = 0, lineno = 1;
    while (pos <= content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        std::string_view body = content.substr(pos, end - pos);
        bool blank = true;
        for (char ch : body)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (!blank) lines.push_back({body, lineno});
        if (end == content.size()) break;
        pos = end + 1;
        ++lineno;
    }
    return lines;
}

struct Token {
    std::string_view text;
    std::size_t col;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view body) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        if (i >= body.size()) break;
        std::size_t j = i;
        while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
        toks.push_back({body.substr(i, j - i), i + 1});
        i = j;
    }
    return toks;
}

inline std::size_t parse_dim(std::string_view s, std::size_t line, std::size_t col) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("malformed dimension '" + std::string(s) + "'", line, col);
    return v;
}

inline ComplexMatrix parse_text_matrix(std::string_view content) {
    const std::vector<TextLine> lines = nonblank_lines(content);
    if (lines.empty()) throw ParseError("empty input, expected a 'rows cols' header", 1, 1);
    const std::vector<Token> header = tokenize(lines[0].body);
    if (header.size() != 2)
        throw ParseError("header must be 'rows cols', got " + std::to_string(header.size()) +
                             " tokens",
                         lines[0].number, 1);
    const std::size_t rows = parse_dim(header[0].text, lines[0].number, header[0].col);
    const std::size_t cols = parse_dim(header[1].text, lines[0].number, header[1].col);
    if (rows > 0 && cols > 0 && rows * cols > 100000000)
        throw ParseError("matrix too large: " + shape_str(rows, cols), lines[0].number, 1);
    // Zero-width rows serialize as blank lines, which tokenizing drops.
    const std::size_t data_lines = cols == 0 ? 0 : rows;
    if (lines.size() < 1 + data_lines) {
        throw ParseError("expected " + std::to_string(data_lines) + " data lines, got " +
                             std::to_string(lines.size() - 1),
                         lines.back().number, 1);
    }
    if (lines.size() > 1 + data_lines)
        throw ParseError("unexpected content after " + std::to_string(data_lines) +
                             " data lines",
                         lines[1 + data_lines].number, 1);
    ComplexMatrix m(rows, cols);
    if (cols == 0) return m;
    for (std::size_t i = 0; i < rows; ++i) {
        const TextLine& ln = lines[1 + i];
        const std::vector<Token> toks = tokenize(ln.body);
        if (toks.size() != cols)
            throw ParseError("row " + std::to_string(i) + ": expected " + std::to_string(cols) +
                                 " entries, got " + std::to_string(toks.size()),
                             ln.number, toks.size() > cols ? toks[cols].col : 1);
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = parse_complex_token(toks[j].text, ln.number, toks[j].col);
    }
    return m;
}

inline void json_position(std::string_view content, std::size_t byte, std::size_t& line,
                          std::size_t& col) {
    line = 1;
    col = 1;
    for (std::size_t i = 0; i < byte && i < content.size(); ++i) {
        if (content[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

inline ComplexMatrix parse_json_matrix(std::string_view content) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        json_position(content, e.byte > 0 ? e.byte - 1 : 0, line, col);
        throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
        !doc.contains("data"))
        throw ParseError("matrix object must have rows, cols, data", 0, 0);
    if (!doc["rows"].is_number_unsigned() || !doc["cols"].is_number_unsigned())
        throw ParseError("rows and cols must be nonnegative integers", 0, 0);
    const std::size_t rows = doc["rows"].get<std::size_t>();
    const std::size_t cols = doc["cols"].get<std::size_t>();
    if (rows > 0 && cols > 0 && rows * cols > 100000000)
        throw ParseError("matrix too large: " + shape_str(rows, cols), 0, 0);
    const nlohmann::json& data = doc["data"];
    if (!data.is_array() || data.size() != rows)
        throw ParseError("data length mismatch: expected " + std::to_string(rows) +
                             " rows, got " + std::to_string(data.is_array() ? data.size() : 0),
                         0, 0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const nlohmann::json& row = data[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError("data row " + std::to_string(i) + ": expected " +
                                 std::to_string(cols) + " entries, got " +
                                 std::to_string(row.is_array() ? row.size() : 0),
                             0, 0);
        for (std::size_t j = 0; j < cols; ++j) {
            const nlohmann::json& cell = row[j];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw ParseError("data entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") must be a [re, im] number pair",
                                 0, 0);
            m(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    try {
        m.validate_finite();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0, 0);
    }
    return m;
}

}  // namespace detail

inline ComplexMatrix parse_matrix(std::string_view content, MatrixFormat format) {
    if (content.empty()) throw ParseError("empty input", 1, 1);
    return format == MatrixFormat::text ? detail::parse_text_matrix(content)
                                        : detail::parse_json_matrix(content);
}

inline std::string serialize_matrix(const ComplexMatrix& m, MatrixFormat format) {
    if (format == MatrixFormat::text) {
        std::string out =
            std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j) out += ' ';
                out += format_complex(m(i, j));
            }
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    nlohmann::ordered_json data = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t jj = 0; jj < m.cols(); ++jj)
            row.push_back({m(i, jj).real(), m(i, jj).imag()});
        data.push_back(row);
    }
    j["data"] = data;
    return j.dump(2) + "\n";
}

}  // namespace numrange
