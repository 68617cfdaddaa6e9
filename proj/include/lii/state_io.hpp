// Plain-text state files.
//
//   dims: 2,2
//   kind: density
//   0.5+0i, 0, 0, 0.5
//   ...
//
// `kind: pure` is followed by a single line holding the amplitude vector.
// Complex entries are written `a+bi`, `a-bi`, `a` or `bi`. All whitespace is
// ignored, including inside entries.

#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "lii/state.hpp"

namespace lii {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using AnyState = std::variant<DensityMatrix, PureState>;

namespace io_detail {

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != '\v' && c != '\f') out.push_back(c);
    }
    return out;
}

// Reads a signed decimal float at s[pos]; from_chars rejects a leading '+'.
inline bool read_real(std::string_view s, std::size_t& pos, double& out) {
    std::size_t p = pos;
    double sign = 1.0;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
        if (s[p] == '-') sign = -1.0;
        ++p;
    }
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) return false;
    // A bare "i" / "-i" means unit magnitude.
    if (p < s.size() && s[p] == 'i') {
        out = sign;
        pos = p;
        return true;
    }
    const auto res = std::from_chars(s.data() + p, s.data() + s.size(), out);
    if (res.ec != std::errc{}) return false;
    out *= sign;
    pos = static_cast<std::size_t>(res.ptr - s.data());
    return true;
}

}  // namespace io_detail

/// Parses one complex entry such as "0.5-1e-3i".
inline cplx parse_complex(std::string_view text) {
    const std::string s = io_detail::strip_spaces(text);
    if (s.empty()) throw ParseError("empty complex entry");
    std::size_t pos = 0;
    double first = 0.0;
    if (!io_detail::read_real(s, pos, first)) throw ParseError("malformed complex entry '" + s + "'");
    if (pos == s.size()) return {first, 0.0};
    if (s[pos] == 'i' && pos + 1 == s.size()) return {0.0, first};
    if (s[pos] != '+' && s[pos] != '-') throw ParseError("malformed complex entry '" + s + "'");
    double second = 0.0;
    if (!io_detail::read_real(s, pos, second) || pos + 1 != s.size() || s[pos] != 'i') {
        throw ParseError("malformed complex entry '" + s + "'");
    }
    return {first, second};
}

inline std::vector<cplx> parse_complex_row(std::string_view line) {
    std::vector<cplx> row;
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t comma = line.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
        row.push_back(parse_complex(line.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return row;
}

/// Reads a state file. Invariant violations of the resulting state surface as
/// std::invalid_argument from the state constructors.
inline AnyState read_state(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        std::string compact = io_detail::strip_spaces(line);
        if (!compact.empty()) lines.push_back(std::move(compact));
    }
    if (lines.size() < 3) throw ParseError("state file needs a dims line, a kind line and data");

    auto header_value = [&](std::size_t i, std::string_view key) {
        const std::string& l = lines[i];
        if (l.rfind(std::string(key) + ":", 0) != 0) {
            throw ParseError("line " + std::to_string(i + 1) + ": expected '" + std::string(key) + ":'");
        }
        return l.substr(key.size() + 1);
    };

    Dims dims;
    {
        const std::string spec = header_value(0, "dims");
        std::size_t start = 0;
        while (start <= spec.size()) {
            const std::size_t comma = spec.find(',', start);
            const std::size_t end = comma == std::string::npos ? spec.size() : comma;
            std::size_t d = 0;
            const auto res = std::from_chars(spec.data() + start, spec.data() + end, d);
            if (res.ec != std::errc{} || res.ptr != spec.data() + end || d == 0) {
                throw ParseError("malformed dims entry in '" + spec + "'");
            }
            dims.push_back(d);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    const std::string kind = header_value(1, "kind");
    const std::size_t n = total_dim(dims);

    if (kind == "pure") {
        if (lines.size() != 3) throw ParseError("pure state expects exactly one amplitude line");
        auto amps = parse_complex_row(lines[2]);
        if (amps.size() != n) throw ParseError("amplitude count does not match dims");
        return PureState(std::move(amps), std::move(dims));
    }
    if (kind == "density") {
        if (lines.size() != n + 2) throw ParseError("density matrix expects " + std::to_string(n) + " rows");
        std::vector<cplx> entries;
        entries.reserve(n * n);
        for (std::size_t r = 0; r < n; ++r) {
            auto row = parse_complex_row(lines[r + 2]);
            if (row.size() != n) throw ParseError("row " + std::to_string(r + 1) + " has wrong length");
            entries.insert(entries.end(), row.begin(), row.end());
        }
        return DensityMatrix(ComplexMatrix(n, n, std::move(entries)), std::move(dims));
    }
    throw ParseError("kind must be 'density' or 'pure', got '" + kind + "'");
}

inline AnyState read_state(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_state(in);
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_real_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(cplx z) {
    std::string out = format_real_exact(z.real());
    const double im = z.imag();
    out += (std::signbit(im) ? "-" : "+");
    out += format_real_exact(std::abs(im));
    out += 'i';
    return out;
}

namespace io_detail {

inline void write_dims(std::ostream& out, const Dims& dims) {
    out << "dims: ";
    for (std::size_t k = 0; k < dims.size(); ++k) out << (k ? "," : "") << dims[k];
    out << '\n';
}

}  // namespace io_detail

inline void write_state(std::ostream& out, const DensityMatrix& rho) {
    io_detail::write_dims(out, rho.dims());
    out << "kind: density\n";
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) out << (c ? ", " : "") << format_complex(rho(r, c));
        out << '\n';
    }
}

inline void write_state(std::ostream& out, const PureState& psi) {
    io_detail::write_dims(out, psi.dims());
    out << "kind: pure\n";
    for (std::size_t i = 0; i < psi.dim(); ++i) out << (i ? ", " : "") << format_complex(psi[i]);
    out << '\n';
}

}  // namespace lii
