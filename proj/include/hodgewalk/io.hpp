#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/errors.hpp"
#include "hodgewalk/sparse.hpp"

namespace hodgewalk {

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t j = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > j) out.push_back(s.substr(j, i - j));
    }
    return out;
}

inline bool parse_size(std::string_view s, std::size_t& out)
{
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && p == end;
}

inline bool parse_double(std::string_view s, double& out)
{
    if (s.empty()) return false;
    // std::from_chars for double is available in libstdc++ 11.
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && p == end;
}

}  // namespace detail

/// Writes the line-oriented complex format: `n0 <int>`, then `e i j` and `t i j k` lines.
inline void write_complex(std::ostream& os, const SimplicialComplex& c)
{
    os << "n0 " << c.n0() << '\n';
    for (const auto& [i, j] : c.edges()) os << "e " << i << ' ' << j << '\n';
    for (const auto& [i, j, k] : c.triangles()) os << "t " << i << ' ' << j << ' ' << k << '\n';
}

/// Reads the complex format. Blank lines and `#` comments are ignored; simplices may be
/// listed in any order and missing triangle faces are completed.
inline SimplicialComplex read_complex(std::istream& is)
{
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::size_t n0 = 0;
    ComplexBuilder<std::size_t> b;

    auto vertex = [&](std::string_view tok) {
        std::size_t v = 0;
        if (!detail::parse_size(tok, v)) throw ParseError("bad vertex id '" + std::string(tok) + "'", lineno);
        if (v >= n0) throw ParseError("vertex " + std::to_string(v) + " >= n0", lineno);
        return v;
    };

    while (std::getline(is, line)) {
        ++lineno;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        const auto tok = detail::split_ws(s);
        if (tok.empty()) continue;
        if (!have_header) {
            if (tok.size() != 2 || tok[0] != "n0" || !detail::parse_size(tok[1], n0)) {
                throw ParseError("expected header 'n0 <int>'", lineno);
            }
            have_header = true;
            for (std::size_t v = 0; v < n0; ++v) b.add_vertex(v);
            continue;
        }
        try {
            if (tok[0] == "e" && tok.size() == 3) {
                b.add_edge(vertex(tok[1]), vertex(tok[2]));
            } else if (tok[0] == "t" && tok.size() == 4) {
                b.add_triangle(vertex(tok[1]), vertex(tok[2]), vertex(tok[3]));
            } else {
                throw ParseError("unrecognized record", lineno);
            }
        } catch (const DegenerateSimplex& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!have_header) {
        if (lineno == 0) return SimplicialComplex::from_canonical(0, {}, {});
        throw ParseError("missing header 'n0 <int>'", lineno);
    }
    return b.build();
}

inline std::string to_string(const SimplicialComplex& c)
{
    std::ostringstream os;
    write_complex(os, c);
    return os.str();
}

/// MatrixMarket coordinate dump (1-based indices, general real).
template <typename T>
void write_matrix_market(std::ostream& os, const BasicSparse<T>& a)
{
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    const auto old = os.precision(17);
    for (const auto& t : a.triplets()) os << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
    os.precision(old);
}

}  // namespace hodgewalk
