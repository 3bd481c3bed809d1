#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/errors.hpp"

namespace hodgewalk {

using Edge = std::array<std::size_t, 2>;
using Triangle = std::array<std::size_t, 3>;

/// Oriented simplicial complex of dimension at most two.
///
/// Vertices are the dense ids 0..n0-1. Edges (i, j) have i < j, triangles (i, j, k) have
/// i < j < k, and both lists are sorted lexicographically; list position is the index used
/// by every matrix and vector downstream. The reference orientation of a simplex is the
/// ascending order of its vertex ids. `labels()[v]` is the original label of vertex v.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Builds a complex from already-canonical lists. Throws if the lists are not sorted,
    /// contain duplicates, reference vertices >= n0, or miss a face of some triangle.
    static SimplicialComplex from_canonical(std::size_t n0, std::vector<Edge> edges, std::vector<Triangle> triangles,
                                            std::vector<std::string> labels = {})
    {
        SimplicialComplex c;
        c.n0_ = n0;
        c.edges_ = std::move(edges);
        c.triangles_ = std::move(triangles);
        if (labels.empty()) {
            labels.reserve(n0);
            for (std::size_t v = 0; v < n0; ++v) labels.push_back(std::to_string(v));
        }
        if (labels.size() != n0) throw DimensionError("label map size differs from vertex count");
        c.labels_ = std::move(labels);
        c.validate();
        c.index_labels();
        return c;
    }

    std::size_t n0() const noexcept { return n0_; }
    std::size_t n1() const noexcept { return edges_.size(); }
    std::size_t n2() const noexcept { return triangles_.size(); }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    const Edge& edge(std::size_t e) const
    {
        check_edge(e);
        return edges_[e];
    }

    /// Index of the edge {a, b} (either order), if present.
    std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const
    {
        if (a > b) std::swap(a, b);
        const Edge key{a, b};
        const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
        if (it == edges_.end() || *it != key) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    std::size_t edge_index(std::size_t a, std::size_t b) const
    {
        if (auto e = find_edge(a, b)) return *e;
        throw IndexError("no edge {" + std::to_string(a) + ", " + std::to_string(b) + "}");
    }

    std::optional<std::size_t> find_triangle(Triangle t) const
    {
        std::sort(t.begin(), t.end());
        const auto it = std::lower_bound(triangles_.begin(), triangles_.end(), t);
        if (it == triangles_.end() || *it != t) return std::nullopt;
        return static_cast<std::size_t>(it - triangles_.begin());
    }

    std::optional<std::size_t> find_vertex(std::string_view label) const
    {
        const auto it = label_index_.find(std::string(label));
        if (it == label_index_.end()) return std::nullopt;
        return it->second;
    }

    /// Number of filled triangles containing edge e.
    std::size_t degree(std::size_t e) const
    {
        check_edge(e);
        return degree_[e];
    }
    const std::vector<std::size_t>& degrees() const noexcept { return degree_; }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.n0_ == b.n0_ && a.edges_ == b.edges_ && a.triangles_ == b.triangles_ && a.labels_ == b.labels_;
    }

private:
    void check_edge(std::size_t e) const
    {
        if (e >= edges_.size()) {
            throw IndexError("edge index " + std::to_string(e) + " out of range [0, " + std::to_string(edges_.size()) +
                             ")");
        }
    }

    void validate()
    {
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            const auto& e = edges_[k];
            if (e[0] == e[1]) throw DegenerateSimplex("edge with repeated vertex");
            if (e[0] > e[1] || e[1] >= n0_) throw Error("edge not canonical or vertex out of range");
            if (k > 0 && !(edges_[k - 1] < e)) throw Error("edge list not strictly sorted");
        }
        degree_.assign(edges_.size(), 0);
        for (std::size_t k = 0; k < triangles_.size(); ++k) {
            const auto& t = triangles_[k];
            if (t[0] == t[1] || t[1] == t[2]) throw DegenerateSimplex("triangle with repeated vertex");
            if (t[0] > t[1] || t[1] > t[2] || t[2] >= n0_) throw Error("triangle not canonical or vertex out of range");
            if (k > 0 && !(triangles_[k - 1] < t)) throw Error("triangle list not strictly sorted");
            for (const Edge face : {Edge{t[0], t[1]}, Edge{t[0], t[2]}, Edge{t[1], t[2]}}) {
                const auto e = find_edge(face[0], face[1]);
                if (!e) throw Error("closure violated: triangle face missing from edge list");
                ++degree_[*e];
            }
        }
    }

    void index_labels()
    {
        label_index_.clear();
        for (std::size_t v = 0; v < labels_.size(); ++v) label_index_.emplace(labels_[v], v);
    }

    std::size_t n0_ = 0;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> degree_;
    std::unordered_map<std::string, std::size_t> label_index_;
};

namespace detail {

template <typename Label>
std::string label_to_string(const Label& l)
{
    if constexpr (std::is_arithmetic_v<Label>) {
        return std::to_string(l);
    } else if constexpr (std::is_convertible_v<Label, std::string>) {
        return std::string(l);
    } else {
        std::ostringstream os;
        os << l;
        return os.str();
    }
}

}  // namespace detail

/// Accumulates simplices over arbitrary ordered labels and produces the canonical complex:
/// labels are sorted to assign ids, missing faces of triangles are added, duplicates removed.
template <typename Label = std::size_t>
class ComplexBuilder {
public:
    void add_vertex(const Label& v) { vertices_.push_back(v); }

    void add_edge(const Label& a, const Label& b)
    {
        if (a == b) throw DegenerateSimplex("edge {" + detail::label_to_string(a) + "} repeats a vertex");
        edges_.push_back({a, b});
    }

    void add_triangle(const Label& a, const Label& b, const Label& c)
    {
        if (a == b || b == c || a == c) {
            throw DegenerateSimplex("triangle {" + detail::label_to_string(a) + ", " + detail::label_to_string(b) +
                                    ", " + detail::label_to_string(c) + "} repeats a vertex");
        }
        triangles_.push_back({a, b, c});
    }

    SimplicialComplex build() const
    {
        std::vector<Label> labels = vertices_;
        for (const auto& [a, b] : edges_) {
            labels.push_back(a);
            labels.push_back(b);
        }
        for (const auto& t : triangles_) labels.insert(labels.end(), t.begin(), t.end());
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

        auto id = [&labels](const Label& l) {
            return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
        };

        std::vector<Triangle> tris;
        tris.reserve(triangles_.size());
        for (const auto& t : triangles_) {
            Triangle s{id(t[0]), id(t[1]), id(t[2])};
            std::sort(s.begin(), s.end());
            tris.push_back(s);
        }
        std::sort(tris.begin(), tris.end());
        tris.erase(std::unique(tris.begin(), tris.end()), tris.end());

        std::vector<Edge> edges;
        edges.reserve(edges_.size() + 3 * tris.size());
        for (const auto& [a, b] : edges_) {
            const std::size_t i = id(a);
            const std::size_t j = id(b);
            edges.push_back({std::min(i, j), std::max(i, j)});
        }
        for (const auto& t : tris) {
            edges.push_back({t[0], t[1]});
            edges.push_back({t[0], t[2]});
            edges.push_back({t[1], t[2]});
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

        std::vector<std::string> names;
        names.reserve(labels.size());
        for (const auto& l : labels) names.push_back(detail::label_to_string(l));
        return SimplicialComplex::from_canonical(labels.size(), std::move(edges), std::move(tris), std::move(names));
    }

private:
    std::vector<Label> vertices_;
    std::vector<std::pair<Label, Label>> edges_;
    std::vector<std::array<Label, 3>> triangles_;
};

/// Complex generated by the given edges and triangles (faces of triangles are implied).
template <typename Label>
SimplicialComplex from_simplices(const std::vector<std::pair<Label, Label>>& edges,
                                 const std::vector<std::array<Label, 3>>& triangles)
{
    ComplexBuilder<Label> b;
    for (const auto& [u, v] : edges) b.add_edge(u, v);
    for (const auto& t : triangles) b.add_triangle(t[0], t[1], t[2]);
    return b.build();
}

/// Triangles of a graph given on vertex ids 0..n-1, found by intersecting forward
/// adjacency lists under a (degree, id) ranking. Output is sorted and canonical.
inline std::vector<Triangle> enumerate_triangles(std::size_t n, const std::vector<Edge>& edges)
{
    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : edges) {
        ++deg[e[0]];
        ++deg[e[1]];
    }
    auto lower = [&deg](std::size_t a, std::size_t b) { return deg[a] != deg[b] ? deg[a] < deg[b] : a < b; };
    std::vector<std::vector<std::size_t>> out(n);
    for (const auto& e : edges) {
        if (lower(e[0], e[1])) {
            out[e[0]].push_back(e[1]);
        } else {
            out[e[1]].push_back(e[0]);
        }
    }
    for (auto& nb : out) std::sort(nb.begin(), nb.end());

    std::vector<Triangle> tris;
    std::vector<std::size_t> common;
    for (std::size_t u = 0; u < n; ++u) {
        for (const std::size_t v : out[u]) {
            common.clear();
            std::set_intersection(out[u].begin(), out[u].end(), out[v].begin(), out[v].end(),
                                  std::back_inserter(common));
            for (const std::size_t w : common) {
                Triangle t{u, v, w};
                std::sort(t.begin(), t.end());
                tris.push_back(t);
            }
        }
    }
    std::sort(tris.begin(), tris.end());
    return tris;
}

/// Clique complex of a simple graph: every 3-clique becomes a filled triangle.
template <typename Label>
SimplicialComplex clique_complex(const std::vector<std::pair<Label, Label>>& edge_list,
                                 const std::vector<Label>& extra_vertices = {})
{
    ComplexBuilder<Label> b;
    for (const auto& v : extra_vertices) b.add_vertex(v);
    for (const auto& [u, v] : edge_list) b.add_edge(u, v);
    SimplicialComplex skeleton = b.build();
    auto tris = enumerate_triangles(skeleton.n0(), skeleton.edges());
    return SimplicialComplex::from_canonical(skeleton.n0(), skeleton.edges(), std::move(tris), skeleton.labels());
}

/// Complex induced by a collection of vertex sets.
///
/// With `induce_subsets` every 2- and 3-element subset of every set becomes an edge or
/// triangle. Without it only sets of cardinality <= 3 contribute (as simplices together
/// with their faces) and larger sets are ignored.
template <typename Label>
SimplicialComplex from_set_collection(const std::vector<std::vector<Label>>& sets, bool induce_subsets = true)
{
    ComplexBuilder<Label> b;
    for (const auto& raw : sets) {
        std::vector<Label> s = raw;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (!induce_subsets && s.size() > 3) continue;
        for (const auto& v : s) b.add_vertex(v);
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                b.add_edge(s[i], s[j]);
                for (std::size_t k = j + 1; k < s.size(); ++k) b.add_triangle(s[i], s[j], s[k]);
            }
        }
    }
    return b.build();
}

struct BettiNumbers {
    std::size_t b0 = 0;
    std::size_t b1 = 0;
    std::size_t rank_b1 = 0;
    std::size_t rank_b2 = 0;
};

namespace detail {

/// Numerical rank with threshold 1e-10 * largest singular value.
inline std::size_t numerical_rank(const Eigen::MatrixXd& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double thresh = 1e-10 * s(0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > thresh) ++r;
    }
    return r;
}

}  // namespace detail

/// Betti numbers from dense boundary-matrix ranks: b0 = n0 - rank B1, b1 = n1 - rank B1 - rank B2.
/// Assembles its own dense matrices so it can serve as an oracle for kernel dimensions.
inline BettiNumbers betti_numbers(const SimplicialComplex& c)
{
    const auto n0 = static_cast<Eigen::Index>(c.n0());
    const auto n1 = static_cast<Eigen::Index>(c.n1());
    const auto n2 = static_cast<Eigen::Index>(c.n2());
    Eigen::MatrixXd b1 = Eigen::MatrixXd::Zero(n0, n1);
    for (Eigen::Index e = 0; e < n1; ++e) {
        const auto& [i, j] = c.edges()[static_cast<std::size_t>(e)];
        b1(static_cast<Eigen::Index>(i), e) = -1.0;
        b1(static_cast<Eigen::Index>(j), e) = 1.0;
    }
    Eigen::MatrixXd b2 = Eigen::MatrixXd::Zero(n1, n2);
    for (Eigen::Index t = 0; t < n2; ++t) {
        const auto& [i, j, k] = c.triangles()[static_cast<std::size_t>(t)];
        b2(static_cast<Eigen::Index>(c.edge_index(j, k)), t) = 1.0;
        b2(static_cast<Eigen::Index>(c.edge_index(i, k)), t) = -1.0;
        b2(static_cast<Eigen::Index>(c.edge_index(i, j)), t) = 1.0;
    }
    BettiNumbers b;
    b.rank_b1 = detail::numerical_rank(b1);
    b.rank_b2 = detail::numerical_rank(b2);
    b.b0 = c.n0() - b.rank_b1;
    b.b1 = c.n1() - b.rank_b1 - b.rank_b2;
    return b;
}

}  // namespace hodgewalk
