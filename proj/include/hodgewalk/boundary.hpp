#pragma once

#include <cstddef>
#include <vector>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/sparse.hpp"

namespace hodgewalk {

/// Node-edge incidence matrix (n0 x n1): column (i, j) has -1 at row i and +1 at row j.
template <typename T = double>
BasicSparse<T> boundary_b1(const SimplicialComplex& c)
{
    std::vector<Triplet<T>> t;
    t.reserve(2 * c.n1());
    for (std::size_t e = 0; e < c.n1(); ++e) {
        const auto& [i, j] = c.edges()[e];
        t.push_back({i, e, T{-1}});
        t.push_back({j, e, T{1}});
    }
    return BasicSparse<T>(c.n0(), c.n1(), std::move(t));
}

/// Edge-triangle incidence matrix (n1 x n2): column (i, j, k) has +1 at (j, k), -1 at (i, k)
/// and +1 at (i, j).
template <typename T = double>
BasicSparse<T> boundary_b2(const SimplicialComplex& c)
{
    std::vector<Triplet<T>> t;
    t.reserve(3 * c.n2());
    for (std::size_t f = 0; f < c.n2(); ++f) {
        const auto& [i, j, k] = c.triangles()[f];
        t.push_back({c.edge_index(j, k), f, T{1}});
        t.push_back({c.edge_index(i, k), f, T{-1}});
        t.push_back({c.edge_index(i, j), f, T{1}});
    }
    return BasicSparse<T>(c.n1(), c.n2(), std::move(t));
}

inline SparseOperator build_b1(const SimplicialComplex& c) { return boundary_b1<double>(c); }
inline SparseOperator build_b2(const SimplicialComplex& c) { return boundary_b2<double>(c); }

/// Diagonal weights of the normalized Hodge 1-Laplacian and of its stochastic lifting.
/// T must be a field (double or Rational); d3 is the scalar 1/3.
template <typename T = double>
struct DegreeMatrices {
    std::vector<T> d1;      // n0: 2 |B1| d2
    std::vector<T> d2;      // n1: max(deg(e), 1)
    T d3{};                 // 1/3
    std::vector<T> d4_hat;  // 2 n1: 1 if deg(e) = 0 else 3 deg(e)
    std::vector<T> d5_hat;  // 2 n1: 1 iff deg(e) = 0
};

template <typename T = double>
DegreeMatrices<T> build_degree_matrices(const BasicSparse<T>& b1, const BasicSparse<T>& b2)
{
    if (b1.cols() != b2.rows()) throw DimensionError("B1 columns differ from B2 rows");
    const std::size_t n1 = b1.cols();
    DegreeMatrices<T> d;
    const auto deg = b2.abs().row_sums();
    d.d2.resize(n1);
    for (std::size_t e = 0; e < n1; ++e) d.d2[e] = deg[e] == T{} ? T{1} : deg[e];
    d.d1 = b1.abs().scale_cols(d.d2).row_sums();
    for (auto& v : d.d1) v = T{2} * v;
    d.d3 = T{1} / T{3};
    d.d4_hat.resize(2 * n1);
    d.d5_hat.resize(2 * n1);
    for (std::size_t e = 0; e < n1; ++e) {
        const bool free = deg[e] == T{};
        d.d4_hat[e] = d.d4_hat[n1 + e] = free ? T{1} : T{3} * deg[e];
        d.d5_hat[e] = d.d5_hat[n1 + e] = free ? T{1} : T{};
    }
    return d;
}

template <typename T = double>
DegreeMatrices<T> build_degree_matrices(const SimplicialComplex& c)
{
    return build_degree_matrices<T>(boundary_b1<T>(c), boundary_b2<T>(c));
}

/// V = [I; -I] (2 n1 x n1). Lifted index e is the reference orientation of edge e,
/// n1 + e the reversed one.
template <typename T = double>
BasicSparse<T> lifting_v(std::size_t n1)
{
    std::vector<Triplet<T>> t;
    t.reserve(2 * n1);
    for (std::size_t e = 0; e < n1; ++e) {
        t.push_back({e, e, T{1}});
        t.push_back({n1 + e, e, T{-1}});
    }
    return BasicSparse<T>(2 * n1, n1, std::move(t));
}

/// Orientation swap permutation on the lifted space.
template <typename T = double>
BasicSparse<T> lifting_sigma(std::size_t n1)
{
    std::vector<Triplet<T>> t;
    t.reserve(2 * n1);
    for (std::size_t e = 0; e < n1; ++e) {
        t.push_back({e, n1 + e, T{1}});
        t.push_back({n1 + e, e, T{1}});
    }
    return BasicSparse<T>(2 * n1, 2 * n1, std::move(t));
}

template <typename T = double>
struct Lifting {
    BasicSparse<T> v;
    BasicSparse<T> sigma;
    BasicSparse<T> b1_hat_plus;   // positive part of B1 V^T: head of each oriented edge
    BasicSparse<T> b1_hat_minus;  // negative part: tail of each oriented edge
    BasicSparse<T> b2_hat_plus;
    BasicSparse<T> b2_hat_minus;
    BasicSparse<T> a_lower;
    BasicSparse<T> a_upper;

    BasicSparse<T> a_hat() const { return a_lower + a_upper; }
};

template <typename T = double>
Lifting<T> build_lifting(const BasicSparse<T>& b1, const BasicSparse<T>& b2)
{
    if (b1.cols() != b2.rows()) throw DimensionError("B1 columns differ from B2 rows");
    const std::size_t n1 = b1.cols();
    Lifting<T> l;
    l.v = lifting_v<T>(n1);
    l.sigma = lifting_sigma<T>(n1);
    const auto b1_hat = b1 * l.v.transpose();
    const auto b2_hat = l.v * b2;
    l.b1_hat_plus = b1_hat.positive_part();
    l.b1_hat_minus = b1_hat.negative_part();
    l.b2_hat_plus = b2_hat.positive_part();
    l.b2_hat_minus = b2_hat.negative_part();
    l.a_lower = l.b1_hat_minus.transpose() * l.b1_hat_plus + l.b1_hat_plus.transpose() * l.b1_hat_minus;
    l.a_upper = l.b2_hat_plus * l.b2_hat_minus.transpose() + l.b2_hat_minus * l.b2_hat_plus.transpose();
    return l;
}

}  // namespace hodgewalk
