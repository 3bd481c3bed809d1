#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/boundary.hpp"
#include "hodgewalk/complex.hpp"
#include "hodgewalk/errors.hpp"
#include "hodgewalk/sparse.hpp"

namespace hodgewalk {

inline constexpr std::size_t default_dense_cap = 2000;

/// Normalized Hodge 1-Laplacian L1 = D2 B1^T D1^-1 B1 + B2 D3 B2^T D2^-1, kept in factored form.
///
/// `apply` never forms L1; it chains sparse matvecs and diagonal scalings so one product costs
/// O(n0 + n1 + n2). The symmetrized form L1^s = D2^-1/2 L1 D2^1/2 shares the same factors.
class NormalizedL1 {
public:
    explicit NormalizedL1(const SimplicialComplex& c)
        : n0_(c.n0()), n1_(c.n1()), n2_(c.n2()), b1_(build_b1(c)), b2_(build_b2(c)),
          deg_(build_degree_matrices<double>(b1_, b2_)), touched_(std::make_shared<std::atomic<std::size_t>>(0))
    {
        const auto n1 = static_cast<Eigen::Index>(n1_);
        d2_ = Eigen::Map<const Eigen::VectorXd>(deg_.d2.data(), n1);
        d2_sqrt_ = d2_.cwiseSqrt();
        d2_inv_sqrt_ = d2_sqrt_.cwiseInverse();
        d1_inv_ = Eigen::Map<const Eigen::VectorXd>(deg_.d1.data(), static_cast<Eigen::Index>(n0_));
        for (Eigen::Index v = 0; v < d1_inv_.size(); ++v) d1_inv_(v) = d1_inv_(v) > 0.0 ? 1.0 / d1_inv_(v) : 0.0;
    }

    std::size_t n0() const noexcept { return n0_; }
    std::size_t n1() const noexcept { return n1_; }
    std::size_t n2() const noexcept { return n2_; }
    std::size_t size() const noexcept { return n1_; }

    const SparseOperator& b1() const noexcept { return b1_; }
    const SparseOperator& b2() const noexcept { return b2_; }
    const DegreeMatrices<double>& degrees() const noexcept { return deg_; }
    const Eigen::VectorXd& d2() const noexcept { return d2_; }
    const Eigen::VectorXd& d2_sqrt() const noexcept { return d2_sqrt_; }
    const Eigen::VectorXd& d2_inv_sqrt() const noexcept { return d2_inv_sqrt_; }

    /// L1 x
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const
    {
        check(x);
        Eigen::VectorXd nodes;
        b1_.apply(x, nodes);
        nodes.array() *= d1_inv_.array();
        Eigen::VectorXd down;
        b1_.apply_transpose(nodes, down);
        down.array() *= d2_.array();

        const Eigen::VectorXd scaled = x.cwiseQuotient(d2_);
        Eigen::VectorXd tris;
        b2_.apply_transpose(scaled, tris);
        tris *= deg_.d3;
        Eigen::VectorXd up;
        b2_.apply(tris, up);

        touched_->fetch_add(2 * b1_.nnz() + 2 * b2_.nnz() + n0_ + 4 * n1_ + n2_, std::memory_order_relaxed);
        return down + up;
    }

    /// L1^s x = D2^-1/2 L1 D2^1/2 x
    Eigen::VectorXd apply_symmetric(const Eigen::VectorXd& x) const
    {
        check(x);
        return apply(x.cwiseProduct(d2_sqrt_)).cwiseProduct(d2_inv_sqrt_);
    }

    /// Entries read by `apply` since construction or the last reset.
    std::size_t touched() const noexcept { return touched_->load(std::memory_order_relaxed); }
    void reset_touched() const noexcept { touched_->store(0, std::memory_order_relaxed); }

    /// Dense L1 (or L1^s); refuses sizes above `cap`.
    Eigen::MatrixXd dense(bool symmetric = false, std::size_t cap = default_dense_cap) const
    {
        if (n1_ > cap) {
            throw Unsupported("dense materialization refused: n1 = " + std::to_string(n1_) + " exceeds cap " +
                              std::to_string(cap));
        }
        const Eigen::MatrixXd b1 = b1_.to_dense();
        const Eigen::MatrixXd b2 = b2_.to_dense();
        Eigen::MatrixXd l = d2_.asDiagonal() * b1.transpose() * d1_inv_.asDiagonal() * b1 +
                            deg_.d3 * b2 * b2.transpose() * d2_.cwiseInverse().asDiagonal();
        if (symmetric) {
            l = d2_inv_sqrt_.asDiagonal() * l * d2_sqrt_.asDiagonal();
            l = 0.5 * (l + l.transpose());
        }
        return l;
    }

private:
    void check(const Eigen::VectorXd& x) const
    {
        if (static_cast<std::size_t>(x.size()) != n1_) {
            throw DimensionError("edge flow has length " + std::to_string(x.size()) + ", expected " +
                                 std::to_string(n1_));
        }
    }

    std::size_t n0_, n1_, n2_;
    SparseOperator b1_;
    SparseOperator b2_;
    DegreeMatrices<double> deg_;
    Eigen::VectorXd d2_, d2_sqrt_, d2_inv_sqrt_, d1_inv_;
    std::shared_ptr<std::atomic<std::size_t>> touched_;
};

/// Sparse L1 = D2 B1^T D1^-1 B1 + B2 D3 B2^T D2^-1 over a field T (double or Rational).
template <typename T = double>
BasicSparse<T> assemble_l1(const SimplicialComplex& c)
{
    const auto b1 = boundary_b1<T>(c);
    const auto b2 = boundary_b2<T>(c);
    const auto d = build_degree_matrices<T>(b1, b2);
    std::vector<T> d1_inv(d.d1.size());
    for (std::size_t v = 0; v < d.d1.size(); ++v) d1_inv[v] = d.d1[v] == T{} ? T{} : T{1} / d.d1[v];
    std::vector<T> d2_inv(d.d2.size());
    for (std::size_t e = 0; e < d.d2.size(); ++e) d2_inv[e] = T{1} / d.d2[e];
    const auto b1t = b1.transpose();
    const auto down = (b1t.scale_cols(d1_inv) * b1).scale_rows(d.d2);
    const auto up = (b2 * b2.transpose()).scale_cols(d2_inv);
    return down + d.d3 * up;
}

/// Lifted transition matrices on the 2 n1 oriented edges.
template <typename T = double>
struct LiftedTransition {
    BasicSparse<T> m_forward;   // D2_hat (B1_hat^-)^T B1_hat^+
    BasicSparse<T> m_backward;  // D2_hat (B1_hat^+)^T B1_hat^-
    std::vector<T> q_forward;   // column sums of m_forward
    std::vector<T> q_backward;
    BasicSparse<T> p_forward;
    BasicSparse<T> p_backward;
    BasicSparse<T> p_lower;  // (P_forward + P_backward) / 2
    BasicSparse<T> p_upper;  // A_u D4_hat^-1 + 1/2 [[I, I], [I, I]] D5_hat
    BasicSparse<T> p_hat;    // (P_lower + P_upper) / 2
};

template <typename T = double>
LiftedTransition<T> build_lifted_transition(const SimplicialComplex& c)
{
    const auto b1 = boundary_b1<T>(c);
    const auto b2 = boundary_b2<T>(c);
    const auto d = build_degree_matrices<T>(b1, b2);
    const auto lift = build_lifting<T>(b1, b2);
    const std::size_t n1 = c.n1();
    const T half = T{1} / T{2};

    std::vector<T> d2_hat(2 * n1);
    for (std::size_t e = 0; e < n1; ++e) d2_hat[e] = d2_hat[n1 + e] = d.d2[e];

    LiftedTransition<T> p;
    p.m_forward = (lift.b1_hat_minus.transpose() * lift.b1_hat_plus).scale_rows(d2_hat);
    p.m_backward = (lift.b1_hat_plus.transpose() * lift.b1_hat_minus).scale_rows(d2_hat);
    p.q_forward = p.m_forward.col_sums();
    p.q_backward = p.m_backward.col_sums();

    auto inverse = [](std::vector<T> q) {
        for (auto& v : q) {
            // Every oriented edge reaches at least its own reversal, so column sums are positive.
            if (!(T{} < v)) throw Error("lifted transition: empty column");
            v = T{1} / v;
        }
        return q;
    };
    p.p_forward = p.m_forward.scale_cols(inverse(p.q_forward));
    p.p_backward = p.m_backward.scale_cols(inverse(p.q_backward));
    p.p_lower = half * (p.p_forward + p.p_backward);

    std::vector<T> d4_inv(2 * n1);
    for (std::size_t i = 0; i < 2 * n1; ++i) d4_inv[i] = T{1} / d.d4_hat[i];
    std::vector<Triplet<T>> flip;
    for (std::size_t e = 0; e < n1; ++e) {
        if (d.d5_hat[e] == T{}) continue;
        for (const std::size_t col : {e, n1 + e}) {
            flip.push_back({e, col, half});
            flip.push_back({n1 + e, col, half});
        }
    }
    p.p_upper = lift.a_upper.scale_cols(d4_inv) + BasicSparse<T>(2 * n1, 2 * n1, std::move(flip));
    p.p_hat = half * (p.p_lower + p.p_upper);
    return p;
}

struct StochasticLiftingReport {
    double lifting_error = 0.0;      // max |-1/2 L1 V^T - V^T P_hat|
    double projection_error = 0.0;   // max |Z - V^+ P_hat V|, Z = -L1 / 2, V^+ = V^T / 2
    double intertwining_error = 0.0; // max |V Z - P_hat V|
    double column_sum_error = 0.0;   // max |1^T P_hat - 1^T|
    double min_entry = 0.0;          // smallest entry of P_hat
};

/// Evaluates the stochastic lifting identities in floating point.
inline StochasticLiftingReport verify_stochastic_lifting(const SimplicialComplex& c)
{
    const auto l1 = assemble_l1<double>(c);
    const auto p = build_lifted_transition<double>(c);
    const auto v = lifting_v<double>(c.n1());
    const auto vt = v.transpose();
    const auto z = -0.5 * l1;

    StochasticLiftingReport r;
    r.lifting_error = max_abs(z * vt - vt * p.p_hat);
    r.projection_error = max_abs(z - 0.5 * (vt * p.p_hat * v));
    r.intertwining_error = max_abs(v * z - p.p_hat * v);
    for (const double s : p.p_hat.col_sums()) r.column_sum_error = std::max(r.column_sum_error, std::abs(s - 1.0));
    r.min_entry = 0.0;
    for (const auto& t : p.p_hat.triplets()) r.min_entry = std::min(r.min_entry, t.value);
    return r;
}

}  // namespace hodgewalk
