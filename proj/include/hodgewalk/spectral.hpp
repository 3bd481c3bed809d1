#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hodgewalk/boundary.hpp"
#include "hodgewalk/complex.hpp"
#include "hodgewalk/errors.hpp"
#include "hodgewalk/laplacian.hpp"
#include "hodgewalk/solvers.hpp"

namespace hodgewalk {

enum class Which { smallest, full };

struct SpectrumOptions {
    std::size_t dense_cap = default_dense_cap;
    double kernel_tol = 1e-8;   // eigenvalues below kernel_tol * max(1, lambda_max) count as zero
    double solver_tol = 1e-10;  // Lanczos residual tolerance, relative to max(1, lambda_max)
    bool force_iterative = false;
    std::uint64_t seed = 0x5eed;
    std::size_t max_restarts = 2000;
};

/// Eigenpairs of the symmetrized Laplacian L1^s in ascending order.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    std::vector<double> residuals;  // ||L1^s u - lambda u|| per pair
    double lambda_max = 0.0;        // exact for dense solves, a Lanczos upper bound otherwise
    std::size_t kernel_dim = 0;
    bool kernel_complete = true;    // false if every computed eigenvalue was zero
    bool dense = true;

    Eigen::MatrixXd harmonic() const { return eigenvectors.leftCols(static_cast<Eigen::Index>(kernel_dim)); }
};

namespace detail {

inline std::size_t count_kernel(const Eigen::VectorXd& values, double threshold)
{
    std::size_t k = 0;
    while (k < static_cast<std::size_t>(values.size()) && values(static_cast<Eigen::Index>(k)) < threshold) ++k;
    return k;
}

}  // namespace detail

/// Fixes the sign of each column so its largest-magnitude entry is positive (ties go to the
/// lowest index).
inline void fix_column_signs(Eigen::MatrixXd& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double top = m.col(j).cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (std::abs(m(i, j)) >= top * (1.0 - 1e-8)) {
                if (m(i, j) < 0.0) m.col(j) *= -1.0;
                break;
            }
        }
    }
}

/// k smallest (or all) eigenpairs of L1^s. Uses a dense symmetric solver when n1 <= dense_cap,
/// otherwise thick-restart Lanczos driven by matrix-free products.
inline SpectralDecomposition spectrum(const NormalizedL1& l, std::size_t k, Which which = Which::smallest,
                                      const SpectrumOptions& opt = {})
{
    const std::size_t n1 = l.n1();
    if (which == Which::full) k = n1;
    if (k > n1) throw DimensionError("requested " + std::to_string(k) + " eigenpairs of a " + std::to_string(n1) +
                                     "-dimensional operator");
    const bool use_dense = n1 <= opt.dense_cap && !opt.force_iterative;
    if (which == Which::full && !use_dense) {
        throw Unsupported("full spectrum requires n1 <= dense cap (" + std::to_string(opt.dense_cap) + ")");
    }

    SpectralDecomposition s;
    const auto kk = static_cast<Eigen::Index>(k);
    if (use_dense) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.dense(true, opt.dense_cap));
        s.eigenvalues = es.eigenvalues().head(kk);
        s.eigenvectors = es.eigenvectors().leftCols(kk);
        s.lambda_max = n1 ? es.eigenvalues()(static_cast<Eigen::Index>(n1) - 1) : 0.0;
        s.dense = true;
    } else {
        const LinearMap op = [&l](const Eigen::VectorXd& x) { return l.apply_symmetric(x); };
        s.lambda_max = lanczos_largest_bound(op, static_cast<Eigen::Index>(n1), 60, opt.seed ^ 0x9e3779b97f4a7c15ULL);
        LanczosOptions lo;
        lo.tol = opt.solver_tol;
        lo.scale = std::max(1.0, s.lambda_max);
        lo.seed = opt.seed;
        lo.max_restarts = opt.max_restarts;
        auto pairs = lanczos_smallest(op, static_cast<Eigen::Index>(n1), kk, lo);
        s.eigenvalues = std::move(pairs.values);
        s.eigenvectors = std::move(pairs.vectors);
        s.dense = false;
    }
    s.residuals.resize(k);
    for (Eigen::Index i = 0; i < kk; ++i) {
        s.residuals[static_cast<std::size_t>(i)] =
            (l.apply_symmetric(s.eigenvectors.col(i)) - s.eigenvalues(i) * s.eigenvectors.col(i)).norm();
    }
    const double threshold = opt.kernel_tol * std::max(1.0, s.lambda_max);
    s.kernel_dim = detail::count_kernel(s.eigenvalues, threshold);
    s.kernel_complete = s.kernel_dim < k || k == n1;
    return s;
}

/// Orthonormal basis of the numerical kernel of L1^s with reproducible column signs. On the
/// iterative path the number of requested eigenpairs doubles until a nonzero eigenvalue shows up.
inline Eigen::MatrixXd harmonic_basis(const NormalizedL1& l, const SpectrumOptions& opt = {})
{
    const std::size_t n1 = l.n1();
    SpectralDecomposition s;
    if (n1 <= opt.dense_cap && !opt.force_iterative) {
        s = spectrum(l, n1, Which::full, opt);
    } else {
        std::size_t k = std::min<std::size_t>(n1, 8);
        while (true) {
            s = spectrum(l, k, Which::smallest, opt);
            if (s.kernel_complete) break;
            k = std::min(2 * k, n1);
        }
    }
    Eigen::MatrixXd h = s.harmonic();
    fix_column_signs(h);
    return h;
}

struct LiftCheckReport {
    std::size_t g1_pairs = 0;
    std::size_t g2_pairs = 0;
    std::size_t verified = 0;
    std::size_t skipped = 0;      // pairs whose lifted vector is zero
    double max_residual = 0.0;    // max ||L1^s v - lambda v|| over unit-norm lifted v
    double lambda_max = 0.0;
    bool ok = true;
};

/// Lifts every eigenpair of G1 = D1^-1/2 B1 D2 B1^T D1^-1/2 and G2 = D3^1/2 B2^T D2^-1 B2 D3^1/2
/// to L1^s and checks the eigen-equation there. Dense; intended for small complexes.
inline LiftCheckReport g1_g2_lift_check(const SimplicialComplex& c, double rel_tol = 1e-10)
{
    const NormalizedL1 l(c);
    const Eigen::MatrixXd ls = l.dense(true);
    const Eigen::MatrixXd b1 = l.b1().to_dense();
    const Eigen::MatrixXd b2 = l.b2().to_dense();
    const auto& deg = l.degrees();
    Eigen::VectorXd d1_is(static_cast<Eigen::Index>(c.n0()));
    for (Eigen::Index v = 0; v < d1_is.size(); ++v) {
        const double d = deg.d1[static_cast<std::size_t>(v)];
        d1_is(v) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    const double d3s = std::sqrt(deg.d3);

    LiftCheckReport r;
    if (c.n1() > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ls, Eigen::EigenvaluesOnly);
        r.lambda_max = es.eigenvalues().maxCoeff();
    }
    const double scale = r.lambda_max > 0.0 ? r.lambda_max : 1.0;

    const Eigen::MatrixXd lift1 = l.d2_sqrt().asDiagonal() * b1.transpose() * d1_is.asDiagonal();
    const Eigen::MatrixXd lift2 = d3s * (l.d2_inv_sqrt().asDiagonal() * b2);
    const Eigen::MatrixXd g1 = lift1.transpose() * lift1;
    const Eigen::MatrixXd g2 = lift2.transpose() * lift2;

    auto check = [&](const Eigen::MatrixXd& g, const Eigen::MatrixXd& lift, std::size_t& count) {
        if (g.rows() == 0) return;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            ++count;
            Eigen::VectorXd v = lift * es.eigenvectors().col(i);
            const double nv = v.norm();
            if (nv < 1e-10) {
                ++r.skipped;
                continue;
            }
            v /= nv;
            const double res = (ls * v - es.eigenvalues()(i) * v).norm();
            r.max_residual = std::max(r.max_residual, res);
            if (res < rel_tol * scale) {
                ++r.verified;
            } else {
                r.ok = false;
            }
        }
    };
    check(g1, lift1, r.g1_pairs);
    check(g2, lift2, r.g2_pairs);
    return r;
}

struct ContainmentReport {
    std::size_t checked = 0;
    double max_eigenvalue_distance = 0.0;  // max over lambda(Z) of distance to the nearest eigenvalue of P_hat
    double max_eigenvector_residual = 0.0; // max ||P_hat V x - mu V x|| / ||V x||
    bool ok = true;
};

/// Checks that every eigenvalue mu of Z = -L1 / 2 is an eigenvalue of P_hat with eigenvector V x.
inline ContainmentReport spectral_containment_check(const SimplicialComplex& c, double tol = 1e-8)
{
    const NormalizedL1 l(c);
    ContainmentReport r;
    if (c.n1() == 0) return r;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.dense(true));
    const Eigen::MatrixXd p = build_lifted_transition<double>(c).p_hat.to_dense();
    const Eigen::MatrixXd v = lifting_v<double>(c.n1()).to_dense();
    Eigen::EigenSolver<Eigen::MatrixXd> ep(p, false);
    const Eigen::VectorXcd lp = ep.eigenvalues();

    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double mu = -0.5 * es.eigenvalues()(i);
        const Eigen::VectorXd x = l.d2_sqrt().cwiseProduct(es.eigenvectors().col(i));
        const Eigen::VectorXd y = v * x;
        double dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < lp.size(); ++j) dist = std::min(dist, std::abs(lp(j) - std::complex<double>(mu, 0.0)));
        const double res = (p * y - mu * y).norm() / y.norm();
        r.max_eigenvalue_distance = std::max(r.max_eigenvalue_distance, dist);
        r.max_eigenvector_residual = std::max(r.max_eigenvector_residual, res);
        ++r.checked;
    }
    r.ok = r.max_eigenvalue_distance < tol && r.max_eigenvector_residual < tol;
    return r;
}

}  // namespace hodgewalk
