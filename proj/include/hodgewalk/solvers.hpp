#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/errors.hpp"

namespace hodgewalk {

/// y = A x for a linear operator given only through its action.
using LinearMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LsqrOptions {
    double atol = 1e-10;
    double btol = 1e-10;
    std::size_t max_iterations = 0;  // 0: 10 * (rows + cols)
};

struct LsqrResult {
    Eigen::VectorXd x;
    double residual_norm = 0.0;         // ||b - A x|| estimate
    double normal_residual_norm = 0.0;  // ||A^T (b - A x)|| estimate
    std::size_t iterations = 0;
};

/// LSQR (Paige & Saunders) for min ||A x - b||. Started from x = 0, so for rank-deficient A the
/// iterates stay in range(A^T) and converge to the minimum-norm solution.
inline LsqrResult lsqr(const LinearMap& a, const LinearMap& at, std::size_t cols, const Eigen::VectorXd& b,
                       const LsqrOptions& opt = {})
{
    const std::size_t rows = static_cast<std::size_t>(b.size());
    const std::size_t max_it = opt.max_iterations ? opt.max_iterations : 10 * (rows + cols);
    LsqrResult res;
    res.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols));

    Eigen::VectorXd u = b;
    double beta = u.norm();
    const double bnorm = beta;
    res.residual_norm = beta;
    if (beta == 0.0 || cols == 0) return res;
    u /= beta;
    Eigen::VectorXd v = at(u);
    double alpha = v.norm();
    if (alpha == 0.0) return res;  // b is orthogonal to range(A)
    v /= alpha;

    Eigen::VectorXd w = v;
    double phibar = beta;
    double rhobar = alpha;
    double anorm2 = 0.0;
    std::vector<double> history;

    for (std::size_t it = 1; it <= max_it; ++it) {
        u = a(v) - alpha * u;
        beta = u.norm();
        if (beta > 0.0) u /= beta;
        anorm2 += alpha * alpha + beta * beta;

        v = at(u) - beta * v;
        alpha = v.norm();
        if (alpha > 0.0) v /= alpha;

        const double rho = std::hypot(rhobar, beta);
        const double cs = rhobar / rho;
        const double sn = beta / rho;
        const double theta = sn * alpha;
        rhobar = -cs * alpha;
        const double phi = cs * phibar;
        phibar = sn * phibar;

        res.x += (phi / rho) * w;
        w = v - (theta / rho) * w;

        const double anorm = std::sqrt(anorm2);
        res.residual_norm = phibar;
        res.normal_residual_norm = phibar * alpha * std::abs(cs);
        res.iterations = it;
        history.push_back(res.residual_norm);

        const double xnorm = res.x.norm();
        const bool consistent = res.residual_norm <= opt.btol * bnorm + opt.atol * anorm * xnorm;
        const bool normal = res.normal_residual_norm <= opt.atol * anorm * res.residual_norm;
        if (consistent || normal || alpha == 0.0) return res;
    }
    throw ConvergenceError("LSQR did not converge in " + std::to_string(max_it) + " iterations", std::move(history),
                           max_it);
}

struct CgResult {
    Eigen::VectorXd x;
    double relative_residual = 0.0;
    std::size_t iterations = 0;
};

/// Conjugate gradients for a symmetric positive definite operator.
inline CgResult conjugate_gradient(const LinearMap& a, const Eigen::VectorXd& b, double tol,
                                   std::size_t max_iterations)
{
    CgResult res;
    res.x = Eigen::VectorXd::Zero(b.size());
    const double bnorm = b.norm();
    if (bnorm == 0.0) return res;
    Eigen::VectorXd r = b;
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    std::vector<double> history;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        const Eigen::VectorXd ap = a(p);
        const double alpha = rr / p.dot(ap);
        res.x += alpha * p;
        r -= alpha * ap;
        const double rr_new = r.squaredNorm();
        res.iterations = it;
        res.relative_residual = std::sqrt(rr_new) / bnorm;
        history.push_back(res.relative_residual);
        if (res.relative_residual <= tol) return res;
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    throw ConvergenceError("CG did not converge in " + std::to_string(max_iterations) + " iterations",
                           std::move(history), max_iterations);
}

struct EigenPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns
    std::vector<double> residuals;
};

struct LanczosOptions {
    double tol = 1e-10;           // residual tolerance relative to the spectral scale
    double scale = 1.0;           // spectral scale, e.g. max(1, lambda_max)
    std::size_t block_size = 0;   // 0: max(k, 4)
    std::size_t max_basis = 0;    // subspace size; 0: automatic
    std::size_t max_restarts = 2000;
    std::uint64_t seed = 0x5eed;
};

namespace detail {

/// Orthogonalizes x against the first `count` columns of q (two Gram-Schmidt passes).
inline void orthogonalize(Eigen::VectorXd& x, const Eigen::MatrixXd& q, Eigen::Index count)
{
    for (int pass = 0; pass < 2; ++pass) {
        if (count == 0) return;
        const auto block = q.leftCols(count);
        x -= block * (block.transpose() * x);
    }
}

inline Eigen::VectorXd random_unit(Eigen::Index n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = g(rng);
    return x;
}

}  // namespace detail

/// Smallest k eigenpairs of a symmetric operator by block thick-restart Lanczos with full
/// reorthogonalization, explicit Rayleigh-Ritz on the stored basis, and locking of converged
/// pairs in ascending order. The block size is at least k so that an eigenvalue of multiplicity
/// up to the block size is resolved. Only matrix-vector products with A are used.
inline EigenPairs lanczos_smallest(const LinearMap& a, Eigen::Index n, Eigen::Index k, const LanczosOptions& opt = {})
{
    EigenPairs out;
    if (k <= 0 || n == 0) {
        out.values.resize(0);
        out.vectors.resize(n, 0);
        return out;
    }
    k = std::min(k, n);
    const Eigen::Index b =
        std::min(n, opt.block_size ? static_cast<Eigen::Index>(opt.block_size) : std::max<Eigen::Index>(k, 4));
    const Eigen::Index m =
        std::min(n, opt.max_basis ? static_cast<Eigen::Index>(opt.max_basis) : std::max<Eigen::Index>(4 * b, 40));

    std::mt19937_64 rng(opt.seed);
    Eigen::MatrixXd locked(n, k);
    Eigen::VectorXd locked_values(k);
    std::vector<double> locked_res;
    Eigen::Index nlocked = 0;

    Eigen::MatrixXd q(n, m);
    Eigen::MatrixXd aq(n, m);
    Eigen::Index nq = 0;
    Eigen::MatrixXd block(n, b);
    for (Eigen::Index j = 0; j < b; ++j) block.col(j) = detail::random_unit(n, rng);
    const double thresh = opt.tol * opt.scale;
    std::vector<double> last_residuals;

    for (std::size_t restart = 0; restart <= opt.max_restarts; ++restart) {
        const Eigen::Index mm = std::min(m, n - nlocked);
        // Expand the basis block by block up to mm columns.
        while (nq < mm) {
            const Eigen::Index first_new = nq;
            for (Eigen::Index j = 0; j < block.cols() && nq < mm; ++j) {
                Eigen::VectorXd x = block.col(j);
                double before = x.norm();
                detail::orthogonalize(x, locked, nlocked);
                detail::orthogonalize(x, q, nq);
                double nrm = x.norm();
                for (int tries = 0; !(nrm > 1e-10 * before) && tries < 8; ++tries) {
                    // Direction already spanned: inject a fresh random one.
                    x = detail::random_unit(n, rng);
                    before = x.norm();
                    detail::orthogonalize(x, locked, nlocked);
                    detail::orthogonalize(x, q, nq);
                    nrm = x.norm();
                }
                if (!(nrm > 1e-10 * before)) break;
                q.col(nq) = x / nrm;
                aq.col(nq) = a(q.col(nq));
                ++nq;
            }
            if (nq == first_new) break;
            block = aq.middleCols(first_new, nq - first_new);
        }
        if (nq == 0) break;

        const Eigen::MatrixXd t = q.leftCols(nq).transpose() * aq.leftCols(nq);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()));
        const Eigen::MatrixXd y = q.leftCols(nq) * es.eigenvectors();
        const Eigen::MatrixXd ay = aq.leftCols(nq) * es.eigenvectors();
        const Eigen::VectorXd theta = es.eigenvalues();

        last_residuals.assign(static_cast<std::size_t>(nq), 0.0);
        for (Eigen::Index i = 0; i < nq; ++i) {
            last_residuals[static_cast<std::size_t>(i)] = (ay.col(i) - theta(i) * y.col(i)).norm();
        }

        // Lock leading converged Ritz pairs.
        Eigen::Index first = 0;
        while (first < nq && nlocked < k && last_residuals[static_cast<std::size_t>(first)] <= thresh) {
            locked.col(nlocked) = y.col(first);
            locked_values(nlocked) = theta(first);
            locked_res.push_back(last_residuals[static_cast<std::size_t>(first)]);
            ++nlocked;
            ++first;
        }
        if (nlocked == k || nlocked == n || restart == opt.max_restarts) break;

        // Thick restart: keep the next b Ritz vectors and continue from their residuals.
        const Eigen::Index retain = std::min(b, nq - first);
        const Eigen::MatrixXd qy = y.middleCols(first, retain);
        const Eigen::MatrixXd aqy = ay.middleCols(first, retain);
        block.resize(n, retain);
        for (Eigen::Index j = 0; j < retain; ++j) block.col(j) = aqy.col(j) - theta(first + j) * qy.col(j);
        q.leftCols(retain) = qy;
        aq.leftCols(retain) = aqy;
        nq = retain;
    }

    if (nlocked < k) {
        throw ConvergenceError("Lanczos: only " + std::to_string(nlocked) + " of " + std::to_string(k) +
                                   " eigenpairs converged",
                               last_residuals, opt.max_restarts);
    }
    // A later restart can lock a value below an earlier one when eigenvalues cluster; sort for
    // the ascending contract.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index z) { return locked_values(x) < locked_values(z); });
    out.values.resize(k);
    out.vectors.resize(n, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto src = order[static_cast<std::size_t>(i)];
        out.values(i) = locked_values(src);
        out.vectors.col(i) = locked.col(src);
        out.residuals.push_back(locked_res[static_cast<std::size_t>(src)]);
    }
    return out;
}

/// Upper estimate of the largest eigenvalue of a symmetric PSD operator: largest Ritz value of
/// a fully reorthogonalized Lanczos run plus its residual norm.
inline double lanczos_largest_bound(const LinearMap& a, Eigen::Index n, Eigen::Index steps = 60,
                                    std::uint64_t seed = 0x1a2b)
{
    if (n == 0) return 0.0;
    steps = std::min(steps, n);
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd q(n, steps);
    Eigen::MatrixXd aq(n, steps);
    Eigen::VectorXd next = detail::random_unit(n, rng);
    Eigen::Index nq = 0;
    while (nq < steps) {
        detail::orthogonalize(next, q, nq);
        const double nrm = next.norm();
        if (nrm < 1e-12) break;
        q.col(nq) = next / nrm;
        aq.col(nq) = a(q.col(nq));
        next = aq.col(nq);
        ++nq;
    }
    if (nq == 0) return 0.0;
    const Eigen::MatrixXd t = q.leftCols(nq).transpose() * aq.leftCols(nq);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()));
    const Eigen::Index top = nq - 1;
    const Eigen::VectorXd y = q.leftCols(nq) * es.eigenvectors().col(top);
    const Eigen::VectorXd ay = aq.leftCols(nq) * es.eigenvectors().col(top);
    const double theta = es.eigenvalues()(top);
    return theta + (ay - theta * y).norm();
}

}  // namespace hodgewalk
