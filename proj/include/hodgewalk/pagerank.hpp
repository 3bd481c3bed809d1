#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/errors.hpp"
#include "hodgewalk/hodge.hpp"
#include "hodgewalk/laplacian.hpp"
#include "hodgewalk/solvers.hpp"
#include "hodgewalk/spectral.hpp"

namespace hodgewalk {

enum class PageRankMode {
    standard,     // (beta I + L1) pi = (beta - 2) x, beta > 2
    generalized,  // (kappa I + L1) pi = x, kappa > 0
};

struct PageRankQuery {
    std::optional<std::size_t> edge;  // personalized teleport x = e_edge
    Eigen::VectorXd teleport;         // general x (used when `edge` is empty)
    PageRankMode mode = PageRankMode::standard;
    double parameter = 2.5;           // beta or kappa

    static PageRankQuery personalized(std::size_t e, PageRankMode mode = PageRankMode::standard, double p = 2.5)
    {
        PageRankQuery q;
        q.edge = e;
        q.mode = mode;
        q.parameter = p;
        return q;
    }
    static PageRankQuery general(Eigen::VectorXd x, PageRankMode mode = PageRankMode::standard, double p = 2.5)
    {
        PageRankQuery q;
        q.teleport = std::move(x);
        q.mode = mode;
        q.parameter = p;
        return q;
    }
};

struct PageRankNorms {
    double l2 = 0.0;
    double grad = 0.0;
    double curl = 0.0;
    double harm = 0.0;
};

struct PageRankResult {
    Eigen::VectorXd pi;
    Eigen::VectorXd gauge;  // diagonal of Theta (+1 / -1)
    bool gauged = false;
    PageRankQuery query;
    double relative_residual = 0.0;  // ||(s I + L1) pi_raw - rhs|| / ||x||
    std::size_t iterations = 0;
    std::optional<PageRankNorms> norms;

    /// pi in the reference orientation (undoes the gauge).
    Eigen::VectorXd raw() const { return gauge.cwiseProduct(pi); }
};

struct PageRankOptions {
    double cg_tol = 1e-12;
    std::size_t max_iterations = 0;  // 0: 10 * n1 + 100
    double residual_tol = 1e-10;     // acceptance bound on the true residual, relative to ||x||
};

namespace detail {

inline double shift_of(const PageRankQuery& q)
{
    if (q.mode == PageRankMode::standard) {
        if (!(q.parameter > 2.0)) throw ParameterError("standard PageRank needs beta > 2, got " + std::to_string(q.parameter));
    } else if (!(q.parameter > 0.0)) {
        throw ParameterError("generalized PageRank needs kappa > 0, got " + std::to_string(q.parameter));
    }
    return q.parameter;
}

inline Eigen::VectorXd teleport_vector(const NormalizedL1& l, const PageRankQuery& q)
{
    const auto n1 = static_cast<Eigen::Index>(l.n1());
    if (q.edge) {
        if (*q.edge >= l.n1()) throw IndexError("teleport edge " + std::to_string(*q.edge) + " out of range");
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n1);
        x(static_cast<Eigen::Index>(*q.edge)) = 1.0;
        return x;
    }
    if (q.teleport.size() != n1) throw DimensionError("teleport vector length differs from n1");
    return q.teleport;
}

}  // namespace detail

/// Simplicial PageRank by CG on the SPD system (s I + L1^s) y = D2^-1/2 rhs, pi = D2^1/2 y.
inline PageRankResult pagerank(const NormalizedL1& l, const PageRankQuery& q, const PageRankOptions& opt = {})
{
    const double s = detail::shift_of(q);
    const Eigen::VectorXd x = detail::teleport_vector(l, q);
    const double scale = q.mode == PageRankMode::standard ? s - 2.0 : 1.0;
    const Eigen::VectorXd rhs = scale * x;

    PageRankResult r;
    r.query = q;
    r.gauge = Eigen::VectorXd::Ones(x.size());
    const double xnorm = x.norm();
    if (xnorm == 0.0) {
        r.pi = Eigen::VectorXd::Zero(x.size());
        return r;
    }
    const LinearMap op = [&](const Eigen::VectorXd& y) { return Eigen::VectorXd(s * y + l.apply_symmetric(y)); };
    const std::size_t max_it = opt.max_iterations ? opt.max_iterations : 10 * l.n1() + 100;
    const Eigen::VectorXd b = rhs.cwiseProduct(l.d2_inv_sqrt());
    double tol = opt.cg_tol;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const auto cg = conjugate_gradient(op, b, tol, max_it);
        r.pi = cg.x.cwiseProduct(l.d2_sqrt());
        r.iterations += cg.iterations;
        r.relative_residual = (s * r.pi + l.apply(r.pi) - rhs).norm() / xnorm;
        if (r.relative_residual <= opt.residual_tol) return r;
        tol *= 1e-2;
    }
    throw ConvergenceError("PageRank residual " + std::to_string(r.relative_residual) + " above tolerance",
                           {r.relative_residual}, r.iterations);
}

/// Flips reference orientations so the personalized PageRank vector is nonnegative.
inline PageRankResult gauge_normalize(const PageRankResult& result)
{
    if (!result.query.edge) {
        throw Unsupported("gauge normalization is only defined for personalized (single-edge) teleports");
    }
    PageRankResult g = result;
    const Eigen::VectorXd raw = result.raw();
    g.gauge.resize(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i) g.gauge(i) = raw(i) < 0.0 ? -1.0 : 1.0;
    g.pi = g.gauge.cwiseProduct(raw);
    g.gauged = true;
    return g;
}

/// 2-norms of pi and of its symmetrized Hodge components. The decomposition is applied to pi in
/// the reference orientation, so the values do not depend on the gauge.
inline PageRankNorms pagerank_norms(const NormalizedL1& l, const PageRankResult& result, const LsqrOptions& opt = {})
{
    const Eigen::VectorXd raw = result.raw();
    const auto h = decompose(l, raw, Flavor::symmetrized, opt);
    return {raw.norm(), h.gradient.norm(), h.curl.norm(), h.harmonic.norm()};
}

/// Harmonic PageRank ||H^T pi_e|| for every edge e.
///
/// With M = (beta I + L1^s)^-1, pi_e = (beta - 2) D2^1/2 M D2^-1/2 e, so all n1 scores are the
/// column norms of K = (beta - 2) (M D2^1/2 H)^T D2^-1/2, which needs only dim(H) solves.
inline Eigen::VectorXd harmonic_pagerank_all_edges(const NormalizedL1& l, const Eigen::MatrixXd& h, double beta,
                                                   const PageRankOptions& opt = {},
                                                   std::size_t dense_cap = default_dense_cap)
{
    if (!(beta > 2.0)) throw ParameterError("harmonic PageRank needs beta > 2, got " + std::to_string(beta));
    const auto n1 = static_cast<Eigen::Index>(l.n1());
    if (h.rows() != n1) throw DimensionError("harmonic basis rows differ from n1");
    Eigen::VectorXd scores = Eigen::VectorXd::Zero(n1);
    if (h.cols() == 0) return scores;

    const Eigen::MatrixXd rhs = l.d2_sqrt().asDiagonal() * h;
    Eigen::MatrixXd y(n1, h.cols());
    if (l.n1() <= dense_cap) {
        Eigen::MatrixXd a = l.dense(true, dense_cap);
        a.diagonal().array() += beta;
        y = a.llt().solve(rhs);
    } else {
        const LinearMap op = [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(beta * v + l.apply_symmetric(v)); };
        const std::size_t max_it = opt.max_iterations ? opt.max_iterations : 10 * l.n1() + 100;
        for (Eigen::Index j = 0; j < h.cols(); ++j) y.col(j) = conjugate_gradient(op, rhs.col(j), opt.cg_tol, max_it).x;
    }
    const Eigen::MatrixXd k = (beta - 2.0) * (y.transpose() * l.d2_inv_sqrt().asDiagonal());
    for (Eigen::Index e = 0; e < n1; ++e) scores(e) = k.col(e).norm();
    return scores;
}

/// Average ranks (1-based), ties share the mean of their positions.
inline Eigen::VectorXd average_ranks(const Eigen::VectorXd& v)
{
    const auto n = static_cast<std::size_t>(v.size());
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return v(static_cast<Eigen::Index>(a)) < v(static_cast<Eigen::Index>(b));
    });
    Eigen::VectorXd r(v.size());
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v(static_cast<Eigen::Index>(idx[j + 1])) == v(static_cast<Eigen::Index>(idx[i]))) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r(static_cast<Eigen::Index>(idx[t])) = rank;
        i = j + 1;
    }
    return r;
}

/// Spearman rank correlation; empty when either input is constant.
inline std::optional<double> spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    if (a.size() != b.size()) throw DimensionError("spearman: lengths differ");
    if (a.size() < 2) return std::nullopt;
    Eigen::VectorXd ra = average_ranks(a);
    Eigen::VectorXd rb = average_ranks(b);
    ra.array() -= ra.mean();
    rb.array() -= rb.mean();
    const double den = ra.norm() * rb.norm();
    if (den == 0.0) return std::nullopt;
    return ra.dot(rb) / den;
}

struct StabilityReport {
    std::vector<double> betas;
    Eigen::MatrixXd rho;              // NaN where undefined
    double mean_rho = 0.0;            // over defined pairs i < j
    std::size_t pairs = 0;
    std::vector<std::size_t> constant;  // grid indices whose score vector is constant
};

inline StabilityReport rank_stability(const NormalizedL1& l, const Eigen::MatrixXd& h, const std::vector<double>& betas,
                                      const PageRankOptions& opt = {})
{
    if (betas.size() < 2) throw ParameterError("rank stability needs at least two beta values");
    StabilityReport rep;
    rep.betas = betas;
    std::vector<Eigen::VectorXd> scores;
    for (const double b : betas) scores.push_back(harmonic_pagerank_all_edges(l, h, b, opt));
    const auto g = static_cast<Eigen::Index>(betas.size());
    rep.rho = Eigen::MatrixXd::Constant(g, g, std::nan(""));
    for (Eigen::Index i = 0; i < g; ++i) {
        const auto& si = scores[static_cast<std::size_t>(i)];
        if (si.size() == 0 || (si.array() == si(0)).all()) rep.constant.push_back(static_cast<std::size_t>(i));
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < g; ++i) {
        for (Eigen::Index j = i; j < g; ++j) {
            const auto r = spearman(scores[static_cast<std::size_t>(i)], scores[static_cast<std::size_t>(j)]);
            if (!r) continue;
            rep.rho(i, j) = rep.rho(j, i) = *r;
            if (j > i) {
                sum += *r;
                ++rep.pairs;
            }
        }
    }
    rep.mean_rho = rep.pairs ? sum / static_cast<double>(rep.pairs) : std::nan("");
    return rep;
}

namespace detail {

/// PageRank on an undirected graph: pi = alpha P pi + (1 - alpha) / n, P = A D^-1, with
/// dangling nodes redistributing uniformly. Power iteration to an l1 change of 1e-15.
inline Eigen::VectorXd graph_pagerank(const std::vector<std::vector<std::size_t>>& adj, double alpha)
{
    const std::size_t n = adj.size();
    if (n == 0) return {};
    const double u = 1.0 / static_cast<double>(n);
    Eigen::VectorXd pi = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), u);
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd next = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), (1.0 - alpha) * u);
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            const double mass = pi(static_cast<Eigen::Index>(v));
            if (adj[v].empty()) {
                dangling += mass;
                continue;
            }
            const double share = alpha * mass / static_cast<double>(adj[v].size());
            for (const std::size_t w : adj[v]) next(static_cast<Eigen::Index>(w)) += share;
        }
        next.array() += alpha * dangling * u;
        const double change = (next - pi).lpNorm<1>();
        pi = next;
        if (change < 1e-15) break;
    }
    return pi;
}

}  // namespace detail

/// Node PageRank of the 1-skeleton (uniform teleport).
inline Eigen::VectorXd node_pagerank(const SimplicialComplex& c, double alpha = 0.85)
{
    std::vector<std::vector<std::size_t>> adj(c.n0());
    for (const auto& [i, j] : c.edges()) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    return detail::graph_pagerank(adj, alpha);
}

enum class BaselineVariant { node_sum, node_diff, line_graph };

/// Edge scores derived from graph PageRank: endpoint sum, endpoint difference (head minus tail
/// in the reference orientation), or PageRank of the line graph.
inline Eigen::VectorXd baseline_edge_pagerank(const SimplicialComplex& c, BaselineVariant variant, double alpha = 0.85)
{
    const auto n1 = static_cast<Eigen::Index>(c.n1());
    Eigen::VectorXd out(n1);
    if (variant == BaselineVariant::line_graph) {
        std::vector<std::vector<std::size_t>> incident(c.n0());
        for (std::size_t e = 0; e < c.n1(); ++e) {
            incident[c.edges()[e][0]].push_back(e);
            incident[c.edges()[e][1]].push_back(e);
        }
        std::vector<std::vector<std::size_t>> adj(c.n1());
        for (const auto& inc : incident) {
            for (const std::size_t a : inc) {
                for (const std::size_t b : inc) {
                    if (a != b) adj[a].push_back(b);
                }
            }
        }
        return detail::graph_pagerank(adj, alpha);
    }
    const Eigen::VectorXd pi = node_pagerank(c, alpha);
    for (Eigen::Index e = 0; e < n1; ++e) {
        const auto& [i, j] = c.edges()[static_cast<std::size_t>(e)];
        const double a = pi(static_cast<Eigen::Index>(i));
        const double b = pi(static_cast<Eigen::Index>(j));
        out(e) = variant == BaselineVariant::node_sum ? a + b : b - a;
    }
    return out;
}

}  // namespace hodgewalk
