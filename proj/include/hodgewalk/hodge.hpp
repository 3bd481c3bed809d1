#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "hodgewalk/errors.hpp"
#include "hodgewalk/laplacian.hpp"
#include "hodgewalk/solvers.hpp"

namespace hodgewalk {

enum class Flavor {
    unnormalized,  // range(B1^T) + range(B2) + ker(B1^T B1 + B2 B2^T)
    symmetrized,   // range(D2^1/2 B1^T) + range(D2^-1/2 B2) + ker(L1^s), standard inner product
    normalized,    // range(D2 B1^T) + range(B2) + ker(L1), orthogonal in the D2^-1 inner product
};

inline const char* to_string(Flavor f)
{
    switch (f) {
    case Flavor::unnormalized: return "unnormalized";
    case Flavor::symmetrized: return "symmetrized";
    case Flavor::normalized: return "normalized";
    }
    return "?";
}

inline Flavor parse_flavor(const std::string& s)
{
    if (s == "unnormalized") return Flavor::unnormalized;
    if (s == "symmetrized") return Flavor::symmetrized;
    if (s == "normalized") return Flavor::normalized;
    throw ParameterError("unknown flavor '" + s + "'");
}

struct HodgeComponents {
    Eigen::VectorXd gradient;
    Eigen::VectorXd curl;
    Eigen::VectorXd harmonic;
    Flavor flavor = Flavor::symmetrized;
    double gradient_residual = 0.0;  // ||c - g|| from the first least-squares solve
    double curl_residual = 0.0;      // ||c - r|| from the second
    std::size_t gradient_iterations = 0;
    std::size_t curl_iterations = 0;
};

/// Hodge decomposition of an edge flow by two independent LSQR solves. Only the residuals of
/// the solves are used, so rank deficiency of the boundary operators is harmless.
inline HodgeComponents decompose(const NormalizedL1& l, const Eigen::VectorXd& flow, Flavor flavor,
                                 const LsqrOptions& opt = {})
{
    if (static_cast<std::size_t>(flow.size()) != l.n1()) {
        throw DimensionError("edge flow has length " + std::to_string(flow.size()) + ", expected " +
                             std::to_string(l.n1()));
    }
    if (flavor == Flavor::normalized) {
        HodgeComponents h = decompose(l, flow.cwiseProduct(l.d2_inv_sqrt()), Flavor::symmetrized, opt);
        h.gradient = h.gradient.cwiseProduct(l.d2_sqrt());
        h.curl = h.curl.cwiseProduct(l.d2_sqrt());
        h.harmonic = h.harmonic.cwiseProduct(l.d2_sqrt());
        h.flavor = Flavor::normalized;
        return h;
    }

    const bool sym = flavor == Flavor::symmetrized;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(l.n1()));
    const Eigen::VectorXd& grad_w = sym ? l.d2_sqrt() : ones;
    const Eigen::VectorXd& curl_w = sym ? l.d2_inv_sqrt() : ones;
    const auto& b1 = l.b1();
    const auto& b2 = l.b2();

    // A1 = W_g B1^T (n1 x n0), A2 = W_c B2 (n1 x n2)
    const LinearMap a1 = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd y;
        b1.apply_transpose(p, y);
        return Eigen::VectorXd(y.cwiseProduct(grad_w));
    };
    const LinearMap a1t = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd y;
        b1.apply(Eigen::VectorXd(x.cwiseProduct(grad_w)), y);
        return y;
    };
    const LinearMap a2 = [&](const Eigen::VectorXd& w) {
        Eigen::VectorXd y;
        b2.apply(w, y);
        return Eigen::VectorXd(y.cwiseProduct(curl_w));
    };
    const LinearMap a2t = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd y;
        b2.apply_transpose(Eigen::VectorXd(x.cwiseProduct(curl_w)), y);
        return y;
    };

    LsqrOptions o = opt;
    if (o.max_iterations == 0) o.max_iterations = 10 * (l.n0() + l.n1() + l.n2());

    HodgeComponents h;
    h.flavor = flavor;
    const auto sp = lsqr(a1, a1t, l.n0(), flow, o);
    const auto sw = lsqr(a2, a2t, l.n2(), flow, o);
    const Eigen::VectorXd ep = a1(sp.x) - flow;
    const Eigen::VectorXd ew = a2(sw.x) - flow;
    h.gradient = ep + flow;
    h.curl = ew + flow;
    h.harmonic = flow - h.gradient - h.curl;
    h.gradient_residual = ep.norm();
    h.curl_residual = ew.norm();
    h.gradient_iterations = sp.iterations;
    h.curl_iterations = sw.iterations;
    return h;
}

}  // namespace hodgewalk
