#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/errors.hpp"
#include "hodgewalk/laplacian.hpp"
#include "hodgewalk/spectral.hpp"

namespace hodgewalk {

/// Edge flow of a vertex walk: +1 per traversal along the reference orientation, -1 per
/// traversal against it. Revisits accumulate.
inline Eigen::VectorXd trajectory_flow(const SimplicialComplex& c, const std::vector<std::size_t>& vertices)
{
    if (vertices.size() < 2) throw InvalidTrajectory("trajectory needs at least one step", 0);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c.n1()));
    for (std::size_t t = 1; t < vertices.size(); ++t) {
        const std::size_t a = vertices[t - 1];
        const std::size_t b = vertices[t];
        const auto e = c.find_edge(a, b);
        if (!e) {
            throw InvalidTrajectory("step " + std::to_string(t) + " (" + std::to_string(a) + " -> " +
                                        std::to_string(b) + ") is not an edge",
                                    t);
        }
        f(static_cast<Eigen::Index>(*e)) += a < b ? 1.0 : -1.0;
    }
    return f;
}

/// Projection of edges, flows and trajectories onto an orthonormal basis H of the harmonic space.
class HarmonicEmbedding {
public:
    HarmonicEmbedding(const SimplicialComplex& c, Eigen::MatrixXd basis) : complex_(&c), h_(std::move(basis))
    {
        if (static_cast<std::size_t>(h_.rows()) != c.n1()) throw DimensionError("basis rows differ from n1");
    }

    static HarmonicEmbedding build(const SimplicialComplex& c, const SpectrumOptions& opt = {})
    {
        return HarmonicEmbedding(c, harmonic_basis(NormalizedL1(c), opt));
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(h_.cols()); }
    const Eigen::MatrixXd& basis() const noexcept { return h_; }

    /// H^T f
    Eigen::VectorXd project(const Eigen::VectorXd& flow) const
    {
        if (flow.size() != h_.rows()) throw DimensionError("flow length differs from n1");
        return h_.transpose() * flow;
    }

    /// ||H H^T f||, independent of the choice of orthonormal basis.
    double projector_norm(const Eigen::VectorXd& flow) const { return (h_ * project(flow)).norm(); }

    Eigen::VectorXd embed_edge(std::size_t e, int direction = 1) const
    {
        if (e >= static_cast<std::size_t>(h_.rows())) throw IndexError("edge index out of range");
        if (direction != 1 && direction != -1) throw ParameterError("direction must be +1 or -1");
        return static_cast<double>(direction) * h_.row(static_cast<Eigen::Index>(e)).transpose();
    }

    /// Points H^T f_t after each step t = 1..m; the last one embeds the whole trajectory.
    std::vector<Eigen::VectorXd> embed_trajectory(const std::vector<std::size_t>& vertices) const
    {
        trajectory_flow(*complex_, vertices);  // validates every step up front
        std::vector<Eigen::VectorXd> points;
        points.reserve(vertices.size() - 1);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(h_.cols());
        for (std::size_t t = 1; t < vertices.size(); ++t) {
            const std::size_t a = vertices[t - 1];
            const std::size_t b = vertices[t];
            p += embed_edge(*complex_->find_edge(a, b), a < b ? 1 : -1);
            points.push_back(p);
        }
        return points;
    }

private:
    const SimplicialComplex* complex_;
    Eigen::MatrixXd h_;
};

/// (u_1 ... u_k')^T f with eigenvectors of L1^s in ascending eigenvalue order.
inline Eigen::VectorXd spectral_embed(const SpectralDecomposition& s, const Eigen::VectorXd& flow, std::size_t k_prime)
{
    if (k_prime > static_cast<std::size_t>(s.eigenvectors.cols())) {
        throw DimensionError("k' = " + std::to_string(k_prime) + " exceeds the " +
                             std::to_string(s.eigenvectors.cols()) + " computed eigenvectors");
    }
    if (flow.size() != s.eigenvectors.rows()) throw DimensionError("flow length differs from n1");
    return s.eigenvectors.leftCols(static_cast<Eigen::Index>(k_prime)).transpose() * flow;
}

}  // namespace hodgewalk
