#include <gtest/gtest.h>

#include <random>

#include "hodgewalk/hodge.hpp"
#include "support/oracles.hpp"

using namespace hodgewalk;

namespace {

Eigen::VectorXd random_flow(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
    return v;
}

struct Projectors {
    Eigen::MatrixXd grad, curl;
};

// Pseudoinverse projectors built from the hand-written boundary matrices.
Projectors dense_projectors(const SimplicialComplex& c, Flavor flavor)
{
    const Eigen::MatrixXd b1 = oracle::dense_b1(c);
    const Eigen::MatrixXd b2 = oracle::dense_b2(c);
    if (flavor == Flavor::unnormalized) return {oracle::range_projector(b1.transpose()), oracle::range_projector(b2)};
    const Eigen::VectorXd s = oracle::dense_weights(b1, b2).d2.cwiseSqrt();
    Projectors p{oracle::range_projector(s.asDiagonal() * b1.transpose()),
                 oracle::range_projector(s.cwiseInverse().asDiagonal() * b2)};
    if (flavor == Flavor::normalized) {
        p.grad = s.asDiagonal() * p.grad * s.cwiseInverse().asDiagonal();
        p.curl = s.asDiagonal() * p.curl * s.cwiseInverse().asDiagonal();
    }
    return p;
}

std::vector<SimplicialComplex> suite()
{
    std::vector<SimplicialComplex> out{oracle::seven_vertex(), oracle::hollow_triangle(), oracle::filled_triangle()};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) out.push_back(oracle::er_clique_complex(14, 0.3, seed));
    return out;
}

}  // namespace

TEST(Decompose, SevenVertexSignatures)
{
    const auto c = oracle::seven_vertex();
    NormalizedL1 l(c);
    const Eigen::VectorXd flow = oracle::seven_vertex_flow();
    const auto h = decompose(l, flow, Flavor::unnormalized);

    // Curl lives on edges of the two filled triangles only: [1,2],[1,3],[2,3],[2,4],[3,4].
    for (const Eigen::Index e : {4, 6, 7, 8, 9}) EXPECT_NEAR(h.curl(e), 0.0, 1e-10) << e;
    EXPECT_GT(h.curl.norm(), 1e-3);

    // Harmonic part sums to zero around each filled triangle and is a cycle.
    const Eigen::MatrixXd b1 = oracle::seven_vertex_b1();
    const Eigen::MatrixXd b2 = oracle::seven_vertex_b2();
    EXPECT_LT((b2.transpose() * h.harmonic).norm(), 1e-9);
    EXPECT_LT((b1 * h.harmonic).norm(), 1e-9);
    // ... and circulates the unfilled cycles 2-4-5-6 and 4-5-7.
    for (const Eigen::Index e : {4, 6, 7, 8, 9}) EXPECT_GT(std::abs(h.harmonic(e)), 1e-2) << e;

    EXPECT_LT((h.gradient + h.curl + h.harmonic - flow).norm(), 1e-8 * flow.norm());
}

TEST(Decompose, PureGradient)
{
    const auto c = oracle::seven_vertex();
    NormalizedL1 l(c);
    Eigen::VectorXd p(7);
    p << 3, -1, 2, 0.5, -4, 1, 2;
    const Eigen::VectorXd g0 = oracle::seven_vertex_b1().transpose() * p;
    const auto h = decompose(l, g0, Flavor::unnormalized);
    EXPECT_LT((h.gradient - g0).norm(), 1e-8 * g0.norm());
    EXPECT_LT(h.curl.norm(), 1e-8 * g0.norm());
    EXPECT_LT(h.harmonic.norm(), 1e-8 * g0.norm());
}

TEST(Decompose, HollowTriangleIsHarmonic)
{
    const auto c = oracle::hollow_triangle();
    NormalizedL1 l(c);
    Eigen::VectorXd flow(3);
    flow << 1, -1, 1;
    for (const Flavor f : {Flavor::unnormalized, Flavor::symmetrized, Flavor::normalized}) {
        const auto h = decompose(l, flow, f);
        EXPECT_LT(h.gradient.norm(), 1e-10);
        EXPECT_LT(h.curl.norm(), 1e-10);
        EXPECT_LT((h.harmonic - flow).norm(), 1e-10);
    }
}

TEST(Decompose, MatchesPseudoinverseProjectors)
{
    std::uint64_t seed = 100;
    for (const auto& c : suite()) {
        NormalizedL1 l(c);
        for (const Flavor f : {Flavor::unnormalized, Flavor::symmetrized, Flavor::normalized}) {
            const auto p = dense_projectors(c, f);
            const Eigen::VectorXd flow = random_flow(c.n1(), ++seed);
            const auto h = decompose(l, flow, f);
            EXPECT_LT((h.gradient - p.grad * flow).lpNorm<Eigen::Infinity>(), 1e-7) << to_string(f);
            EXPECT_LT((h.curl - p.curl * flow).lpNorm<Eigen::Infinity>(), 1e-7) << to_string(f);
            EXPECT_EQ(h.flavor, f);
        }
    }
}

TEST(Decompose, RecompositionAndOrthogonality)
{
    std::uint64_t seed = 0;
    for (const auto& c : suite()) {
        NormalizedL1 l(c);
        const Eigen::VectorXd w = l.d2().cwiseInverse();
        for (int rep = 0; rep < 5; ++rep) {
            const Eigen::VectorXd flow = random_flow(c.n1(), ++seed);
            const double n2 = flow.squaredNorm();
            for (const Flavor f : {Flavor::unnormalized, Flavor::symmetrized}) {
                const auto h = decompose(l, flow, f);
                EXPECT_LT((h.gradient + h.curl + h.harmonic - flow).norm(), 1e-8 * flow.norm());
                EXPECT_LT(std::abs(h.gradient.dot(h.curl)), 1e-8 * n2);
                EXPECT_LT(std::abs(h.gradient.dot(h.harmonic)), 1e-8 * n2);
                EXPECT_LT(std::abs(h.curl.dot(h.harmonic)), 1e-8 * n2);
            }
            // The normalized flavor is orthogonal in the D2^-1 inner product.
            const auto h = decompose(l, flow, Flavor::normalized);
            const double scale = flow.dot(w.asDiagonal() * flow);
            EXPECT_LT((h.gradient + h.curl + h.harmonic - flow).norm(), 1e-8 * flow.norm());
            EXPECT_LT(std::abs(h.gradient.dot(w.asDiagonal() * h.curl)), 1e-8 * scale);
            EXPECT_LT(std::abs(h.gradient.dot(w.asDiagonal() * h.harmonic)), 1e-8 * scale);
            EXPECT_LT(std::abs(h.curl.dot(w.asDiagonal() * h.harmonic)), 1e-8 * scale);
        }
    }
}

TEST(Decompose, HarmonicPartIsInKernel)
{
    std::uint64_t seed = 50;
    for (const auto& c : suite()) {
        NormalizedL1 l(c);
        const Eigen::VectorXd flow = random_flow(c.n1(), ++seed);
        const auto hs = decompose(l, flow, Flavor::symmetrized);
        EXPECT_LE(l.apply_symmetric(hs.harmonic).norm(), 1e-7 * flow.norm());
        const auto hn = decompose(l, flow, Flavor::normalized);
        EXPECT_LE(l.apply(hn.harmonic).norm(), 1e-7 * flow.norm());
        const auto hu = decompose(l, flow, Flavor::unnormalized);
        const Eigen::MatrixXd b1 = oracle::dense_b1(c), b2 = oracle::dense_b2(c);
        EXPECT_LE((b1 * hu.harmonic).norm() + (b2.transpose() * hu.harmonic).norm(), 1e-7 * flow.norm());
    }
}

TEST(Decompose, ComponentsLieInTheirRanges)
{
    const auto c = oracle::er_clique_complex(16, 0.3, 9);
    NormalizedL1 l(c);
    const auto p = dense_projectors(c, Flavor::symmetrized);
    const auto h = decompose(l, random_flow(c.n1(), 4), Flavor::symmetrized);
    EXPECT_LT((p.grad * h.gradient - h.gradient).norm(), 1e-8 * h.gradient.norm());
    EXPECT_LT((p.curl * h.curl - h.curl).norm(), 1e-8 * h.curl.norm());
}

TEST(Decompose, Idempotent)
{
    std::uint64_t seed = 70;
    for (const auto& c : suite()) {
        NormalizedL1 l(c);
        const Eigen::VectorXd flow = random_flow(c.n1(), ++seed);
        for (const Flavor f : {Flavor::unnormalized, Flavor::symmetrized, Flavor::normalized}) {
            const auto h = decompose(l, flow, f);
            const auto again = decompose(l, h.gradient, f);
            const double tol = 1e-8 * std::max(1.0, flow.norm());
            EXPECT_LT((again.gradient - h.gradient).norm(), tol);
            EXPECT_LT(again.curl.norm(), tol);
            EXPECT_LT(again.harmonic.norm(), tol);
        }
    }
}

TEST(Decompose, ZeroFlowAndEmptyOperators)
{
    const auto c = oracle::hollow_triangle();
    NormalizedL1 l(c);
    const auto h = decompose(l, Eigen::VectorXd::Zero(3), Flavor::symmetrized);
    EXPECT_EQ(h.gradient.norm(), 0.0);
    EXPECT_EQ(h.harmonic.norm(), 0.0);
    EXPECT_EQ(h.gradient_iterations, 0u);
}

TEST(Decompose, Errors)
{
    const auto c = oracle::seven_vertex();
    NormalizedL1 l(c);
    EXPECT_THROW(decompose(l, Eigen::VectorXd::Zero(4), Flavor::symmetrized), DimensionError);
    EXPECT_THROW(parse_flavor("weighted"), ParameterError);
    EXPECT_EQ(parse_flavor("normalized"), Flavor::normalized);
    LsqrOptions tight;
    tight.max_iterations = 1;
    tight.atol = tight.btol = 1e-30;
    EXPECT_THROW(decompose(l, oracle::seven_vertex_flow(), Flavor::symmetrized, tight), ConvergenceError);
}
