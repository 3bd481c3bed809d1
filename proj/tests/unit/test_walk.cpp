#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hodgewalk/laplacian.hpp"
#include "hodgewalk/walk.hpp"
#include "support/oracles.hpp"

using namespace hodgewalk;

namespace {

Eigen::MatrixXd exact_p_hat(const SimplicialComplex& c) { return build_lifted_transition<double>(c).p_hat.to_dense(); }

}  // namespace

TEST(Walk, OneStepMatchesTransitionColumns)
{
    const auto c = oracle::seven_vertex();
    const WalkSimulator sim(c);
    const Eigen::MatrixXd p = exact_p_hat(c);
    const std::size_t n = 100000;
    std::size_t violations = 0;
    for (std::size_t s = 0; s < sim.states(); ++s) {
        std::mt19937_64 rng(splitmix64(1000 + s));
        std::vector<double> count(sim.states(), 0.0);
        for (std::size_t i = 0; i < n; ++i) count[sim.step(s, rng)] += 1.0;
        for (std::size_t t = 0; t < sim.states(); ++t) {
            const double q = p(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s));
            const double freq = count[t] / static_cast<double>(n);
            if (q == 0.0) {
                EXPECT_EQ(count[t], 0.0) << "impossible transition " << s << " -> " << t;
                continue;
            }
            const double sigma = std::sqrt(q * (1.0 - q) / static_cast<double>(n));
            if (std::abs(freq - q) >= 3.0 * sigma) ++violations;
            EXPECT_LT(std::abs(freq - q), 5.0 * sigma) << s << " -> " << t;
        }
    }
    EXPECT_EQ(violations, 0u);
}

TEST(Walk, FreeEdgeStaysOrFlips)
{
    const auto c = oracle::seven_vertex();
    const WalkSimulator sim(c);
    const std::size_t e = c.edge_index(3, 4);  // [4,5] has no co-face
    std::mt19937_64 rng(5);
    const std::size_t n = 200000;
    double stay = 0, flip = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t t = sim.step(e, rng);
        stay += t == e;
        flip += t == sim.flip(e);
    }
    // The upper half of the step stays or flips with probability 1/4 each. Lower moves never stay
    // on [4,5], but both lower directions can reach [5,4].
    const Eigen::MatrixXd p = exact_p_hat(c);
    const auto ei = static_cast<Eigen::Index>(e), fi = static_cast<Eigen::Index>(sim.flip(e));
    EXPECT_DOUBLE_EQ(p(ei, ei), 0.25);
    EXPECT_GT(p(fi, ei), 0.25);
    const double q = p(fi, ei);
    EXPECT_NEAR(stay / n, 0.25, 4 * std::sqrt(0.25 * 0.75 / n));
    EXPECT_NEAR(flip / n, q, 4 * std::sqrt(q * (1 - q) / n));
}

TEST(Walk, FilledTriangleUpperMovesAreUniform)
{
    const auto c = oracle::filled_triangle();
    const WalkSimulator sim(c);
    // States 0..2 are [1,2],[1,3],[2,3]; 3..5 their reversals. From [1,2] the upper targets are
    // [2,1], [3,2] and [1,3].
    const std::vector<std::size_t> targets{3, 5, 1};
    const Eigen::MatrixXd p = exact_p_hat(c);
    std::mt19937_64 rng(17);
    const std::size_t n = 300000;
    std::vector<double> count(6, 0.0);
    for (std::size_t i = 0; i < n; ++i) count[sim.step(0, rng)] += 1.0;
    for (const std::size_t t : targets) {
        // P_hat mixes in lower moves; the upper share of each target is 1/2 * 1/3.
        EXPECT_GE(p(static_cast<Eigen::Index>(t), 0), 1.0 / 6.0 - 1e-15);
    }
    for (std::size_t t = 0; t < 6; ++t) {
        const double q = p(static_cast<Eigen::Index>(t), 0);
        EXPECT_NEAR(count[t] / n, q, 4 * std::sqrt(q * (1 - q) / n) + 1e-12);
    }
}

TEST(Walk, FiveStepTotalVariation)
{
    const auto c = oracle::seven_vertex();
    const WalkSimulator sim(c);
    const Eigen::MatrixXd p = exact_p_hat(c);
    const std::size_t start = c.edge_index(1, 2);
    Eigen::VectorXd analytic = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sim.states()));
    analytic(static_cast<Eigen::Index>(start)) = 1.0;
    for (int t = 0; t < 5; ++t) analytic = p * analytic;
    const auto run = sim.run(start, 5, 100000, 42);
    EXPECT_LT(0.5 * (run.final_distribution - analytic).lpNorm<1>(), 0.01);
}

TEST(Walk, ZeroStepsIsPointMass)
{
    const auto c = oracle::seven_vertex();
    const WalkSimulator sim(c);
    const auto run = sim.run(7, 0, 10, 1);
    EXPECT_EQ(run.final_distribution(7), 1.0);
    EXPECT_EQ(run.final_distribution.sum(), 1.0);
    EXPECT_EQ(run.visit_frequency(7), 1.0);
}

TEST(Walk, DeterministicAcrossThreadCounts)
{
    const auto c = oracle::er_clique_complex(15, 0.3, 3);
    const WalkSimulator sim(c);
    const auto a = sim.run(0, 50, 257, 99, 1);
    const auto b = sim.run(0, 50, 257, 99, 4);
    const auto d = sim.run(0, 50, 257, 99, 4);
    EXPECT_EQ(a.final_states, b.final_states);
    EXPECT_EQ(b.final_states, d.final_states);
    EXPECT_EQ(a.visit_frequency, b.visit_frequency);
    const auto other = sim.run(0, 50, 257, 100, 1);
    EXPECT_NE(a.final_states, other.final_states);
}

TEST(Walk, VisitFrequencyIsADistribution)
{
    const auto c = oracle::seven_vertex();
    const WalkSimulator sim(c);
    const auto run = sim.run(3, 20, 100, 8);
    EXPECT_NEAR(run.visit_frequency.sum(), 1.0, 1e-12);
    EXPECT_NEAR(run.final_distribution.sum(), 1.0, 1e-12);
}

TEST(Walk, SigmaSymmetry)
{
    const auto c = oracle::seven_vertex();
    const WalkSimulator sim(c);
    const std::size_t s = c.edge_index(1, 3);
    const auto a = sim.run(s, 7, 20000, 1);
    const auto b = sim.run(sim.flip(s), 7, 20000, 2);
    std::vector<double> xa, xb;
    for (const std::size_t t : a.final_states) xa.push_back(static_cast<double>(t));
    for (const std::size_t t : b.final_states) xb.push_back(static_cast<double>(sim.flip(t)));
    EXPECT_GT(ks_two_sample(xa, xb).p_value, 0.01);
}

TEST(Walk, Errors)
{
    const auto c = oracle::seven_vertex();
    const WalkSimulator sim(c);
    std::mt19937_64 rng(1);
    EXPECT_THROW(sim.step(20, rng), IndexError);
    EXPECT_THROW(sim.run(20, 1, 1, 1), IndexError);
    EXPECT_THROW(sim.run(0, 1, 0, 1), ParameterError);
}

TEST(KolmogorovSmirnov, Basics)
{
    std::vector<double> a{1, 2, 3, 4, 5};
    const auto same = ks_two_sample(a, a);
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_EQ(same.p_value, 1.0);

    std::vector<double> lo(200), hi(200);
    for (int i = 0; i < 200; ++i) {
        lo[static_cast<std::size_t>(i)] = i;
        hi[static_cast<std::size_t>(i)] = 1000 + i;
    }
    const auto apart = ks_two_sample(lo, hi);
    EXPECT_EQ(apart.statistic, 1.0);
    EXPECT_LT(apart.p_value, 1e-10);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<double> x(2000), y(2000);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    EXPECT_GT(ks_two_sample(x, y).p_value, 0.01);
    EXPECT_THROW(ks_two_sample({}, a), ParameterError);
}
