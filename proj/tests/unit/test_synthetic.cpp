#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hodgewalk/spectral.hpp"
#include "hodgewalk/synthetic.hpp"
#include "support/oracles.hpp"

using namespace hodgewalk;

namespace {

// Number of points on the convex hull (Andrew's monotone chain, collinear points excluded).
std::size_t hull_size(std::vector<Point2> p)
{
    std::sort(p.begin(), p.end(), [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    auto cross = [](const Point2& o, const Point2& a, const Point2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point2> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0) --k;
        h[k++] = p[i - 1];
    }
    return k - 1;
}

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> p(n);
    for (auto& q : p) q = {u(rng), u(rng)};
    return p;
}

}  // namespace

TEST(Delaunay, SquareWithCentre)
{
    const std::vector<Point2> p{{0, 0}, {1, 0.1}, {0.9, 1}, {0.1, 0.8}, {0.5, 0.5}};
    const auto t = delaunay(p);
    ASSERT_EQ(t.size(), 4u);
    for (const auto& tri : t) EXPECT_EQ(tri[2], 4u);  // every triangle uses the centre
}

TEST(Delaunay, EmptyCircumcircleAndEulerCount)
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto p = random_points(150, seed);
        const auto tris = delaunay(p);
        EXPECT_EQ(tris.size(), 2 * p.size() - 2 - hull_size(p));
        for (const auto& [a, b, c] : tris) {
            // In-circle determinant, orientation-corrected.
            const auto& A = p[a];
            const auto& B = p[b];
            const auto& C = p[c];
            const double orient = (B.x - A.x) * (C.y - A.y) - (B.y - A.y) * (C.x - A.x);
            for (std::size_t d = 0; d < p.size(); ++d) {
                if (d == a || d == b || d == c) continue;
                const auto& D = p[d];
                const double ax = A.x - D.x, ay = A.y - D.y, bx = B.x - D.x, by = B.y - D.y, cx = C.x - D.x,
                             cy = C.y - D.y;
                const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay) +
                                   (cx * cx + cy * cy) * (ax * by - bx * ay);
                EXPECT_LE(orient > 0 ? det : -det, 1e-12);
            }
        }
    }
}

TEST(Delaunay, Degenerate)
{
    EXPECT_TRUE(delaunay({}).empty());
    EXPECT_TRUE(delaunay({{0, 0}, {1, 1}}).empty());
}

TEST(TwoHole, BettiNumbersAcrossSeeds)
{
    for (const std::uint64_t seed : {1u, 7u, 19u}) {
        const auto p = two_hole_complex(seed);
        const auto b = betti_numbers(p.complex);
        EXPECT_EQ(b.b0, 1u) << seed;
        EXPECT_EQ(b.b1, 2u) << seed;
        EXPECT_EQ(p.points.size(), p.complex.n0());
    }
}

TEST(TwoHole, KernelDimensionIsTwo)
{
    const auto p = two_hole_complex();
    NormalizedL1 l(p.complex);
    EXPECT_EQ(harmonic_basis(l).cols(), 2);
    SpectrumOptions it;
    it.force_iterative = true;
    EXPECT_EQ(harmonic_basis(l, it).cols(), 2);
}

TEST(TwoHole, Deterministic)
{
    EXPECT_EQ(two_hole_complex(3).complex, two_hole_complex(3).complex);
    EXPECT_FALSE(two_hole_complex(3).complex == two_hole_complex(4).complex);
}

TEST(TwoHole, NoEdgeCrossesAHole)
{
    const auto p = two_hole_complex();
    for (const auto& [a, b] : p.complex.edges()) {
        EXPECT_GT(segment_distance(p.points[a], p.points[b], {0.3, 0.3}), 0.12);
        EXPECT_GT(segment_distance(p.points[a], p.points[b], {0.7, 0.65}), 0.12);
    }
}

TEST(CliqueRing, Structure)
{
    const auto r = clique_ring();
    const auto& c = r.complex;
    EXPECT_EQ(c.n0(), 62u);
    EXPECT_EQ(c.n1(), 4u * 28u + 435u + 5u);
    EXPECT_EQ(c.n2(), 4u * 56u + 4060u);
    const auto b = betti_numbers(c);
    EXPECT_EQ(b.b0, 1u);
    EXPECT_EQ(b.b1, 1u);
    EXPECT_EQ(c.degree(r.bridge_edge), 0u);
    EXPECT_EQ(c.degree(r.cycle_edge), 0u);
    EXPECT_EQ(c.degree(r.bulk_edge), 28u);
}

TEST(CliqueRing, MirrorSymmetry)
{
    const auto r = clique_ring();
    const auto& c = r.complex;
    // Reflection: C1 <-> C3 with node 8+0 <-> 24+1 and 8+1 <-> 24+0; C0 swaps nodes 0 and 1; C2 swaps
    // 16 and 17; everything else is fixed.
    std::map<int, int> m;
    for (int v = 0; v < 62; ++v) m[v] = v;
    for (int k = 2; k < 8; ++k) {
        m[8 + k] = 24 + k;
        m[24 + k] = 8 + k;
    }
    m[8] = 25, m[25] = 8, m[9] = 24, m[24] = 9;
    m[0] = 1, m[1] = 0, m[16] = 17, m[17] = 16;
    for (const auto& [a, b] : c.edges()) {
        const int la = std::stoi(c.labels()[a]), lb = std::stoi(c.labels()[b]);
        const auto va = c.find_vertex(std::to_string(m[la]));
        const auto vb = c.find_vertex(std::to_string(m[lb]));
        ASSERT_TRUE(va && vb);
        EXPECT_TRUE(c.find_edge(*va, *vb).has_value()) << la << "-" << lb;
    }
}
