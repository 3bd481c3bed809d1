#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hodgewalk/complex.hpp"

namespace hodgewalk {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Delaunay triangulation by Bowyer-Watson insertion (O(n^2), intended for a few thousand
/// points). Returns triangles as sorted index triples.
inline std::vector<std::array<std::size_t, 3>> delaunay(const std::vector<Point2>& pts)
{
    const std::size_t n = pts.size();
    if (n < 3) return {};
    double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (const auto& p : pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const double span = std::max({maxx - minx, maxy - miny, 1e-12});
    const double cx = 0.5 * (minx + maxx), cy = 0.5 * (miny + maxy);
    std::vector<Point2> p = pts;
    // A far-away super triangle; near-collinear hull triples have huge circumcircles that must
    // not reach its corners.
    const double far = 1e5 * span;
    p.push_back({cx - far, cy - far});
    p.push_back({cx + far, cy - far});
    p.push_back({cx, cy + far});

    struct Tri {
        std::array<std::size_t, 3> v;
        double ccx, ccy, r2;
    };
    auto make = [&p](std::size_t a, std::size_t b, std::size_t c) {
        const double ax = p[a].x, ay = p[a].y, bx = p[b].x, by = p[b].y, qx = p[c].x, qy = p[c].y;
        const double d = 2.0 * (ax * (by - qy) + bx * (qy - ay) + qx * (ay - by));
        const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = qx * qx + qy * qy;
        const double ux = (a2 * (by - qy) + b2 * (qy - ay) + c2 * (ay - by)) / d;
        const double uy = (a2 * (qx - bx) + b2 * (ax - qx) + c2 * (bx - ax)) / d;
        return Tri{{a, b, c}, ux, uy, (ax - ux) * (ax - ux) + (ay - uy) * (ay - uy)};
    };

    std::vector<Tri> tris{make(n, n + 1, n + 2)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::array<std::size_t, 2>> boundary;
        std::vector<Tri> keep;
        keep.reserve(tris.size() + 2);
        for (const auto& t : tris) {
            const double dx = p[i].x - t.ccx, dy = p[i].y - t.ccy;
            if (dx * dx + dy * dy < t.r2) {
                for (int k = 0; k < 3; ++k) {
                    std::array<std::size_t, 2> e{t.v[k], t.v[(k + 1) % 3]};
                    if (e[0] > e[1]) std::swap(e[0], e[1]);
                    boundary.push_back(e);
                }
            } else {
                keep.push_back(t);
            }
        }
        // Edges shared by two removed triangles are interior to the cavity.
        std::sort(boundary.begin(), boundary.end());
        for (std::size_t k = 0; k < boundary.size(); ++k) {
            const bool dup = (k + 1 < boundary.size() && boundary[k] == boundary[k + 1]) ||
                             (k > 0 && boundary[k] == boundary[k - 1]);
            if (!dup) keep.push_back(make(boundary[k][0], boundary[k][1], i));
        }
        tris = std::move(keep);
    }

    std::vector<std::array<std::size_t, 3>> out;
    for (const auto& t : tris) {
        if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
        auto v = t.v;
        std::sort(v.begin(), v.end());
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Disk {
    Point2 center;
    double radius = 0.0;
};

inline double segment_distance(const Point2& a, const Point2& b, const Point2& c)
{
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((c.x - a.x) * dx + (c.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double px = a.x + t * dx - c.x, py = a.y + t * dy - c.y;
    return std::sqrt(px * px + py * py);
}

struct PlanarComplex {
    SimplicialComplex complex;
    std::vector<Point2> points;  // indexed by vertex id
};

/// Uniform random points in the unit square, Delaunay-triangulated; edges meeting any of the
/// disks are removed and every remaining 3-clique becomes a filled triangle.
inline PlanarComplex punctured_delaunay(std::size_t n_points, const std::vector<Disk>& holes, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts(n_points);
    for (auto& q : pts) {
        q.x = u(rng);
        q.y = u(rng);
    }
    std::vector<std::array<std::size_t, 2>> edges;
    for (const auto& t : delaunay(pts)) {
        edges.push_back({t[0], t[1]});
        edges.push_back({t[0], t[2]});
        edges.push_back({t[1], t[2]});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::pair<std::size_t, std::size_t>> kept;
    for (const auto& e : edges) {
        bool hit = false;
        for (const auto& d : holes) hit = hit || segment_distance(pts[e[0]], pts[e[1]], d.center) <= d.radius;
        if (!hit) kept.emplace_back(e[0], e[1]);
    }
    PlanarComplex out;
    out.complex = clique_complex<std::size_t>(kept);
    out.points.reserve(out.complex.n0());
    for (const auto& label : out.complex.labels()) out.points.push_back(pts[std::stoul(label)]);
    return out;
}

/// The seeded two-hole example: 400 points, two disjoint circular holes.
inline PlanarComplex two_hole_complex(std::uint64_t seed = 7)
{
    return punctured_delaunay(400, {{{0.3, 0.3}, 0.12}, {{0.7, 0.65}, 0.12}}, seed);
}

struct CliqueRing {
    SimplicialComplex complex;
    std::size_t bulk_edge = 0;    // inside the large clique, away from the bridge
    std::size_t bridge_edge = 0;  // the single edge joining the ring to the large clique
    std::size_t cycle_edge = 0;   // a ring edge between two small cliques
};

/// Four 8-cliques C0..C3 joined in a ring by single edges, plus a 30-clique attached to C0 by a
/// single bridge edge. Vertex ids: C_i = 8i..8i+7, large clique = 32..61. Ring edges run from
/// node 8i (in C_i) to node 8(i+1)+1 (in C_{i+1}); the bridge is (2, 32). The wiring is
/// mirror-symmetric about the axis through the bridge (C1 <-> C3, C0 and C2 fixed), so
/// reflection-odd components such as the harmonic part vanish exactly for reflection-even inputs.
inline CliqueRing clique_ring()
{
    std::vector<std::pair<int, int>> e;
    auto clique = [&e](int first, int size) {
        for (int a = first; a < first + size; ++a)
            for (int b = a + 1; b < first + size; ++b) e.emplace_back(a, b);
    };
    for (int i = 0; i < 4; ++i) clique(8 * i, 8);
    clique(32, 30);
    for (int i = 0; i < 4; ++i) e.emplace_back(8 * i, 8 * ((i + 1) % 4) + 1);
    e.emplace_back(2, 32);
    CliqueRing r;
    r.complex = clique_complex<int>(e);
    auto id = [&r](int label) { return *r.complex.find_vertex(std::to_string(label)); };
    r.bulk_edge = r.complex.edge_index(id(40), id(41));
    r.bridge_edge = r.complex.edge_index(id(2), id(32));
    r.cycle_edge = r.complex.edge_index(id(16), id(25));
    return r;
}

}  // namespace hodgewalk
