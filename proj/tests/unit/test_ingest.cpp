#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hodgewalk/ingest.hpp"

using namespace hodgewalk;

namespace {

constexpr double kPi = 3.14159265358979323846;

// One row per 12 hours from t = 0, latitude drifting by `drift` per row; indices in `missing` are skipped.
std::string track_csv(const std::string& id, int days, double lat, double lon, std::vector<int> missing = {},
                      double drift = 0.001)
{
    std::ostringstream os;
    for (int i = 0; i <= 2 * days; ++i) {
        if (std::find(missing.begin(), missing.end(), i) != missing.end()) continue;
        os << id << ',' << i * 43200 << ',' << lat + drift * i << ',' << lon << '\n';
    }
    return os.str();
}

GeoTrack through_cells(const HexGrid& g, const std::string& id, const std::vector<HexCell>& cells)
{
    GeoTrack t{id, {}};
    double time = 0.0;
    for (const auto& h : cells) {
        const auto [lat, lon] = g.unproject(g.center(h));
        t.samples.push_back({time, lat, lon});
        time += 12.0;
    }
    return t;
}

}  // namespace

TEST(Timestamp, Formats)
{
    EXPECT_DOUBLE_EQ(*detail::parse_timestamp("1970-01-02"), 24.0);
    EXPECT_DOUBLE_EQ(*detail::parse_timestamp("1970-01-01T12:30:00Z"), 12.5);
    EXPECT_DOUBLE_EQ(*detail::parse_timestamp("1970-01-01 06:00"), 6.0);
    EXPECT_DOUBLE_EQ(*detail::parse_timestamp("7200"), 2.0);
    EXPECT_DOUBLE_EQ(*detail::parse_timestamp("2000-03-01"), 24.0 * 11017);
    EXPECT_FALSE(detail::parse_timestamp("2001-02-30").has_value());
    EXPECT_FALSE(detail::parse_timestamp("yesterday").has_value());
}

TEST(LoadTracks, ShortTrackDropped)
{
    std::istringstream is(track_csv("a", 10, -20, 45));
    EXPECT_TRUE(load_tracks(is).empty());
}

TEST(LoadTracks, GapSplitsTrack)
{
    // Sample 40 is missing: a 24 h step, above 1.5 x 12 h.
    std::istringstream is(track_csv("a", 100, -20, 45, {40}));
    const auto t = load_tracks(is);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0].samples.size(), 40u);
    EXPECT_EQ(t[1].samples.size(), 160u);
    EXPECT_EQ(t[0].id, "a#0");
    EXPECT_EQ(t[1].id, "a#1");
}

TEST(LoadTracks, EmptyInput)
{
    std::istringstream is("");
    EXPECT_TRUE(load_tracks(is).empty());
    std::istringstream header_only("id,timestamp,lat,lon\n");
    EXPECT_TRUE(load_tracks(header_only).empty());
}

TEST(LoadTracks, HeaderInAnyOrder)
{
    std::ostringstream os;
    os << "lon,lat,buoy,time\n";
    for (int i = 0; i <= 200; ++i) os << 45 << ',' << -20 << ",b7," << i * 43200 << '\n';
    std::istringstream is(os.str());
    const auto t = load_tracks(is);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].id, "b7");
    EXPECT_EQ(t[0].samples.size(), 201u);
    EXPECT_DOUBLE_EQ(t[0].samples[3].lat, -20.0);
    EXPECT_DOUBLE_EQ(t[0].samples[3].time_hours, 36.0);
}

TEST(LoadTracks, MalformedRowReportsLine)
{
    std::istringstream is("a,0,-20,45\na,43200,-20\n");
    try {
        load_tracks(is);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream bad_lat("a,0,-95,45\n");
    EXPECT_THROW(load_tracks(bad_lat), ParseError);
    std::istringstream bad_time("a,noon,-20,45\n");
    EXPECT_THROW(load_tracks(bad_time), ParseError);
}

TEST(LoadTracks, NonMonotoneRejectedWithWarning)
{
    std::string csv = track_csv("a", 100, -20, 45) + track_csv("b", 100, -15, 50);
    csv += "a,0,-20,45\n";  // goes back in time
    std::istringstream is(csv);
    IngestReport rep;
    const auto t = load_tracks(is, {}, &rep);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].id, "b");
    ASSERT_EQ(rep.warnings.size(), 1u);
    EXPECT_NE(rep.warnings[0].find("track a"), std::string::npos);
}

TEST(LoadTracks, BoundingBoxClips)
{
    TrackOptions opt;
    opt.bbox = {-30, -10, 39, 55};
    std::ostringstream os;
    // 120 days; longitude leaves the box for days 40..49.
    for (int i = 0; i <= 240; ++i) {
        const double lon = (i >= 80 && i < 100) ? 60.0 : 45.0;
        os << "a," << i * 43200 << ",-20," << lon << '\n';
    }
    std::istringstream is(os.str());
    const auto t = load_tracks(is, opt);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0].samples.size(), 80u);
    EXPECT_EQ(t[1].samples.size(), 141u);
}

TEST(HexGrid, ProjectionIsEqualArea)
{
    const HexGrid g(-20, 47);
    const double r = HexGrid::earth_radius_km, d = 1e-4;
    for (const auto& [lat, lon] : std::vector<std::pair<double, double>>{{-20, 47}, {-28, 40}, {-11, 54}, {10, 80}}) {
        const Point2 p = g.project(lat, lon), px = g.project(lat, lon + d), py = g.project(lat + d, lon);
        const double jac = (px.x - p.x) * (py.y - p.y) - (px.y - p.y) * (py.x - p.x);
        const double sphere = r * r * std::cos(lat * kPi / 180) * (d * kPi / 180) * (d * kPi / 180);
        EXPECT_NEAR(jac / sphere, 1.0, 1e-5) << lat << "," << lon;
    }
    const Point2 c = g.project(-20, 47);
    EXPECT_NEAR(c.x, 0.0, 1e-9);
    EXPECT_NEAR(c.y, 0.0, 1e-9);
    // Distance along the central meridian is preserved to first order.
    EXPECT_NEAR(g.project(-19.9, 47).y, r * 0.1 * kPi / 180, 1e-3);
}

TEST(HexGrid, InverseProjection)
{
    const HexGrid g(-20, 47);
    for (const auto& [lat, lon] : std::vector<std::pair<double, double>>{{-25, 41}, {-12, 53}, {5, 70}}) {
        const auto [la, lo] = g.unproject(g.project(lat, lon));
        EXPECT_NEAR(la, lat, 1e-10);
        EXPECT_NEAR(lo, lon, 1e-10);
    }
}

TEST(HexGrid, CellGeometry)
{
    for (const auto orient : {HexOrientation::flat_top, HexOrientation::pointy_top}) {
        const HexGrid g(0, 0, 1.66, orient);
        const double s = g.size_km();
        EXPECT_NEAR(2 * s, 1.66 * kPi / 180 * HexGrid::earth_radius_km, 1e-9);
        const double corner0 = orient == HexOrientation::flat_top ? 0.0 : kPi / 6;
        for (int k = 0; k < 6; ++k) {
            const double a = corner0 + k * kPi / 3;
            EXPECT_EQ(g.cell_of({0.99 * s * std::cos(a), 0.99 * s * std::sin(a)}), (HexCell{0, 0}));
            EXPECT_NE(g.cell_of({1.01 * s * std::cos(a), 1.01 * s * std::sin(a)}), (HexCell{0, 0}));
            // Edge midpoints sit at the inradius sqrt(3)/2 s.
            const double m = a + kPi / 6, in = std::sqrt(3.0) / 2 * s;
            EXPECT_EQ(g.cell_of({0.99 * in * std::cos(m), 0.99 * in * std::sin(m)}), (HexCell{0, 0}));
            const HexCell across = g.cell_of({1.01 * in * std::cos(m), 1.01 * in * std::sin(m)});
            EXPECT_TRUE(HexGrid::adjacent(HexCell{0, 0}, across));
            EXPECT_NEAR(std::hypot(g.center(across).x, g.center(across).y), std::sqrt(3.0) * s, 1e-9);
        }
        for (int q = -3; q <= 3; ++q)
            for (int r = -3; r <= 3; ++r) EXPECT_EQ(g.cell_of(g.center({q, r})), (HexCell{q, r}));
    }
    EXPECT_FALSE(HexGrid::adjacent({0, 0}, {0, 0}));
    EXPECT_FALSE(HexGrid::adjacent({0, 0}, {2, -1}));
    EXPECT_TRUE(HexGrid::adjacent({0, 0}, {1, -1}));
}

TEST(HexGrid, Errors)
{
    EXPECT_THROW(HexGrid(0, 0, 0.0), ParameterError);
    const HexGrid g(0, 0);
    EXPECT_THROW(g.project(0, 180), ParameterError);
}

TEST(TrackComplex, BackAndForthHasNoEdge)
{
    const HexGrid g(-20, 47);
    const auto tc = build_complex_from_tracks({through_cells(g, "x", {{0, 0}, {1, 0}, {0, 0}})}, g);
    EXPECT_EQ(tc.complex.n0(), 2u);
    EXPECT_EQ(tc.complex.n1(), 0u);
    EXPECT_TRUE(tc.trajectories.empty());
}

TEST(TrackComplex, NetFlowAccumulates)
{
    const HexGrid g(-20, 47);
    const auto tc = build_complex_from_tracks(
        {through_cells(g, "x", {{0, 0}, {1, 0}}), through_cells(g, "y", {{0, 0}, {0, 0}, {1, 0}})}, g);
    ASSERT_EQ(tc.complex.n1(), 1u);
    EXPECT_EQ(tc.net_flow.at({0, 1}), 2);
    ASSERT_EQ(tc.trajectories.size(), 2u);
    EXPECT_EQ(tc.trajectories[1], (std::vector<std::size_t>{0, 1}));  // repeats collapse

    TrackComplexOptions strict;
    strict.net_flow_threshold = 3;
    EXPECT_EQ(build_complex_from_tracks({through_cells(g, "x", {{0, 0}, {1, 0}})}, g, strict).complex.n1(), 0u);
}

TEST(TrackComplex, LoopBecomesFilledTriangleAndStepsAreEdges)
{
    const HexGrid g(-20, 47);
    // Three mutually adjacent cells visited in a loop twice; a fourth cell visited back and forth.
    const std::vector<HexCell> loop{{0, 0}, {1, 0}, {1, -1}, {0, 0}, {1, 0}, {1, -1}, {0, 0}, {-1, 0}, {0, 0}};
    IngestReport rep;
    const auto tc = build_complex_from_tracks({through_cells(g, "x", loop)}, g, {}, &rep);
    EXPECT_EQ(tc.complex.n0(), 4u);
    EXPECT_EQ(tc.complex.n1(), 3u);
    EXPECT_EQ(tc.complex.n2(), 1u);
    for (const auto& traj : tc.trajectories)
        for (std::size_t i = 1; i < traj.size(); ++i) EXPECT_TRUE(tc.complex.find_edge(traj[i - 1], traj[i]));
    // The excursion to (-1, 0) has zero net flow, so the trajectory ends before it.
    ASSERT_EQ(tc.trajectories.size(), 1u);
    EXPECT_EQ(tc.trajectories[0].size(), 7u);
    EXPECT_FALSE(rep.warnings.empty());
    for (const auto& [ab, f] : tc.net_flow) EXPECT_LT(ab.first, ab.second);
}

TEST(TrackComplex, Deterministic)
{
    const HexGrid g(-20, 47);
    std::istringstream a(track_csv("a", 100, -25, 42, {}, 0.02) + track_csv("b", 95, -18, 50, {}, -0.02));
    const auto tracks = load_tracks(a);
    const auto x = build_complex_from_tracks(tracks, g);
    EXPECT_GE(x.complex.n1(), 2u);
    EXPECT_EQ(x.trajectories.size(), 2u);
    const auto y = build_complex_from_tracks(tracks, g);
    EXPECT_EQ(x.complex, y.complex);
    EXPECT_EQ(x.cells, y.cells);
    EXPECT_EQ(x.trajectories, y.trajectories);
    std::ostringstream out;
    write_trajectories(out, x);
    EXPECT_EQ(out.str().rfind("traj_id,step,cell_id\n", 0), 0u);
}

TEST(CategorizedGraph, EdgeListWithCategories)
{
    std::istringstream edges("# books\na b\nb,c\na c\nb a\nc d\nd d\n");
    std::istringstream cats("a liberal\nb liberal\nc conservative\ne neutral\n");
    IngestReport rep;
    const auto g = load_graph_with_categories(edges, cats, &rep);
    EXPECT_EQ(g.complex.n0(), 5u);  // a b c d e
    EXPECT_EQ(g.complex.n1(), 4u);  // duplicate b-a collapsed, self-loop dropped
    EXPECT_EQ(g.complex.n2(), 1u);
    EXPECT_EQ(g.categories, (std::vector<std::string>{"liberal", "liberal", "conservative", "unknown", "neutral"}));
    EXPECT_EQ(rep.warnings.size(), 2u);  // self-loop, d without category
}

TEST(CategorizedGraph, EdgeListErrors)
{
    std::istringstream edges("a b\nlonely\n");
    std::istringstream cats("");
    try {
        load_graph_with_categories(edges, cats);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Gml, SmallGraph)
{
    std::istringstream is(R"(Creator "test"
graph
[
  directed 0
  node [ id 0 label "First [vol. 1]" value "l" ]
  node
  [
    id 1
    label "Second"
    value "c"
    graphics [ x 1 y 2 ]
  ]
  node [ id 2 label "Third" value "n" ]
  node [ id 3 label "Fourth" ]
  edge [ source 1 target 0 ]
  edge [ source 0 target 2 ]
  edge [ source 2 target 1 ]
  edge [ source 2 target 3 ]
]
)");
    IngestReport rep;
    const auto g = load_gml(is, &rep);
    EXPECT_EQ(g.complex.n0(), 4u);
    EXPECT_EQ(g.complex.n1(), 4u);
    EXPECT_EQ(g.complex.n2(), 1u);
    EXPECT_EQ(g.categories, (std::vector<std::string>{"liberal", "conservative", "neutral", "unknown"}));
    EXPECT_EQ(g.names[0], "First [vol. 1]");
    EXPECT_EQ(rep.warnings.size(), 1u);
}

TEST(Gml, Errors)
{
    std::istringstream no_graph("node [ id 0 ]");
    EXPECT_THROW(load_gml(no_graph), ParseError);
    std::istringstream dangling("graph [ node [ id 0 ] edge [ source 0 target 5 ] ]");
    EXPECT_THROW(load_gml(dangling), ParseError);
    std::istringstream open("graph [ node [ id 0 ");
    EXPECT_THROW(load_gml(open), ParseError);
    std::istringstream quote("graph [ node [ id 0 label \"x ] ]");
    EXPECT_THROW(load_gml(quote), ParseError);
}
