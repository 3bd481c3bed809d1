#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/errors.hpp"
#include "hodgewalk/io.hpp"
#include "hodgewalk/synthetic.hpp"

namespace hodgewalk {

/// Non-fatal problems found while ingesting (rejected tracks, unlabeled nodes, split trajectories).
struct IngestReport {
    std::vector<std::string> warnings;
    void warn(std::string w) { warnings.push_back(std::move(w)); }
};

// ---------------------------------------------------------------------------------------------
// Drifter tracks

struct GeoSample {
    double time_hours = 0.0;  // hours since 1970-01-01T00:00Z
    double lat = 0.0;
    double lon = 0.0;
};

struct GeoTrack {
    std::string id;
    std::vector<GeoSample> samples;
};

struct BoundingBox {
    double lat_min = -90.0;
    double lat_max = 90.0;
    double lon_min = -180.0;
    double lon_max = 180.0;

    bool contains(double lat, double lon) const
    {
        return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
    }
    double lat_center() const { return 0.5 * (lat_min + lat_max); }
    double lon_center() const { return 0.5 * (lon_min + lon_max); }
};

struct TrackOptions {
    BoundingBox bbox;
    double min_active_days = 90.0;  // measured on the whole track, before clipping to the box
    double cadence_hours = 12.0;
    double max_gap_factor = 1.5;    // a step longer than this many cadences splits the track
};

namespace detail {

inline bool parse_int(std::string_view s, int& out)
{
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, out);
    return r.ec == std::errc{} && r.ptr == end;
}

/// ISO-8601 date or date-time ("2005-03-01", "2005-03-01T06:00:00Z", "2005-03-01 06:00") or a
/// plain number of seconds since the Unix epoch. Returns hours since the epoch.
inline std::optional<double> parse_timestamp(std::string_view s)
{
    s = trim(s);
    if (s.size() >= 10 && s[4] == '-' && s[7] == '-') {
        int y = 0, m = 0, d = 0;
        if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) || !parse_int(s.substr(8, 2), d)) {
            return std::nullopt;
        }
        const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                              std::chrono::day{static_cast<unsigned>(d)}};
        if (!ymd.ok()) return std::nullopt;
        double hours = 24.0 * static_cast<double>(std::chrono::sys_days{ymd}.time_since_epoch().count());
        std::string_view rest = s.substr(10);
        if (!rest.empty()) {
            if (rest[0] != 'T' && rest[0] != ' ') return std::nullopt;
            rest = rest.substr(1);
            if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
            const auto parts = split(rest, ':');
            if (parts.empty() || parts.size() > 3) return std::nullopt;
            int hh = 0, mm = 0;
            double ss = 0.0;
            if (!parse_int(parts[0], hh)) return std::nullopt;
            if (parts.size() > 1 && !parse_int(parts[1], mm)) return std::nullopt;
            if (parts.size() > 2 && !parse_double(parts[2], ss)) return std::nullopt;
            hours += hh + mm / 60.0 + ss / 3600.0;
        }
        return hours;
    }
    double secs = 0.0;
    if (parse_double(s, secs)) return secs / 3600.0;
    return std::nullopt;
}

inline std::vector<std::string_view> split_fields(std::string_view line)
{
    auto f = line.find(',') != std::string_view::npos ? split(line, ',') : split_ws(line);
    for (auto& x : f) x = trim(x);
    return f;
}

inline std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

}  // namespace detail

/// Reads drifter positions from CSV with columns id, timestamp, lat, lon. An optional header row
/// may name the columns in any order (id/buoy, time/timestamp/date, lat/latitude, lon/longitude).
///
/// Rows are grouped by id in order of appearance. A track whose timestamps are not strictly
/// increasing is rejected with a warning. Tracks active for less than `min_active_days` are
/// dropped. The rest are clipped to the bounding box and split wherever consecutive kept samples
/// are more than `max_gap_factor` cadences apart; pieces with fewer than two samples are dropped.
/// Pieces of a track are named "<id>#<k>" when a track splits.
inline std::vector<GeoTrack> load_tracks(std::istream& is, const TrackOptions& opt = {}, IngestReport* report = nullptr)
{
    IngestReport local;
    IngestReport& rep = report ? *report : local;
    std::array<std::size_t, 4> col{0, 1, 2, 3};  // id, time, lat, lon
    std::map<std::string, std::size_t> index;
    std::vector<GeoTrack> raw;
    std::set<std::string> broken;

    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto f = detail::split_fields(t);
        if (!seen_data) {
            seen_data = true;
            double probe = 0.0;
            if (f.size() >= 4 && !detail::parse_double(f[2], probe)) {
                // Header row.
                std::array<bool, 4> found{};
                for (std::size_t i = 0; i < f.size(); ++i) {
                    const auto name = detail::lower(f[i]);
                    auto set = [&](std::size_t k) {
                        col[k] = i;
                        found[k] = true;
                    };
                    if (name == "id" || name == "buoy" || name == "buoy_id" || name == "drifter") set(0);
                    else if (name == "time" || name == "timestamp" || name == "date" || name == "datetime") set(1);
                    else if (name == "lat" || name == "latitude") set(2);
                    else if (name == "lon" || name == "long" || name == "longitude") set(3);
                }
                if (!std::all_of(found.begin(), found.end(), [](bool b) { return b; })) {
                    throw ParseError("header must name id, timestamp, lat and lon columns", lineno);
                }
                continue;
            }
        }
        const std::size_t need = *std::max_element(col.begin(), col.end()) + 1;
        if (f.size() < need) throw ParseError("expected at least " + std::to_string(need) + " fields", lineno);
        GeoSample s;
        const auto time = detail::parse_timestamp(f[col[1]]);
        if (!time) throw ParseError("bad timestamp '" + std::string(f[col[1]]) + "'", lineno);
        s.time_hours = *time;
        if (!detail::parse_double(f[col[2]], s.lat) || !detail::parse_double(f[col[3]], s.lon) ||
            !std::isfinite(s.lat) || !std::isfinite(s.lon) || std::abs(s.lat) > 90.0) {
            throw ParseError("bad coordinates", lineno);
        }
        const std::string id(f[col[0]]);
        auto [it, inserted] = index.try_emplace(id, raw.size());
        if (inserted) raw.push_back({id, {}});
        auto& track = raw[it->second].samples;
        if (!track.empty() && s.time_hours <= track.back().time_hours && !broken.count(id)) {
            broken.insert(id);
            rep.warn("track " + id + ": timestamps not increasing at line " + std::to_string(lineno) + "; rejected");
        }
        track.push_back(s);
    }

    std::vector<GeoTrack> out;
    const double max_gap = opt.max_gap_factor * opt.cadence_hours;
    for (const auto& tr : raw) {
        if (broken.count(tr.id)) continue;
        const double active_days = (tr.samples.back().time_hours - tr.samples.front().time_hours) / 24.0;
        if (active_days < opt.min_active_days) continue;
        std::vector<GeoTrack> pieces;
        GeoTrack cur{tr.id, {}};
        auto flush = [&] {
            if (cur.samples.size() >= 2) pieces.push_back(cur);
            cur.samples.clear();
        };
        for (const auto& s : tr.samples) {
            if (!opt.bbox.contains(s.lat, s.lon)) {
                flush();
                continue;
            }
            if (!cur.samples.empty() && s.time_hours - cur.samples.back().time_hours > max_gap) flush();
            cur.samples.push_back(s);
        }
        flush();
        if (pieces.size() > 1) {
            for (std::size_t k = 0; k < pieces.size(); ++k) pieces[k].id = tr.id + "#" + std::to_string(k);
        }
        out.insert(out.end(), pieces.begin(), pieces.end());
    }
    return out;
}

inline std::vector<GeoTrack> load_tracks(const std::string& path, const TrackOptions& opt = {},
                                         IngestReport* report = nullptr)
{
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open " + path, 0);
    return load_tracks(is, opt, report);
}

// ---------------------------------------------------------------------------------------------
// Hexagonal binning

struct HexCell {
    int q = 0;
    int r = 0;
    auto operator<=>(const HexCell&) const = default;
};

enum class HexOrientation { flat_top, pointy_top };

/// Hexagonal grid on a Lambert azimuthal equal-area projection of the sphere. `width_deg` is the
/// corner-to-corner width of a cell expressed in degrees of latitude (arc length on the sphere).
class HexGrid {
public:
    static constexpr double earth_radius_km = 6371.0088;

    HexGrid(double lat0, double lon0, double width_deg = 1.66, HexOrientation orientation = HexOrientation::flat_top)
        : lat0_(lat0 * deg), lon0_(lon0 * deg), orientation_(orientation),
          size_km_(0.5 * width_deg * deg * earth_radius_km)
    {
        if (!(width_deg > 0.0)) throw ParameterError("hex width must be positive");
    }

    static HexGrid centered_on(const BoundingBox& b, double width_deg = 1.66,
                               HexOrientation orientation = HexOrientation::flat_top)
    {
        return HexGrid(b.lat_center(), b.lon_center(), width_deg, orientation);
    }

    double size_km() const noexcept { return size_km_; }
    HexOrientation orientation() const noexcept { return orientation_; }

    /// Projected (x, y) in km.
    Point2 project(double lat, double lon) const
    {
        const double phi = lat * deg, dl = lon * deg - lon0_;
        const double c = 1.0 + std::sin(lat0_) * std::sin(phi) + std::cos(lat0_) * std::cos(phi) * std::cos(dl);
        if (c <= 1e-12) throw ParameterError("point is antipodal to the projection centre");
        const double k = std::sqrt(2.0 / c);
        return {earth_radius_km * k * std::cos(phi) * std::sin(dl),
                earth_radius_km * k * (std::cos(lat0_) * std::sin(phi) - std::sin(lat0_) * std::cos(phi) * std::cos(dl))};
    }

    /// Inverse projection: (lat, lon) in degrees of a projected point.
    std::pair<double, double> unproject(const Point2& p) const
    {
        const double rho = std::hypot(p.x, p.y);
        if (rho == 0.0) return {lat0_ / deg, lon0_ / deg};
        if (rho > 2.0 * earth_radius_km) throw ParameterError("point outside the projected disk");
        const double c = 2.0 * std::asin(rho / (2.0 * earth_radius_km));
        const double lat = std::asin(std::cos(c) * std::sin(lat0_) + p.y * std::sin(c) * std::cos(lat0_) / rho);
        const double lon = lon0_ + std::atan2(p.x * std::sin(c),
                                              rho * std::cos(lat0_) * std::cos(c) - p.y * std::sin(lat0_) * std::sin(c));
        return {lat / deg, lon / deg};
    }

    HexCell cell_of(const Point2& p) const
    {
        double q = 0.0, r = 0.0;
        if (orientation_ == HexOrientation::flat_top) {
            q = (2.0 / 3.0 * p.x) / size_km_;
            r = (-1.0 / 3.0 * p.x + std::sqrt(3.0) / 3.0 * p.y) / size_km_;
        } else {
            q = (std::sqrt(3.0) / 3.0 * p.x - 1.0 / 3.0 * p.y) / size_km_;
            r = (2.0 / 3.0 * p.y) / size_km_;
        }
        return round(q, r);
    }

    HexCell cell(double lat, double lon) const { return cell_of(project(lat, lon)); }

    /// Projected centre of a cell.
    Point2 center(const HexCell& h) const
    {
        if (orientation_ == HexOrientation::flat_top) {
            return {size_km_ * 1.5 * h.q, size_km_ * std::sqrt(3.0) * (h.r + 0.5 * h.q)};
        }
        return {size_km_ * std::sqrt(3.0) * (h.q + 0.5 * h.r), size_km_ * 1.5 * h.r};
    }

    static bool adjacent(const HexCell& a, const HexCell& b)
    {
        const int dq = b.q - a.q, dr = b.r - a.r;
        return std::max({std::abs(dq), std::abs(dr), std::abs(dq + dr)}) == 1;
    }

private:
    static constexpr double deg = 3.14159265358979323846 / 180.0;

    static HexCell round(double q, double r)
    {
        const double s = -q - r;
        double rq = std::round(q), rr = std::round(r);
        const double rs = std::round(s);
        const double dq = std::abs(rq - q), dr = std::abs(rr - r), ds = std::abs(rs - s);
        if (dq > dr && dq > ds) rq = -rr - rs;
        else if (dr > ds) rr = -rq - rs;
        return {static_cast<int>(rq), static_cast<int>(rr)};
    }

    double lat0_, lon0_;
    HexOrientation orientation_;
    double size_km_;
};

struct TrackComplex {
    SimplicialComplex complex;
    std::vector<HexCell> cells;                        // by vertex id
    std::map<std::pair<std::size_t, std::size_t>, long> net_flow;  // (a, b), a < b: transitions a->b minus b->a
    std::vector<std::string> trajectory_ids;
    std::vector<std::vector<std::size_t>> trajectories;  // vertex sequences, every step an edge
};

struct TrackComplexOptions {
    long net_flow_threshold = 1;  // an edge needs |net transitions| >= threshold
};

/// Bins every sample to its hex cell, collapses repeats, and builds the clique complex of the
/// graph whose edges carry enough net flow. Each track is then re-expressed on that complex; a step
/// between cells that are not joined by an edge splits the trajectory.
inline TrackComplex build_complex_from_tracks(const std::vector<GeoTrack>& tracks, const HexGrid& grid,
                                              const TrackComplexOptions& opt = {}, IngestReport* report = nullptr)
{
    if (opt.net_flow_threshold < 1) throw ParameterError("net flow threshold must be at least 1");
    IngestReport local;
    IngestReport& rep = report ? *report : local;

    std::vector<std::vector<HexCell>> seqs;
    std::set<HexCell> occupied;
    for (const auto& t : tracks) {
        std::vector<HexCell> seq;
        for (const auto& s : t.samples) {
            const HexCell h = grid.cell(s.lat, s.lon);
            if (seq.empty() || seq.back() != h) seq.push_back(h);
        }
        occupied.insert(seq.begin(), seq.end());
        seqs.push_back(std::move(seq));
    }

    TrackComplex out;
    out.cells.assign(occupied.begin(), occupied.end());
    auto id_of = [&](const HexCell& h) {
        return static_cast<std::size_t>(std::lower_bound(out.cells.begin(), out.cells.end(), h) - out.cells.begin());
    };
    for (const auto& seq : seqs) {
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const std::size_t a = id_of(seq[i - 1]), b = id_of(seq[i]);
            if (a < b) ++out.net_flow[{a, b}];
            else --out.net_flow[{b, a}];
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [ab, f] : out.net_flow) {
        if (std::abs(f) >= opt.net_flow_threshold) edges.push_back(ab);
    }
    std::vector<std::size_t> all(out.cells.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    out.complex = clique_complex<std::size_t>(edges, all);

    for (std::size_t t = 0; t < seqs.size(); ++t) {
        std::vector<std::vector<std::size_t>> pieces(1);
        for (const auto& h : seqs[t]) {
            const std::size_t v = id_of(h);
            auto& cur = pieces.back();
            if (!cur.empty() && !out.complex.find_edge(cur.back(), v)) {
                rep.warn("track " + tracks[t].id + ": step " + std::to_string(cur.back()) + " -> " + std::to_string(v) +
                         " is not an edge; trajectory split");
                pieces.emplace_back();
            }
            pieces.back().push_back(v);
        }
        std::size_t k = 0;
        for (auto& p : pieces) {
            if (p.size() < 2) continue;
            out.trajectory_ids.push_back(tracks[t].id + (pieces.size() > 1 ? "/" + std::to_string(k++) : ""));
            out.trajectories.push_back(std::move(p));
        }
    }
    return out;
}

/// traj_id,step,cell_id rows.
inline void write_trajectories(std::ostream& os, const TrackComplex& tc)
{
    os << "traj_id,step,cell_id\n";
    for (std::size_t t = 0; t < tc.trajectories.size(); ++t) {
        for (std::size_t s = 0; s < tc.trajectories[t].size(); ++s) {
            os << tc.trajectory_ids[t] << ',' << s << ',' << tc.trajectories[t][s] << '\n';
        }
    }
}

// ---------------------------------------------------------------------------------------------
// Graphs with node categories

struct CategorizedComplex {
    SimplicialComplex complex;
    std::vector<std::string> categories;  // by vertex id
    std::vector<std::string> names;       // by vertex id; GML titles, or the labels themselves
};

/// Edge list (two labels per line, comma or whitespace separated) plus a category file (label and
/// class per line). Duplicate edges collapse; self-loops are skipped with a warning. Nodes listed
/// only in the category file become isolated vertices; nodes without a category get "unknown".
inline CategorizedComplex load_graph_with_categories(std::istream& edges, std::istream& categories,
                                                     IngestReport* report = nullptr)
{
    IngestReport local;
    IngestReport& rep = report ? *report : local;
    std::vector<std::pair<std::string, std::string>> e;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(edges, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == '%') continue;
        const auto f = detail::split_fields(t);
        if (f.size() < 2 || f[0].empty() || f[1].empty()) throw ParseError("expected two node labels", lineno);
        if (f[0] == f[1]) {
            rep.warn("line " + std::to_string(lineno) + ": self-loop on " + std::string(f[0]) + " skipped");
            continue;
        }
        e.emplace_back(std::string(f[0]), std::string(f[1]));
    }
    std::map<std::string, std::string> cat;
    lineno = 0;
    while (std::getline(categories, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == '%') continue;
        const auto f = detail::split_fields(t);
        if (f.size() < 2 || f[0].empty()) throw ParseError("expected a node label and a category", lineno);
        cat[std::string(f[0])] = std::string(f[1]);
    }
    std::vector<std::string> extra;
    for (const auto& [label, c] : cat) extra.push_back(label);

    CategorizedComplex out;
    out.complex = clique_complex<std::string>(e, extra);
    for (const auto& label : out.complex.labels()) {
        const auto it = cat.find(label);
        if (it == cat.end()) {
            rep.warn("node " + label + " has no category; labeled unknown");
            out.categories.push_back("unknown");
        } else {
            out.categories.push_back(it->second);
        }
        out.names.push_back(label);
    }
    return out;
}

inline CategorizedComplex load_graph_with_categories(const std::string& edge_path, const std::string& category_path,
                                                     IngestReport* report = nullptr)
{
    std::ifstream e(edge_path), c(category_path);
    if (!e) throw ParseError("cannot open " + edge_path, 0);
    if (!c) throw ParseError("cannot open " + category_path, 0);
    return load_graph_with_categories(e, c, report);
}

namespace detail {

struct GmlToken {
    std::string text;
    bool quoted = false;
    std::size_t line = 0;
};

inline std::vector<GmlToken> gml_tokens(std::istream& is)
{
    std::vector<GmlToken> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t i = 0;
        while (i < line.size()) {
            const char ch = line[i];
            if (std::isspace(static_cast<unsigned char>(ch))) {
                ++i;
            } else if (ch == '#') {
                break;
            } else if (ch == '[' || ch == ']') {
                out.push_back({std::string(1, ch), false, lineno});
                ++i;
            } else if (ch == '"') {
                const std::size_t end = line.find('"', i + 1);
                if (end == std::string::npos) throw ParseError("unterminated string", lineno);
                out.push_back({line.substr(i + 1, end - i - 1), true, lineno});
                i = end + 1;
            } else {
                std::size_t j = i;
                while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '[' &&
                       line[j] != ']') {
                    ++j;
                }
                out.push_back({line.substr(i, j - i), false, lineno});
                i = j;
            }
        }
    }
    return out;
}

}  // namespace detail

/// GML graph with `node [ id .. label ".." value ".." ]` and `edge [ source .. target .. ]`
/// records. The node `value` is the category; the single-letter codes l/c/n expand to liberal,
/// conservative and neutral. Vertex labels are the GML ids.
inline CategorizedComplex load_gml(std::istream& is, IngestReport* report = nullptr)
{
    IngestReport local;
    IngestReport& rep = report ? *report : local;
    const auto tok = detail::gml_tokens(is);
    struct Node {
        long id = 0;
        std::string label, value;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<long, long>> edges;

    auto expect_open = [&](std::size_t i) {
        if (i >= tok.size() || tok[i].text != "[" || tok[i].quoted) {
            throw ParseError("expected '['", i < tok.size() ? tok[i].line : (tok.empty() ? 0 : tok.back().line));
        }
    };
    auto as_long = [&](const detail::GmlToken& t) {
        double v = 0.0;
        if (!detail::parse_double(t.text, v) || v != std::floor(v)) throw ParseError("expected an integer", t.line);
        return static_cast<long>(v);
    };
    // Skips a value (scalar or bracketed list) starting at i; returns the index after it.
    auto skip_value = [&](std::size_t i) {
        if (i >= tok.size()) throw ParseError("missing value", tok.empty() ? 0 : tok.back().line);
        if (tok[i].text != "[" || tok[i].quoted) return i + 1;
        int depth = 0;
        for (; i < tok.size(); ++i) {
            if (!tok[i].quoted && tok[i].text == "[") ++depth;
            if (!tok[i].quoted && tok[i].text == "]" && --depth == 0) return i + 1;
        }
        throw ParseError("unbalanced brackets", tok.back().line);
    };

    std::size_t i = 0;
    while (i < tok.size() && tok[i].text != "graph") ++i;
    if (i == tok.size()) throw ParseError("no graph record", tok.empty() ? 0 : tok.back().line);
    expect_open(++i);
    ++i;
    while (i < tok.size() && !(tok[i].text == "]" && !tok[i].quoted)) {
        const std::string key = tok[i].text;
        const std::size_t line = tok[i].line;
        if (key == "node" || key == "edge") {
            expect_open(++i);
            ++i;
            Node n;
            long src = 0, dst = 0;
            bool has_id = false, has_src = false, has_dst = false;
            while (i < tok.size() && !(tok[i].text == "]" && !tok[i].quoted)) {
                const std::string k = tok[i].text;
                if (i + 1 >= tok.size()) throw ParseError("missing value for " + k, tok[i].line);
                const auto& v = tok[i + 1];
                if (k == "id") n.id = as_long(v), has_id = true;
                else if (k == "label") n.label = v.text;
                else if (k == "value") n.value = v.text;
                else if (k == "source") src = as_long(v), has_src = true;
                else if (k == "target") dst = as_long(v), has_dst = true;
                i = skip_value(i + 1);
            }
            if (i == tok.size()) throw ParseError("unterminated " + key + " record", line);
            ++i;
            if (key == "node") {
                if (!has_id) throw ParseError("node without id", line);
                nodes.push_back(n);
            } else {
                if (!has_src || !has_dst) throw ParseError("edge without source/target", line);
                if (src == dst) {
                    rep.warn("line " + std::to_string(line) + ": self-loop skipped");
                    continue;
                }
                edges.emplace_back(src, dst);
            }
        } else {
            i = skip_value(i + 1);
        }
    }

    std::map<long, const Node*> by_id;
    for (const auto& n : nodes) {
        if (!by_id.emplace(n.id, &n).second) throw ParseError("duplicate node id " + std::to_string(n.id), 0);
    }
    for (const auto& [a, b] : edges) {
        if (!by_id.count(a) || !by_id.count(b)) throw ParseError("edge references an undeclared node", 0);
    }
    std::vector<long> ids;
    for (const auto& [id, n] : by_id) ids.push_back(id);

    CategorizedComplex out;
    out.complex = clique_complex<long>(edges, ids);
    for (const auto& label : out.complex.labels()) {
        const Node& n = *by_id.at(std::stol(label));
        std::string v = n.value;
        if (v == "l") v = "liberal";
        else if (v == "c") v = "conservative";
        else if (v == "n") v = "neutral";
        if (v.empty()) {
            rep.warn("node " + label + " has no category; labeled unknown");
            v = "unknown";
        }
        out.categories.push_back(v);
        out.names.push_back(n.label.empty() ? label : n.label);
    }
    return out;
}

inline CategorizedComplex load_gml(const std::string& path, IngestReport* report = nullptr)
{
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open " + path, 0);
    return load_gml(is, report);
}

}  // namespace hodgewalk
