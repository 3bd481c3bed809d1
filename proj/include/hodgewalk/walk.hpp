#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/complex.hpp"
#include "hodgewalk/errors.hpp"

namespace hodgewalk {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct WalkRun {
    Eigen::VectorXd final_distribution;  // fraction of chains in each oriented edge after n_steps
    Eigen::VectorXd visit_frequency;     // fraction of all visited states (steps 0..n_steps)
    std::vector<std::size_t> final_states;
};

/// Random walk on oriented edges (state e: reference orientation of edge e, state n1 + e: its
/// reversal). Each step moves with probability 1/2 through lower adjacency, split evenly between
/// stepping forward (onto edges leaving the current head) and backward (onto edges entering the
/// current tail), with targets weighted by their adjusted upper degree; otherwise it moves through
/// upper adjacency, picking a co-face uniformly and then one of its three oriented edges whose
/// orientation is opposite to the current edge's within that triangle. An edge without co-faces
/// stays or flips with probability 1/2 each instead.
class WalkSimulator {
public:
    explicit WalkSimulator(const SimplicialComplex& c) : n1_(c.n1())
    {
        const std::size_t n0 = c.n0();
        std::vector<double> d2(n1_);
        for (std::size_t e = 0; e < n1_; ++e) d2[e] = static_cast<double>(std::max<std::size_t>(c.degree(e), 1));

        tail_vertex_.resize(2 * n1_);
        head_vertex_.resize(2 * n1_);
        leaving_.assign(n0, {});
        entering_.assign(n0, {});
        for (std::size_t s = 0; s < 2 * n1_; ++s) {
            const auto& e = c.edges()[s % n1_];
            tail_vertex_[s] = s < n1_ ? e[0] : e[1];
            head_vertex_[s] = s < n1_ ? e[1] : e[0];
            leaving_[tail_vertex_[s]].add(s, d2[s % n1_]);
            entering_[head_vertex_[s]].add(s, d2[s % n1_]);
        }

        cofaces_.assign(n1_, {});
        for (const auto& [i, j, k] : c.triangles()) {
            // Oriented boundary of (i, j, k): (j, k), (k, i), (i, j). `aligned` lists the states
            // carrying the triangle's orientation, `anti` their reversals.
            const std::size_t ejk = c.edge_index(j, k), eik = c.edge_index(i, k), eij = c.edge_index(i, j);
            const std::array<std::size_t, 3> aligned{ejk, n1_ + eik, eij};
            const std::array<std::size_t, 3> anti{n1_ + ejk, eik, n1_ + eij};
            const std::size_t t = triangles_.size();
            triangles_.push_back({aligned, anti});
            for (const std::size_t e : {ejk, eik, eij}) cofaces_[e].push_back(t);
        }
    }

    std::size_t states() const noexcept { return 2 * n1_; }

    template <typename Rng>
    std::size_t step(std::size_t s, Rng& rng) const
    {
        if (s >= 2 * n1_) throw IndexError("walk state out of range");
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double u = unif(rng);
        const std::size_t e = s % n1_;
        if (u < 0.25) return leaving_[head_vertex_[s]].sample(unif(rng));
        if (u < 0.5) return entering_[tail_vertex_[s]].sample(unif(rng));
        const auto& cf = cofaces_[e];
        if (cf.empty()) return u < 0.75 ? s : flip(s);
        const auto& tri = triangles_[cf[pick(cf.size(), unif(rng))]];
        const bool is_aligned = std::find(tri.aligned.begin(), tri.aligned.end(), s) != tri.aligned.end();
        const auto& targets = is_aligned ? tri.anti : tri.aligned;
        return targets[pick(3, unif(rng))];
    }

    /// Independent chains from `start`; chain c uses an mt19937_64 seeded with splitmix64(seed + c).
    WalkRun run(std::size_t start, std::size_t n_steps, std::size_t n_chains, std::uint64_t seed,
                unsigned threads = 0) const
    {
        if (start >= 2 * n1_) throw IndexError("start state out of range");
        if (n_chains == 0) throw ParameterError("need at least one chain");
        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_chains));

        const std::size_t m = 2 * n1_;
        std::vector<std::vector<std::uint64_t>> visits(threads, std::vector<std::uint64_t>(m, 0));
        WalkRun out;
        out.final_states.assign(n_chains, 0);
        auto work = [&](unsigned w) {
            for (std::size_t ch = w; ch < n_chains; ch += threads) {
                std::mt19937_64 rng(splitmix64(seed + ch));
                std::size_t s = start;
                ++visits[w][s];
                for (std::size_t t = 0; t < n_steps; ++t) {
                    s = step(s, rng);
                    ++visits[w][s];
                }
                out.final_states[ch] = s;
            }
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }

        out.final_distribution = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        for (const std::size_t s : out.final_states) out.final_distribution(static_cast<Eigen::Index>(s)) += 1.0;
        out.final_distribution /= static_cast<double>(n_chains);
        out.visit_frequency = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        for (const auto& v : visits) {
            for (std::size_t s = 0; s < m; ++s) out.visit_frequency(static_cast<Eigen::Index>(s)) += static_cast<double>(v[s]);
        }
        out.visit_frequency /= static_cast<double>(n_chains * (n_steps + 1));
        return out;
    }

    /// Index of the opposite orientation.
    std::size_t flip(std::size_t s) const noexcept { return s < n1_ ? s + n1_ : s - n1_; }

private:
    struct Weighted {
        std::vector<std::size_t> target;
        std::vector<double> cumulative;
        void add(std::size_t s, double w)
        {
            target.push_back(s);
            cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + w);
        }
        std::size_t sample(double u) const
        {
            const double x = u * cumulative.back();
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
            return target[std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), target.size() - 1)];
        }
    };
    struct Coface {
        std::array<std::size_t, 3> aligned;
        std::array<std::size_t, 3> anti;
    };

    static std::size_t pick(std::size_t n, double u)
    {
        return std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
    }

    std::size_t n1_;
    std::vector<std::size_t> tail_vertex_;
    std::vector<std::size_t> head_vertex_;
    std::vector<Weighted> leaving_;
    std::vector<Weighted> entering_;
    std::vector<std::vector<std::size_t>> cofaces_;
    std::vector<Coface> triangles_;
};

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov distribution.
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty()) throw ParameterError("KS test needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = na * nb / (na + nb);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    double p = 0.0;
    if (lambda < 1e-3) {
        p = 1.0;
    } else {
        double sign = 1.0;
        for (int k = 1; k <= 100; ++k) {
            const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
            p += term;
            if (std::abs(term) < 1e-12) break;
            sign = -sign;
        }
        p = std::clamp(2.0 * p, 0.0, 1.0);
    }
    return {d, p};
}

}  // namespace hodgewalk
