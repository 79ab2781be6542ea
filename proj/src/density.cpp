#include "weave/density.hpp"

#include <algorithm>
#include <cmath>

#include "weave/errors.hpp"

namespace weave {

namespace {

constexpr int exact_size_cap = 24;
constexpr double tol = 1e-9;

int min_size(double frac, int whole) {
    if (frac <= 0) return 0;
    return static_cast<int>(std::ceil(frac * whole - tol));
}

std::uint64_t edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
    std::uint64_t e = 0;
    a.for_each([&](int v) { e += static_cast<std::uint64_t>(g.degree_in(v, b)); });
    return e;
}

// Worst Y' for a fixed X': sort the other side by degree into X' and take
// prefixes. Returns a violation (Y', edges) if any admissible size fails.
std::optional<std::pair<VertexSet, std::uint64_t>> worst_cut(const Graph& g, const VertexSet& xsub,
                                                             const VertexSet& y, int y_min,
                                                             double delta) {
    std::vector<std::pair<int, int>> deg;  // (degree into xsub, vertex)
    y.for_each([&](int v) { deg.emplace_back(g.degree_in(v, xsub), v); });
    std::sort(deg.begin(), deg.end());
    std::uint64_t prefix = 0;
    double xs = xsub.count();
    for (int k = 1; k <= static_cast<int>(deg.size()); ++k) {
        prefix += static_cast<std::uint64_t>(deg[static_cast<std::size_t>(k - 1)].first);
        if (k < std::max(1, y_min)) continue;
        if (static_cast<double>(prefix) + tol < delta * xs * k) {
            VertexSet ysub(y.universe());
            for (int i = 0; i < k; ++i) ysub.set(deg[static_cast<std::size_t>(i)].second);
            return std::make_pair(ysub, prefix);
        }
    }
    return std::nullopt;
}

DensityVerdict dense_pair_exact(const Graph& g, const VertexSet& x, const VertexSet& y,
                                double eps, double delta) {
    // Enumerate subsets of the smaller side, scan prefix cuts on the other.
    bool swapped = x.count() > y.count();
    const VertexSet& s = swapped ? y : x;
    const VertexSet& t = swapped ? x : y;
    int s_min = min_size(eps, s.count());
    int t_min = min_size(eps, t.count());
    std::vector<int> members = s.to_vector();
    int sc = static_cast<int>(members.size());
    for (std::uint64_t mask = 1; mask < (1ULL << sc); ++mask) {
        int k = std::popcount(mask);
        if (k < std::max(1, s_min)) continue;
        VertexSet ssub(s.universe());
        for (int i = 0; i < sc; ++i)
            if (mask & (1ULL << i)) ssub.set(members[static_cast<std::size_t>(i)]);
        if (auto bad = worst_cut(g, ssub, t, t_min, delta)) {
            DensityVerdict out;
            out.status = Verdict::REFUTED;
            Counterexample cx;
            cx.a = swapped ? bad->first : ssub;
            cx.b = swapped ? ssub : bad->first;
            double cap = static_cast<double>(ssub.count()) * bad->first.count();
            cx.achieved = cap > 0 ? static_cast<double>(bad->second) / cap : 0;
            out.counterexample = std::move(cx);
            return out;
        }
    }
    DensityVerdict out;
    out.status = Verdict::CERTIFIED;
    return out;
}

}  // namespace

DensityVerdict check_dense_pair(const Graph& g, const VertexSet& x, const VertexSet& y,
                                double eps, double delta, CheckMode mode) {
    if (x.empty() || y.empty()) throw PreconditionViolated("dense-pair check needs nonempty sides");
    if (x.intersects(y)) throw PreconditionViolated("dense-pair sides must be disjoint");
    if (mode.exact) {
        if (x.count() + y.count() > exact_size_cap)
            throw SizeLimitExceeded("exact dense-pair check limited to |X|+|Y| <= " +
                                    std::to_string(exact_size_cap));
        return dense_pair_exact(g, x, y, eps, delta);
    }
    DensityVerdict out;
    Rng rng = Rng(mode.seed).split(0x64656e73ULL);
    int x_min = std::max(1, min_size(eps, x.count()));
    int y_min = std::max(1, min_size(eps, y.count()));
    for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
        ++out.trials;
        VertexSet xs = random_subset(x, rng.uniform_int(x_min, x.count()), rng);
        VertexSet ys = random_subset(y, rng.uniform_int(y_min, y.count()), rng);
        std::uint64_t e = edges_between(g, xs, ys);
        double cap = static_cast<double>(xs.count()) * ys.count();
        if (static_cast<double>(e) + tol < delta * cap) {
            out.status = Verdict::REFUTED;
            out.counterexample = Counterexample{std::move(xs), std::move(ys),
                                                static_cast<double>(e) / cap, 0};
            return out;
        }
    }
    out.status = Verdict::UNFALSIFIED;
    return out;
}

bool counterexample_violates_dense_pair(const Graph& g, const Counterexample& cx, double delta) {
    std::uint64_t e = edges_between(g, cx.a, cx.b);
    double cap = static_cast<double>(cx.a.count()) * cx.b.count();
    return static_cast<double>(e) + tol < delta * cap;
}

namespace {

// Bad-side count for a fixed opposite subset: vertices of `side_universe`
// with relative degree into `other` below delta.
VertexSet bad_vertices(const Graph& g, const VertexSet& side_universe, const VertexSet& other,
                       double delta) {
    VertexSet bad(side_universe.universe());
    double need = delta * other.count();
    side_universe.for_each([&](int v) {
        if (static_cast<double>(g.degree_in(v, other)) + tol < need) bad.set(v);
    });
    return bad;
}

// Given the bad set within one full side, build the worst admissible subset
// of that side (bad first, filled with good) and test it.
std::optional<std::pair<VertexSet, double>> worst_side(const VertexSet& side, const VertexSet& bad,
                                                       int k_min, double eps) {
    int b = bad.count();
    if (b == 0) return std::nullopt;
    k_min = std::max(1, k_min);
    int take_bad = std::min(b, k_min);
    if (static_cast<double>(take_bad) <= eps * k_min + tol) return std::nullopt;
    VertexSet chosen(side.universe());
    int need = k_min;
    bad.for_each([&](int v) {
        if (take_bad > 0 && chosen.count() < k_min) {
            chosen.set(v);
            --take_bad;
        }
    });
    if (chosen.count() < need) {
        VertexSet good = side - bad;
        good.for_each([&](int v) {
            if (chosen.count() < need) chosen.set(v);
        });
    }
    return std::make_pair(std::move(chosen), static_cast<double>(std::min(b, k_min)) / k_min);
}

}  // namespace

DensityVerdict check_degree_dense(const Graph& g, double alpha, double eps, double delta,
                                  CheckMode mode) {
    if (g.num_parts() != 2) throw PreconditionViolated("degree-dense check needs a 2-part host");
    const VertexSet& v1 = g.part(0);
    const VertexSet& v2 = g.part(1);
    if (v1.empty() || v2.empty()) throw PreconditionViolated("degree-dense check needs nonempty parts");
    int k1 = std::max(1, min_size(alpha, v1.count()));
    int k2 = std::max(1, min_size(alpha, v2.count()));

    if (mode.exact) {
        if (v1.count() + v2.count() > exact_size_cap)
            throw SizeLimitExceeded("exact degree-dense check limited to |V1|+|V2| <= " +
                                    std::to_string(exact_size_cap));
        // Direction 1: fix X2, the bad set in V1 is determined; the worst X1
        // takes bad vertices first. Direction 2 symmetric.
        for (int dir = 0; dir < 2; ++dir) {
            const VertexSet& fixed_side = dir == 0 ? v2 : v1;
            const VertexSet& test_side = dir == 0 ? v1 : v2;
            int fixed_min = dir == 0 ? k2 : k1;
            int test_min = dir == 0 ? k1 : k2;
            std::vector<int> members = fixed_side.to_vector();
            int fc = static_cast<int>(members.size());
            for (std::uint64_t mask = 1; mask < (1ULL << fc); ++mask) {
                if (std::popcount(mask) < fixed_min) continue;
                VertexSet fsub(fixed_side.universe());
                for (int i = 0; i < fc; ++i)
                    if (mask & (1ULL << i)) fsub.set(members[static_cast<std::size_t>(i)]);
                VertexSet bad = bad_vertices(g, test_side, fsub, delta);
                if (auto w = worst_side(test_side, bad, test_min, eps)) {
                    DensityVerdict out;
                    out.status = Verdict::REFUTED;
                    Counterexample cx;
                    cx.a = dir == 0 ? w->first : fsub;
                    cx.b = dir == 0 ? fsub : w->first;
                    cx.achieved = w->second;
                    cx.side = dir == 0 ? 1 : 2;
                    out.counterexample = std::move(cx);
                    return out;
                }
            }
        }
        DensityVerdict out;
        out.status = Verdict::CERTIFIED;
        return out;
    }

    DensityVerdict out;
    Rng rng = Rng(mode.seed).split(0x64646e73ULL);
    for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
        ++out.trials;
        VertexSet x1 = random_subset(v1, rng.uniform_int(k1, v1.count()), rng);
        VertexSet x2 = random_subset(v2, rng.uniform_int(k2, v2.count()), rng);
        int bad1 = bad_vertices(g, x1, x2, delta).count();
        int bad2 = bad_vertices(g, x2, x1, delta).count();
        int side = 0;
        double frac = 0;
        if (static_cast<double>(bad1) > eps * x1.count() + tol) {
            side = 1;
            frac = static_cast<double>(bad1) / x1.count();
        } else if (static_cast<double>(bad2) > eps * x2.count() + tol) {
            side = 2;
            frac = static_cast<double>(bad2) / x2.count();
        }
        if (side != 0) {
            out.status = Verdict::REFUTED;
            out.counterexample = Counterexample{std::move(x1), std::move(x2), frac, side};
            return out;
        }
    }
    out.status = Verdict::UNFALSIFIED;
    return out;
}

bool counterexample_violates_degree_dense(const Graph& g, const Counterexample& cx,
                                          double eps, double delta) {
    const VertexSet& test = cx.side == 1 ? cx.a : cx.b;
    const VertexSet& other = cx.side == 1 ? cx.b : cx.a;
    int bad = bad_vertices(g, test, other, delta).count();
    return static_cast<double>(bad) > eps * test.count() + tol;
}

Graph reduced_graph(const Graph& g, const std::vector<VertexSet>& parts, double eps, double delta,
                    CheckMode mode, std::vector<ReducedEdgeAudit>* audit) {
    int t = static_cast<int>(parts.size());
    Graph r(t);
    std::vector<std::vector<int>> r_parts;
    if (audit) audit->clear();
    for (int i = 0; i < t; ++i) r_parts.push_back({i});
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            CheckMode pair_mode = mode;
            pair_mode.seed = detail::mix2(mode.seed, (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j));
            DensityVerdict v = check_dense_pair(g, parts[static_cast<std::size_t>(i)],
                                                parts[static_cast<std::size_t>(j)], eps, delta, pair_mode);
            if (v.status != Verdict::REFUTED) r.add_edge(i, j);
            if (audit) audit->push_back({i, j, v.status, mode.exact});
        }
    r.set_parts(r_parts);
    return r;
}

double relative_min_degree(const Graph& g) {
    double best = 1.0;
    if (g.num_parts() >= 2) {
        for (int i = 0; i < g.num_parts(); ++i)
            for (int j = 0; j < g.num_parts(); ++j) {
                if (i == j || g.part(j).empty()) continue;
                double denom = g.part(j).count();
                g.part(i).for_each([&](int v) {
                    best = std::min(best, static_cast<double>(g.degree_in(v, g.part(j))) / denom);
                });
            }
        return best;
    }
    if (g.n <= 1) return 0;
    for (int v = 0; v < g.n; ++v)
        best = std::min(best, static_cast<double>(g.degree(v)) / (g.n - 1));
    return best;
}

}  // namespace weave
