#include "weave/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "weave/budget.hpp"
#include "weave/errors.hpp"

namespace weave {

namespace {

// |X|^k as a double with an overflow-safe exact comparison against cap.
bool power_exceeds(std::uint64_t base, int k, std::uint64_t cap) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
        acc *= base;
        if (acc > cap) return true;
    }
    return false;
}

double power_double(double base, int k) {
    double acc = 1;
    for (int i = 0; i < k; ++i) acc *= base;
    return acc;
}

// surj[j] = number of ordered k-tuples whose support is a fixed j-set
// (= j! * S2(k, j), computed by inclusion-exclusion-free DP).
std::vector<unsigned long long> surjection_counts(int k) {
    // S2 via triangle; k stays small because |X|^k must fit the budget.
    std::vector<std::vector<unsigned long long>> s2(static_cast<std::size_t>(k + 1),
                                                    std::vector<unsigned long long>(static_cast<std::size_t>(k + 1), 0));
    s2[0][0] = 1;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= i; ++j)
            s2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                s2[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                static_cast<unsigned long long>(j) * s2[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    std::vector<unsigned long long> out(static_cast<std::size_t>(k + 1), 0);
    unsigned long long fact = 1;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) fact *= static_cast<unsigned long long>(j);
        out[static_cast<std::size_t>(j)] = fact * s2[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }
    return out;
}

// C(n, e) capped (values can be astronomically large only when the budget
// check would already have refused; still guard with 128-bit).
unsigned __int128 binomial128(long long n, int e) {
    if (e < 0 || n < e) return 0;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= e; ++i) acc = acc * static_cast<unsigned __int128>(n - e + i) / static_cast<unsigned __int128>(i);
    return acc;
}

struct SupportCounter {
    const Graph& g;
    const std::vector<int>& members;  // X in increasing id order
    const VertexSet& y;
    int beta;
    int k;
    // bad[j] = number of j-subsets of X whose common neighborhood in Y is
    // deficient; counted once at the first deficient sorted prefix.
    std::vector<unsigned __int128> bad;

    void run() {
        bad.assign(static_cast<std::size_t>(k + 1), 0);
        VertexSet all = y;
        descend(0, 0, all);
    }

    void descend(int from, int depth, const VertexSet& commons) {
        for (int idx = from; idx < static_cast<int>(members.size()); ++idx) {
            VertexSet next = commons & g.adj[static_cast<std::size_t>(members[static_cast<std::size_t>(idx)])];
            int remaining = static_cast<int>(members.size()) - idx - 1;
            if (next.count() < beta) {
                // The whole sorted-superset cone of this prefix is deficient.
                for (int extra = 0; depth + 1 + extra <= k && extra <= remaining; ++extra)
                    bad[static_cast<std::size_t>(depth + 1 + extra)] += binomial128(remaining, extra);
            } else if (depth + 1 < k) {
                descend(idx + 1, depth + 1, next);
            }
        }
    }
};

}  // namespace

PotentialCount potential(const Graph& g, const VertexSet& x, const VertexSet& y,
                         int p, int d, int beta, std::uint64_t budget) {
    if (p < 0 || d < 0 || beta < 0) throw PreconditionViolated("potential needs p, d, beta >= 0");
    int k = p + d;
    PotentialCount out;
    out.exact = true;
    out.p = p;
    out.d = d;
    out.beta = beta;
    if (k == 0) {
        out.value = y.count() < beta ? 1 : 0;
        return out;
    }
    std::uint64_t cap = resolve_budget(budget);
    if (power_exceeds(static_cast<std::uint64_t>(x.count()), k, cap))
        throw BudgetExceeded("exact potential enumeration |X|^(p+d)",
                             static_cast<std::uint64_t>(std::min<double>(
                                 power_double(x.count(), k), 1e18)),
                             cap);
    std::vector<int> members = x.to_vector();
    SupportCounter counter{g, members, y, beta, k, {}};
    counter.run();
    std::vector<unsigned long long> surj = surjection_counts(k);
    unsigned __int128 total = 0;
    for (int j = 1; j <= k; ++j)
        total += counter.bad[static_cast<std::size_t>(j)] * static_cast<unsigned __int128>(surj[static_cast<std::size_t>(j)]);
    out.value = static_cast<double>(total);
    return out;
}

PotentialCount potential_sampled(const Graph& g, const VertexSet& x, const VertexSet& y,
                                 int p, int d, int beta, std::uint64_t trials, Rng rng) {
    if (p < 0 || d < 0 || beta < 0) throw PreconditionViolated("potential needs p, d, beta >= 0");
    if (trials == 0) throw PreconditionViolated("sampled potential needs trials >= 1");
    int k = p + d;
    PotentialCount out;
    out.exact = false;
    out.p = p;
    out.d = d;
    out.beta = beta;
    out.trials = trials;
    if (k == 0) {
        out.value = y.count() < beta ? 1 : 0;
        return out;
    }
    if (x.empty()) {
        out.value = 0;
        return out;
    }
    std::uint64_t bad = 0;
    std::vector<int> members = x.to_vector();
    std::vector<int> tuple(static_cast<std::size_t>(k));
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (int i = 0; i < k; ++i)
            tuple[static_cast<std::size_t>(i)] = members[rng.uniform(members.size())];
        if (common_neighbor_count(g, tuple, y) < beta) ++bad;
    }
    double frac = static_cast<double>(bad) / static_cast<double>(trials);
    double space = power_double(x.count(), k);
    out.value = frac * space;
    out.std_error = space * std::sqrt(frac * (1 - frac) / static_cast<double>(trials));
    return out;
}

namespace {

// Lexicographically first deficient subset of size `want`, or nullopt.
std::optional<std::vector<int>> first_deficient_subset(const Graph& g, const std::vector<int>& members,
                                                       const VertexSet& y, int want, int beta) {
    if (want == 0) return y.count() < beta ? std::make_optional(std::vector<int>{}) : std::nullopt;
    std::vector<int> prefix;
    // DFS in id order; at a deficient prefix, complete with the smallest ids.
    struct Res {
        const Graph& g;
        const std::vector<int>& members;
        int want, beta;
        std::vector<int> prefix;
        std::optional<std::vector<int>> found;
        void rec(int from, const VertexSet& commons) {
            if (found) return;
            for (int idx = from; idx < static_cast<int>(members.size()); ++idx) {
                if (static_cast<int>(prefix.size()) + (static_cast<int>(members.size()) - idx) < want)
                    return;  // not enough vertices left
                int v = members[static_cast<std::size_t>(idx)];
                VertexSet next = commons & g.adj[static_cast<std::size_t>(v)];
                prefix.push_back(v);
                if (next.count() < beta) {
                    std::vector<int> full = prefix;
                    for (int j = idx + 1; static_cast<int>(full.size()) < want; ++j)
                        full.push_back(members[static_cast<std::size_t>(j)]);
                    found = std::move(full);
                } else if (static_cast<int>(prefix.size()) < want) {
                    rec(idx + 1, next);
                }
                prefix.pop_back();
                if (found) return;
            }
        }
    } r{g, members, want, beta, {}, std::nullopt};
    VertexSet start = y;
    r.rec(0, start);
    return r.found;
}

}  // namespace

CommonVerdict is_common(const Graph& g, const VertexSet& x, const VertexSet& y,
                        int d, int beta, std::uint64_t budget) {
    if (d < 0 || beta < 0) throw PreconditionViolated("is_common needs d, beta >= 0");
    int want = std::min(d, x.count());
    std::uint64_t cap = resolve_budget(budget);
    if (power_exceeds(static_cast<std::uint64_t>(std::max(1, x.count())), want, cap))
        throw BudgetExceeded("exact commonness enumeration |X|^d",
                             static_cast<std::uint64_t>(std::min<double>(power_double(x.count(), want), 1e18)), cap);
    CommonVerdict out;
    auto witness = first_deficient_subset(g, x.to_vector(), y, want, beta);
    out.common = !witness.has_value();
    out.witness = std::move(witness);
    return out;
}

CommonVerdict is_common_sampled(const Graph& g, const VertexSet& x, const VertexSet& y,
                                int d, int beta, std::uint64_t trials, Rng rng) {
    CommonVerdict out;
    out.common = true;
    int want = std::min(d, x.count());
    if (want == 0) {
        if (y.count() < beta) {
            out.common = false;
            out.witness = std::vector<int>{};
        }
        return out;
    }
    std::vector<int> members = x.to_vector();
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<int> tuple;
        Rng draw = rng.split(t);
        for (int idx : draw.sample_without_replacement(static_cast<int>(members.size()), want))
            tuple.push_back(members[static_cast<std::size_t>(idx)]);
        if (common_neighbor_count(g, tuple, y) < beta) {
            std::sort(tuple.begin(), tuple.end());
            out.common = false;
            out.witness = std::move(tuple);
            return out;
        }
    }
    return out;
}

NegligibleVerdict is_negligible(const Graph& g, const VertexSet& x, const VertexSet& y,
                                int p, int d, int beta, double lambda, std::uint64_t budget) {
    if (lambda <= 0) throw PreconditionViolated("is_negligible needs lambda > 0");
    NegligibleVerdict out;
    out.count = potential(g, x, y, p, d, beta, budget).value;
    out.threshold = static_cast<double>(std::pow(static_cast<long double>(lambda), p - 1));
    out.negligible = out.count < out.threshold;
    return out;
}

bool crossing_adjacent(const Graph& g, const std::vector<int>& m1, const std::vector<int>& m2,
                       int num_parts, int slots) {
    for (int j1 = 0; j1 < num_parts; ++j1)
        for (int j2 = 0; j2 < num_parts; ++j2) {
            if (j1 == j2) continue;
            for (int s1 = 0; s1 < slots; ++s1)
                for (int s2 = 0; s2 < slots; ++s2) {
                    int u = m1[static_cast<std::size_t>(j1 * slots + s1)];
                    int v = m2[static_cast<std::size_t>(j2 * slots + s2)];
                    if (!g.adjacent(u, v)) return false;
                }
        }
    return true;
}

bool is_heavy_clique(const Graph& g, const std::vector<int>& member,
                     const std::vector<VertexSet>& parts, double delta) {
    int r = static_cast<int>(parts.size());
    for (int j = 0; j < r; ++j) {
        std::vector<int> rest;
        for (int i = 0; i < r; ++i)
            if (i != j) rest.push_back(member[static_cast<std::size_t>(i)]);
        double need = delta * parts[static_cast<std::size_t>(j)].count();
        if (static_cast<double>(common_neighbor_count(g, rest, parts[static_cast<std::size_t>(j)])) + 1e-9 < need)
            return false;
    }
    return true;
}

namespace {

bool crossing_clique(const Graph& g, const std::vector<int>& member) {
    for (std::size_t i = 0; i < member.size(); ++i)
        for (std::size_t j = i + 1; j < member.size(); ++j)
            if (!g.adjacent(member[i], member[j])) return false;
    return true;
}

}  // namespace

CrossingFamily heavy_cliques(const Graph& g, const std::vector<VertexSet>& parts, double delta,
                             std::uint64_t budget, const std::vector<VertexSet>* pools) {
    if (parts.empty()) throw PreconditionViolated("heavy_cliques needs at least one part");
    if (pools && pools->size() != parts.size())
        throw PreconditionViolated("heavy_cliques pools must match parts");
    const std::vector<VertexSet>& src = pools ? *pools : parts;
    std::uint64_t cap = resolve_budget(budget);
    unsigned __int128 space = 1;
    for (const auto& p : src) {
        space *= static_cast<unsigned __int128>(std::max(1, p.count()));
        if (space > cap)
            throw BudgetExceeded("heavy-clique enumeration over part-size product", static_cast<std::uint64_t>(1) << 63, cap);
    }
    CrossingFamily fam;
    fam.pattern = Pattern::Kr;
    fam.slots = 1;
    fam.parts = parts;
    fam.exact = true;
    int r = static_cast<int>(parts.size());
    std::vector<int> member(static_cast<std::size_t>(r));
    // Backtrack part by part, keeping the common neighborhood of the prefix.
    struct Search {
        const Graph& g;
        const std::vector<VertexSet>& parts;
        const std::vector<VertexSet>& src;
        double delta;
        int r;
        std::vector<int>& member;
        CrossingFamily& fam;
        void rec(int depth, const VertexSet* commons) {
            VertexSet pool = depth == 0 ? src[0] : (*commons & src[static_cast<std::size_t>(depth)]);
            pool.for_each([&](int v) {
                member[static_cast<std::size_t>(depth)] = v;
                if (depth + 1 == r) {
                    if (is_heavy_clique(g, member, parts, delta)) fam.members.push_back(member);
                } else {
                    VertexSet next = depth == 0 ? g.adj[static_cast<std::size_t>(v)]
                                                : (*commons & g.adj[static_cast<std::size_t>(v)]);
                    rec(depth + 1, &next);
                }
            });
        }
    } search{g, parts, src, delta, r, member, fam};
    search.rec(0, nullptr);
    fam.est_total = static_cast<double>(fam.members.size());
    return fam;
}

CrossingFamily heavy_cliques_sampled(const Graph& g, const std::vector<VertexSet>& parts,
                                     double delta, std::uint64_t trials, std::size_t max_members,
                                     Rng rng, const std::vector<VertexSet>* pools) {
    if (parts.empty()) throw PreconditionViolated("heavy_cliques needs at least one part");
    if (pools && pools->size() != parts.size())
        throw PreconditionViolated("heavy_cliques pools must match parts");
    const std::vector<VertexSet>& src = pools ? *pools : parts;
    for (const auto& p : src)
        if (p.empty()) throw PreconditionViolated("heavy_cliques parts must be nonempty");
    CrossingFamily fam;
    fam.pattern = Pattern::Kr;
    fam.slots = 1;
    fam.parts = parts;
    fam.exact = false;
    int r = static_cast<int>(parts.size());
    std::vector<std::vector<int>> members;
    for (const auto& p : src) members.push_back(p.to_vector());
    std::uint64_t hits = 0;
    std::vector<int> tuple(static_cast<std::size_t>(r));
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (int j = 0; j < r; ++j)
            tuple[static_cast<std::size_t>(j)] = members[static_cast<std::size_t>(j)][rng.uniform(members[static_cast<std::size_t>(j)].size())];
        if (crossing_clique(g, tuple) && is_heavy_clique(g, tuple, parts, delta)) {
            ++hits;
            if (fam.members.size() < max_members) fam.members.push_back(tuple);
        }
    }
    double space = 1;
    for (const auto& p : src) space *= static_cast<double>(p.count());
    fam.est_total = trials == 0 ? 0 : space * static_cast<double>(hits) / static_cast<double>(trials);
    return fam;
}

std::uint64_t rho(const Graph& g, const CrossingFamily& k_family, const CrossingFamily& f_family,
                  std::vector<std::uint32_t>* degrees_out, std::uint64_t budget) {
    if (k_family.num_parts() != f_family.num_parts())
        throw PreconditionViolated("rho needs families over the same number of parts");
    std::uint64_t cap = resolve_budget(budget);
    std::uint64_t pairs = static_cast<std::uint64_t>(k_family.members.size()) * f_family.members.size();
    if (pairs > cap) throw BudgetExceeded("rho pair enumeration", pairs, cap);
    if (degrees_out) degrees_out->assign(k_family.members.size(), 0);
    std::uint64_t total = 0;
    int np = k_family.num_parts();
    for (std::size_t i = 0; i < k_family.members.size(); ++i) {
        std::uint32_t deg = 0;
        for (const auto& f : f_family.members) {
            // Mixed slot counts are allowed: check k-member's groups against
            // f-member's groups with their own slot widths.
            bool ok = true;
            for (int j1 = 0; ok && j1 < np; ++j1)
                for (int j2 = 0; ok && j2 < np; ++j2) {
                    if (j1 == j2) continue;
                    for (int s1 = 0; ok && s1 < k_family.slots; ++s1)
                        for (int s2 = 0; ok && s2 < f_family.slots; ++s2)
                            if (!g.adjacent(k_family.members[i][static_cast<std::size_t>(j1 * k_family.slots + s1)],
                                            f.at(static_cast<std::size_t>(j2 * f_family.slots + s2))))
                                ok = false;
                }
            if (ok) {
                ++deg;
                ++total;
            }
        }
        if (degrees_out) (*degrees_out)[i] = deg;
    }
    return total;
}

bool heavy_wrt_family(const Graph& g, const std::vector<int>& member, const CrossingFamily& f_family,
                      double delta) {
    if (f_family.members.empty()) return true;  // 0 >= 0 convention
    int np = f_family.num_parts();
    std::uint64_t adj = 0;
    for (const auto& f : f_family.members) {
        bool ok = true;
        for (int j1 = 0; ok && j1 < np; ++j1)
            for (int j2 = 0; ok && j2 < np; ++j2) {
                if (j1 == j2) continue;
                if (!g.adjacent(member[static_cast<std::size_t>(j1)], f.at(static_cast<std::size_t>(j2 * f_family.slots))))
                    ok = false;
                for (int s2 = 1; ok && s2 < f_family.slots; ++s2)
                    if (!g.adjacent(member[static_cast<std::size_t>(j1)], f.at(static_cast<std::size_t>(j2 * f_family.slots + s2))))
                        ok = false;
            }
        if (ok) ++adj;
    }
    return static_cast<double>(adj) + 1e-12 >= delta * static_cast<double>(f_family.members.size());
}

NegligiblePotentialReport test_negligible_potential_props(const Graph& g, const VertexSet& x,
                                                          const VertexSet& x_sub, const VertexSet& y,
                                                          int p, int d, int beta, int s,
                                                          std::uint64_t trials, Rng rng,
                                                          std::uint64_t budget) {
    if (!x_sub.is_subset_of(x)) throw PreconditionViolated("tuple source must lie inside X");
    if (x_sub.empty()) throw PreconditionViolated("tuple source must be nonempty");
    if (trials == 0) throw PreconditionViolated("property check needs trials >= 1");
    NegligiblePotentialReport rep;
    rep.trials = trials;
    double m = x_sub.count();

    double ref_i = potential(g, y, x, p, d, beta, budget).value;
    rep.degenerate_i = ref_i == 0;
    rep.bound_i = power_double(static_cast<double>(beta) / m, s) * ref_i;
    double ref_ii = potential(g, x, y, p + s, d, beta, budget).value;
    rep.degenerate_ii = ref_ii == 0;
    rep.bound_ii = power_double(1.0 / m, s) * ref_ii;

    std::vector<int> pool = x_sub.to_vector();
    double sum_i = 0, sumsq_i = 0, sum_ii = 0, sumsq_ii = 0;
    std::vector<int> tuple(static_cast<std::size_t>(s));
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (int i = 0; i < s; ++i) tuple[static_cast<std::size_t>(i)] = pool[rng.uniform(pool.size())];
        VertexSet nt_y = common_neighbors(g, tuple, y);
        double vi = potential(g, nt_y, x, p, d, beta, budget).value;
        double vii = potential(g, x, nt_y, p, d, beta, budget).value;
        sum_i += vi;
        sumsq_i += vi * vi;
        sum_ii += vii;
        sumsq_ii += vii * vii;
    }
    double n = static_cast<double>(trials);
    rep.mean_i = sum_i / n;
    rep.mean_ii = sum_ii / n;
    double var_i = std::max(0.0, sumsq_i / n - rep.mean_i * rep.mean_i);
    double var_ii = std::max(0.0, sumsq_ii / n - rep.mean_ii * rep.mean_ii);
    rep.se_i = std::sqrt(var_i / n);
    rep.se_ii = std::sqrt(var_ii / n);
    return rep;
}

}  // namespace weave
