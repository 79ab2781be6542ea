// Potential counting and commonness checks.
//
// The (p,d,beta)-potential of X in Y counts ordered (p+d)-tuples (with
// repetition) from X whose entries have fewer than beta common neighbors
// in Y. X has lambda-negligible (p,d,beta)-potential in Y when that count
// is below lambda^(p-1). X is (d,beta)-common into Y when every d-subset
// of X has at least beta common neighbors in Y; commonness is exactly
// "0-potential equals zero".
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weave/graph.hpp"
#include "weave/rng.hpp"

namespace weave {

struct PotentialCount {
    bool exact = true;
    double value = 0;          // exact count, or the estimated count
    double std_error = 0;      // 0 in exact mode
    std::uint64_t trials = 0;  // 0 in exact mode
    int p = 0, d = 0, beta = 0;
    static constexpr bool ordered = true;  // tuples are ordered, repetition allowed
};

// Exact count by support-subset enumeration weighted with surjection counts;
// refuses when |X|^(p+d) exceeds the budget (0 = default budget).
PotentialCount potential(const Graph& g, const VertexSet& x, const VertexSet& y,
                         int p, int d, int beta, std::uint64_t budget = 0);

// Monte-Carlo estimate over `trials` uniform ordered tuples.
PotentialCount potential_sampled(const Graph& g, const VertexSet& x, const VertexSet& y,
                                 int p, int d, int beta, std::uint64_t trials, Rng rng);

struct CommonVerdict {
    bool common = false;
    // Lexicographically first deficient min(d,|X|)-subset when not common.
    std::optional<std::vector<int>> witness;
};
CommonVerdict is_common(const Graph& g, const VertexSet& x, const VertexSet& y,
                        int d, int beta, std::uint64_t budget = 0);

// Sampled one-sided variant: draws d-subsets and reports the first deficient
// one found, if any (used by selection pipelines at scale).
CommonVerdict is_common_sampled(const Graph& g, const VertexSet& x, const VertexSet& y,
                                int d, int beta, std::uint64_t trials, Rng rng);

struct NegligibleVerdict {
    bool negligible = false;
    double count = 0;      // exact potential
    double threshold = 0;  // lambda^(p-1)
};
NegligibleVerdict is_negligible(const Graph& g, const VertexSet& x, const VertexSet& y,
                                int p, int d, int beta, double lambda, std::uint64_t budget = 0);

// --- crossing families -------------------------------------------------

enum class Pattern { Kr, Kr2 };  // one or two vertices per part

struct CrossingFamily {
    Pattern pattern = Pattern::Kr;
    int slots = 1;                 // vertices per part (1 for Kr, 2 for Kr2)
    std::vector<VertexSet> parts;  // the tuple of parts it crosses
    // Each member lists parts.size()*slots vertices; the group for part j
    // occupies positions [j*slots, (j+1)*slots).
    std::vector<std::vector<int>> members;
    bool exact = true;     // exhaustively enumerated vs sampled collection
    double est_total = 0;  // estimated total when sampled

    int num_parts() const { return static_cast<int>(parts.size()); }
    double total() const { return exact ? static_cast<double>(members.size()) : est_total; }
};

// Every vertex of every group of m1 adjacent to every vertex of every
// *other* group of m2 (both orientations; same-index groups unconstrained).
bool crossing_adjacent(const Graph& g, const std::vector<int>& m1, const std::vector<int>& m2,
                       int num_parts, int slots);

// A crossing K_r copy (one vertex per part, pairwise adjacent) is delta-heavy
// when for each j the other r-1 vertices have at least delta*|P_j| common
// neighbors inside P_j.
bool is_heavy_clique(const Graph& g, const std::vector<int>& member,
                     const std::vector<VertexSet>& parts, double delta);

// Exhaustive enumeration of delta-heavy crossing K_r copies; budget guards
// the product of part sizes. When `pools` is given, members are drawn from
// pools[i] (pools[i] ⊆ parts[i]) while heaviness stays measured against
// parts[i] — the "crossing A, heavy relative to V" combination.
CrossingFamily heavy_cliques(const Graph& g, const std::vector<VertexSet>& parts, double delta,
                             std::uint64_t budget = 0,
                             const std::vector<VertexSet>* pools = nullptr);

// Sampled collection: estimates the total count from `trials` uniform
// crossing tuples and keeps up to `max_members` heavy copies found.
CrossingFamily heavy_cliques_sampled(const Graph& g, const std::vector<VertexSet>& parts,
                                     double delta, std::uint64_t trials, std::size_t max_members,
                                     Rng rng, const std::vector<VertexSet>* pools = nullptr);

// Number of crossing-adjacent pairs (k, f); optionally the per-k degrees
// (used for dyadic bucketing). Budget guards |K|*|F|.
std::uint64_t rho(const Graph& g, const CrossingFamily& k_family, const CrossingFamily& f_family,
                  std::vector<std::uint32_t>* degrees_out = nullptr, std::uint64_t budget = 0);

// Fraction of F adjacent to `member` is at least delta (empty F passes:
// 0 >= 0 by convention).
bool heavy_wrt_family(const Graph& g, const std::vector<int>& member, const CrossingFamily& f_family,
                      double delta);

// --- selection bound property checks ------------------------------------

// Empirical check of the two selection bounds for tuples drawn from
// x_sub ⊆ x: (i) E[xi_p(N(T)∩y, x)] <= (beta/m)^s * xi_p(y, x) and
// (ii) E[xi_p(x, N(T)∩y)] <= (1/m)^s * xi_{p+s}(x, y), with m = |x_sub|.
struct NegligiblePotentialReport {
    double mean_i = 0, se_i = 0, bound_i = 0;
    double mean_ii = 0, se_ii = 0, bound_ii = 0;
    bool degenerate_i = false;   // reference potential in (i) is zero
    bool degenerate_ii = false;  // reference potential in (ii) is zero
    std::uint64_t trials = 0;
    bool ok_i() const { return mean_i <= bound_i + 3 * se_i + 1e-12; }
    bool ok_ii() const { return mean_ii <= bound_ii + 3 * se_ii + 1e-12; }
};
NegligiblePotentialReport test_negligible_potential_props(const Graph& g, const VertexSet& x,
                                                          const VertexSet& x_sub, const VertexSet& y,
                                                          int p, int d, int beta, int s,
                                                          std::uint64_t trials, Rng rng,
                                                          std::uint64_t budget = 0);

}  // namespace weave
