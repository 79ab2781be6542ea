// Density verification: (eps, delta)-dense pairs, (alpha, eps, delta)-
// degree-dense bipartite hosts, reduced graphs over a partition.
//
// A pair (X, Y) is (eps, delta)-dense when every X' ⊆ X, Y' ⊆ Y with
// |X'| >= eps|X|, |Y'| >= eps|Y| spans at least delta|X'||Y'| edges.
// A bipartite host is (alpha, eps, delta)-degree-dense when every
// (X1, X2) with |Xi| >= alpha|Vi| leaves at least (1-eps)|Xi| vertices of
// each Xi with relative degree >= delta into the other side.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weave/graph.hpp"

namespace weave {

enum class Verdict { CERTIFIED, REFUTED, UNFALSIFIED };

struct CheckMode {
    bool exact = false;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    static CheckMode exhaustive() { return {true, 0, 0}; }
    static CheckMode sampled(std::uint64_t trials, std::uint64_t seed) { return {false, trials, seed}; }
};

// A re-checkable witness: for pair density, (a, b) are the violating
// (X', Y') and `achieved` the attained density; for degree-density, (a, b)
// are (X1, X2), `side` names the failing side (1 or 2) and `achieved` the
// bad-vertex fraction on that side.
struct Counterexample {
    VertexSet a, b;
    double achieved = 0;
    int side = 0;
};

struct DensityVerdict {
    Verdict status = Verdict::UNFALSIFIED;
    std::optional<Counterexample> counterexample;
    std::uint64_t trials = 0;  // samples drawn (0 in exact mode)
};

// Exact mode enumerates the smaller side's subsets; refuses |X|+|Y| > 24
// (SizeLimitExceeded). Sampled mode draws subset pairs with sizes uniform in
// the admissible range; it can only REFUTE or leave UNFALSIFIED.
DensityVerdict check_dense_pair(const Graph& g, const VertexSet& x, const VertexSet& y,
                                double eps, double delta, CheckMode mode);

// Same split for the degree-dense property on a 2-part host.
DensityVerdict check_degree_dense(const Graph& g, double alpha, double eps, double delta,
                                  CheckMode mode);

// Re-run a REFUTED witness against the graph (used by audit paths/tests).
bool counterexample_violates_dense_pair(const Graph& g, const Counterexample& cx, double delta);
bool counterexample_violates_degree_dense(const Graph& g, const Counterexample& cx,
                                          double eps, double delta);

// One vertex per part; an edge where check_dense_pair did not refute.
struct ReducedEdgeAudit {
    int i = 0, j = 0;
    Verdict verdict = Verdict::UNFALSIFIED;
    bool exact = false;
};
Graph reduced_graph(const Graph& g, const std::vector<VertexSet>& parts, double eps, double delta,
                    CheckMode mode, std::vector<ReducedEdgeAudit>* audit = nullptr);

// Minimum over vertices of relative degree into each other part (or into
// V minus v when the graph is unpartitioned).
double relative_min_degree(const Graph& g);

}  // namespace weave
