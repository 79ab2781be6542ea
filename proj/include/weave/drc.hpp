#pragma once
// Dependent-random-choice selectors.  Two engines share the certificate
// machinery: a two-round bipartite selection (pick T1 inside the well-spread
// half of V1, then T2 inside A2' ∩ N(T1)) and an r-round crossing-family
// selection (per round, bucket the surviving clique family by its adjacency
// degree into a fixed pattern family, then extend the seed tuple).  Both run
// in first-moment objective mode (score candidates, keep the argmax) or in
// rejection mode (redraw until the gating checks pass).
//
// Every emitted outcome carries a certificate: one entry per property with
// the verification mode used (exact / sampled / skipped), the realized value
// and the bound it was compared against.  Under the paper schedule every
// property gates success; under the practical schedule only the checks an
// extension step actually relies on (set sizes, commonness, typicality)
// gate, while the asymptotic potential thresholds are recorded as
// informational entries — their constants are vacuous at desk scale.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weave/graph.hpp"
#include "weave/potentials.hpp"

namespace weave {

enum class DrcMode { objective, rejection };
enum class DrcSchedule { paper, practical };

struct DrcParams {
    int s = 2;             // seed-tuple length per round
    double lambda = 0;     // negligibility scale (0 -> host size)
    int beta = 8;          // base common-neighborhood target
    int d = 1;             // degeneracy bound of the guest
    double delta = 0.5;    // density parameter
    double eps = 0.05;     // density exception fraction
    double gamma = 1.0;    // part-size lower bound as a fraction
    double delta1 = 0;     // heaviness of K w.r.t. F (0 -> (delta^2/2)^(r^2))
    double delta2 = 0;     // crossing-count density (0 -> the derived default)
    int c_levels = 0;      // potential-level multiplier c (0 -> r-1)
    DrcMode mode = DrcMode::objective;
    int candidates = 16;   // objective mode: tuples scored per round
    int max_retries = 64;  // rejection mode: redraws per round
    DrcSchedule schedule = DrcSchedule::practical;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;          // enumeration cap (0 -> default budget)
    std::uint64_t exact_cap = 200000;  // exact-check ceiling inside selection
    std::uint64_t check_trials = 400;  // tuple draws per sampled check
    std::uint64_t pair_cap = 100000;   // exact adjacency-count ceiling
};

// The closed-form schedule the asymptotic statements prescribe.  Computed in
// log10 space so the astronomically small scales report faithfully instead
// of silently flushing to zero.
struct ScheduleReport {
    double s_real = 0;
    int s = 0;
    double lambda = 0;        // 0 when it underflows; see log10_lambda
    double beta_ceiling = 0;  // largest admissible beta (may underflow to 0)
    double log10_lambda = 0;
    double log10_beta_ceiling = 0;
    bool feasible = false;  // s >= 1 and beta ceiling >= 1
    std::string detail;
};
ScheduleReport paper_schedule_bipartite(int n, int d, double delta, double gamma);
ScheduleReport paper_schedule_rpartite(int n, int d, double delta, int r, double eps, double gamma);

enum class CheckHow { exact, sampled, skipped };
const char* to_string(CheckHow how);

struct PropertyCheck {
    std::string id;
    CheckHow how = CheckHow::skipped;
    bool pass = false;
    bool gating = true;  // failing a non-gating entry never fails the run
    double value = 0;    // realized quantity ("log10" in detail when scaled)
    double bound = 0;    // the bound it was compared against
    std::string detail;
};

struct DrcOutcome {
    std::vector<std::vector<int>> T;  // selected multiset per round, sorted
    std::vector<VertexSet> B;         // B_i = V_i ∩ N(T_{-i})
    std::vector<PropertyCheck> certificate;
    double objective_value = 0;

    bool all_pass() const;       // every non-skipped entry passed
    bool gating_pass() const;    // every non-skipped gating entry passed
    const PropertyCheck* find(const std::string& id) const;
};

// s independent uniform draws with repetition from pool; the returned set is
// the common neighborhood of the support over the whole host.
std::pair<std::vector<int>, VertexSet> sample_neighborhood_set(const Graph& g,
                                                               const VertexSet& pool, int s,
                                                               std::uint64_t seed);

// Two-round bipartite selection.  Precondition: a2 holds at least
// (1/4)(delta/2)^(2s)|v2| vertices of degree >= (delta/2)|v1|.  Round 1
// draws T1 from the relative-degree->=delta core of v1 scoring
//   mu = |B2 ∩ A2'|·|B2'| - (delta/2)^{2s}|V2'|·|B2 ∩ A2'|
//        - (n^2/lambda^{2s-1})·eta_{2s}(B2, V1),
// round 2 draws T2 from A2' ∩ B2 scoring the matching nu penalty sum
// (minimized).  Certificate entries: the rich-count conclusion, the two
// negligible-potential conclusions, and both commonness conclusions.
DrcOutcome select_bipartite(const Graph& g, const VertexSet& v1, const VertexSet& v2,
                            const VertexSet& a1, const VertexSet& a2, const DrcParams& params);

// r-round selection against a clique family K (one vertex per part, must
// cross `a`) and a pattern family F (one or two vertices per part).  Round t
// buckets the surviving family by dyadic adjacency degree into F(B_t), picks
// the densest bucket, draws T_{t+1} from A_{t+1,t}, and keeps the tails
// compatible with every draw.  The certificate records pool sizes, bucket
// quality, family survival, the per-round potential invariants, and the
// final commonness / negligibility / typicality conclusions.
DrcOutcome select_rpartite(const Graph& g, const std::vector<VertexSet>& parts,
                           const std::vector<VertexSet>& a, const CrossingFamily& k_family,
                           const CrossingFamily& f_family, const DrcParams& params);

struct TypicalVerdict {
    bool typical = false;
    int part = -1;                            // failing side when not typical
    std::optional<std::vector<int>> witness;  // deficient tuple in A_{-i}
};

// T is (d,beta)-typical for A when for every i, each d-tuple of A_{-i}
// keeps >= beta common neighbors inside A_i ∩ N(T_{-i}).  Exhaustive over
// d-subsets (deficiency is support-determined); budget-guarded.
TypicalVerdict is_typical(const Graph& g, const std::vector<std::vector<int>>& t_tuples,
                          const std::vector<VertexSet>& a, int d, int beta,
                          std::uint64_t budget = 0);

}  // namespace weave
