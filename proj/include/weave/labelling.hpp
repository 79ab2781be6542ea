// Relabelling: turn a beta-local labelling of a d-degenerate graph into one
// that is simultaneously 5d-degenerate and beta*ceil(log2(4*beta))-local.
#pragma once

#include <vector>

#include "weave/graph.hpp"

namespace weave {

struct RelabelStep {
    int t = 0;                      // step index, 0-based
    int vertex = 0;                 // chosen vertex v_t (receives label m - t)
    int back_degree_at_choice = 0;  // its sigma-preceding neighbors still unlabelled
    int sigma_label = 0;            // its label under the input ordering
};

struct RelabelTrace {
    std::vector<RelabelStep> steps;   // exactly m entries, chosen vertices distinct
    std::vector<int> drift;           // per vertex: sigma(v) - pi(v), diagnostic only
};

// Integer form of the locality bound beta * ceil(log2(4*beta)); beta=1 -> 2.
int locality_bound(int beta);

// Selection rule, per step t over the unlabelled set V_t: among vertices with
// at most 5d neighbors in V_t that sigma-precede them, take the one with
// maximum sigma label; it receives the new label m - t. The output is checked
// against verify_labelling(h, pi, 5d, locality_bound(beta)).
std::pair<Labelling, RelabelTrace> relabel_degenerate_local(const Graph& h, const Labelling& sigma,
                                                            int d, int beta);

}  // namespace weave
