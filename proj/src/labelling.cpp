#include "weave/labelling.hpp"

#include <cmath>
#include <queue>

#include "weave/errors.hpp"

namespace weave {

int locality_bound(int beta) {
    if (beta < 1) throw PreconditionViolated("locality bound needs beta >= 1");
    int lg = 0;
    while ((1LL << lg) < 4LL * beta) ++lg;  // ceil(log2(4*beta))
    return beta * lg;
}

std::pair<Labelling, RelabelTrace> relabel_degenerate_local(const Graph& h, const Labelling& sigma,
                                                            int d, int beta) {
    const int m = h.n;
    if (sigma.size() != m) throw PreconditionViolated("labelling size differs from graph order");
    if (d < 1 || beta < 1) throw PreconditionViolated("relabel needs d >= 1 and beta >= 1");

    {
        Labelling tmp = sigma;
        LabelReport rep = verify_labelling(h, tmp, d, beta);
        if (!rep.local_ok)
            throw PreconditionViolated("input labelling is not " + std::to_string(beta) +
                                       "-local (worst stretch " + std::to_string(rep.worst_stretch) + ")");
    }
    {
        auto [ord, degen] = degeneracy_ordering(h);
        if (degen > d)
            throw PreconditionViolated("graph is not " + std::to_string(d) + "-degenerate (degeneracy " +
                                       std::to_string(degen) + ")");
    }

    const int cap = 5 * d;
    // cnt[v] = sigma-preceding neighbors of v among the still-unlabelled set.
    // It only decreases, so eligibility (cnt <= cap) is monotone while alive.
    std::vector<int> cnt(static_cast<std::size_t>(m), 0);
    for (int v = 0; v < m; ++v) {
        int c = 0;
        h.adj[static_cast<std::size_t>(v)].for_each([&](int u) {
            if (sigma.label_of(u) < sigma.label_of(v)) ++c;
        });
        cnt[static_cast<std::size_t>(v)] = c;
    }

    // Max-heap keyed by sigma label over vertices known eligible.
    std::priority_queue<std::pair<int, int>> eligible;  // (sigma label, vertex)
    VertexSet alive = VertexSet::full(m);
    for (int v = 0; v < m; ++v)
        if (cnt[static_cast<std::size_t>(v)] <= cap) eligible.emplace(sigma.label_of(v), v);

    RelabelTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(m));
    std::vector<int> pi_label(static_cast<std::size_t>(m), 0);
    for (int t = 0; t < m; ++t) {
        int v = -1;
        while (!eligible.empty()) {
            int cand = eligible.top().second;
            eligible.pop();
            if (alive.test(cand)) {
                v = cand;
                break;
            }
        }
        if (v == -1)
            throw InternalInvariantBroken("no eligible vertex at relabel step " + std::to_string(t));
        trace.steps.push_back({t, v, cnt[static_cast<std::size_t>(v)], sigma.label_of(v)});
        pi_label[static_cast<std::size_t>(v)] = m - t;
        alive.reset(v);
        h.adj[static_cast<std::size_t>(v)].for_each([&](int u) {
            if (alive.test(u) && sigma.label_of(u) > sigma.label_of(v)) {
                if (--cnt[static_cast<std::size_t>(u)] == cap) eligible.emplace(sigma.label_of(u), u);
            }
        });
    }

    Labelling pi = Labelling::from_labels(pi_label);
    trace.drift.resize(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v)
        trace.drift[static_cast<std::size_t>(v)] = sigma.label_of(v) - pi.label_of(v);

    LabelReport rep = verify_labelling(h, pi, cap, locality_bound(beta));
    if (!rep.degenerate_ok || !rep.local_ok)
        throw InternalInvariantBroken(
            "relabel output failed verification: worst back-degree " + std::to_string(rep.worst_back_degree) +
            " (cap " + std::to_string(cap) + "), worst stretch " + std::to_string(rep.worst_stretch) +
            " (cap " + std::to_string(locality_bound(beta)) + ")");
    return {std::move(pi), std::move(trace)};
}

}  // namespace weave
