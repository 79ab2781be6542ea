#include "weave/graph.hpp"

#include <algorithm>
#include <limits>

#include "weave/errors.hpp"

namespace weave {

Graph::Graph(int n) : n(n), adj(static_cast<std::size_t>(n), VertexSet(n)),
                      part_of(static_cast<std::size_t>(n), -1) {}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::vector<int>>& parts) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
        if (g.adjacent(u, v))
            throw ParseError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        g.add_edge(u, v);
    }
    if (!parts.empty()) g.set_parts(parts);
    return g;
}

void Graph::add_edge(int u, int v) {
    adj[static_cast<std::size_t>(u)].set(v);
    adj[static_cast<std::size_t>(v)].set(u);
}

std::uint64_t Graph::edge_count() const {
    std::uint64_t twice = 0;
    for (const auto& row : adj) twice += static_cast<std::uint64_t>(row.count());
    return twice / 2;
}

void Graph::set_parts(const std::vector<std::vector<int>>& part_lists) {
    parts.assign(part_lists.size(), VertexSet(n));
    part_of.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < part_lists.size(); ++i) {
        for (int v : part_lists[i]) {
            if (v < 0 || v >= n) throw ParseError("part member out of range: " + std::to_string(v));
            if (part_of[static_cast<std::size_t>(v)] != -1)
                throw ParseError("vertex " + std::to_string(v) + " assigned to two parts");
            parts[i].set(v);
            part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
    }
}

void Graph::validate(bool multipartite_edges) const {
    for (int v = 0; v < n; ++v) {
        if (adj[static_cast<std::size_t>(v)].universe() != n)
            throw InternalInvariantBroken("adjacency row universe mismatch");
        if (adj[static_cast<std::size_t>(v)].test(v))
            throw InternalInvariantBroken("self-loop at vertex " + std::to_string(v));
    }
    for (int v = 0; v < n; ++v)
        adj[static_cast<std::size_t>(v)].for_each([&](int u) {
            if (!adj[static_cast<std::size_t>(u)].test(v))
                throw InternalInvariantBroken("asymmetric edge (" + std::to_string(v) + "," + std::to_string(u) + ")");
        });
    if (!parts.empty()) {
        std::vector<int> seen(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < parts.size(); ++i)
            parts[i].for_each([&](int v) {
                if (seen[static_cast<std::size_t>(v)] != -1)
                    throw InternalInvariantBroken("parts overlap at vertex " + std::to_string(v));
                seen[static_cast<std::size_t>(v)] = static_cast<int>(i);
                if (part_of[static_cast<std::size_t>(v)] != static_cast<int>(i))
                    throw InternalInvariantBroken("part_of inconsistent at vertex " + std::to_string(v));
            });
        if (multipartite_edges)
            for (int v = 0; v < n; ++v) {
                int pv = part_of[static_cast<std::size_t>(v)];
                if (pv < 0) continue;
                if (adj[static_cast<std::size_t>(v)].intersects(parts[static_cast<std::size_t>(pv)]))
                    throw InternalInvariantBroken("edge inside part " + std::to_string(pv));
            }
    }
}

VertexSet common_neighbors(const Graph& g, const VertexSet& s, const VertexSet& target) {
    VertexSet out = target;
    s.for_each([&](int v) { out &= g.adj[static_cast<std::size_t>(v)]; });
    return out;
}

VertexSet common_neighbors(const Graph& g, const std::vector<int>& tuple, const VertexSet& target) {
    VertexSet out = target;
    for (int v : tuple) out &= g.adj[static_cast<std::size_t>(v)];
    return out;
}

int common_neighbor_count(const Graph& g, const std::vector<int>& tuple, const VertexSet& target) {
    if (tuple.empty()) return target.count();
    if (tuple.size() == 1) return g.adj[static_cast<std::size_t>(tuple[0])].intersect_count(target);
    VertexSet acc = g.adj[static_cast<std::size_t>(tuple[0])] & g.adj[static_cast<std::size_t>(tuple[1])];
    for (std::size_t i = 2; i < tuple.size(); ++i) acc &= g.adj[static_cast<std::size_t>(tuple[i])];
    return acc.intersect_count(target);
}

Labelling Labelling::from_order(const std::vector<int>& vertex_in_label_order) {
    int n = static_cast<int>(vertex_in_label_order.size());
    Labelling lab;
    lab.vertex = vertex_in_label_order;
    lab.label.assign(static_cast<std::size_t>(n), 0);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int t = 1; t <= n; ++t) {
        int v = lab.vertex[static_cast<std::size_t>(t - 1)];
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw ParseError("labelling is not a bijection");
        seen[static_cast<std::size_t>(v)] = true;
        lab.label[static_cast<std::size_t>(v)] = t;
    }
    return lab;
}

Labelling Labelling::from_labels(const std::vector<int>& label_of_vertex) {
    int n = static_cast<int>(label_of_vertex.size());
    Labelling lab;
    lab.label = label_of_vertex;
    lab.vertex.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        int t = label_of_vertex[static_cast<std::size_t>(v)];
        if (t < 1 || t > n || lab.vertex[static_cast<std::size_t>(t - 1)] != -1)
            throw ParseError("labelling is not a bijection");
        lab.vertex[static_cast<std::size_t>(t - 1)] = v;
    }
    return lab;
}

Labelling Labelling::identity(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    return from_order(order);
}

LabelReport verify_labelling(const Graph& h, Labelling& lab, int d, int beta) {
    if (lab.size() != h.n) throw PreconditionViolated("labelling size differs from graph order");
    LabelReport rep;
    for (int v = 0; v < h.n; ++v) {
        int lv = lab.label_of(v);
        int back = 0;
        h.adj[static_cast<std::size_t>(v)].for_each([&](int u) {
            int lu = lab.label_of(u);
            if (lu < lv) ++back;
            if (lu > lv) rep.worst_stretch = std::max(rep.worst_stretch, lu - lv);
        });
        rep.worst_back_degree = std::max(rep.worst_back_degree, back);
    }
    rep.degenerate_ok = rep.worst_back_degree <= d;
    rep.local_ok = rep.worst_stretch <= beta;
    if (rep.degenerate_ok) lab.checked_d = d;
    if (rep.local_ok) lab.checked_beta = beta;
    return rep;
}

std::pair<Labelling, int> degeneracy_ordering(const Graph& g) {
    int n = g.n;
    std::vector<int> deg(static_cast<std::size_t>(n));
    VertexSet alive = VertexSet::full(n);
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    std::vector<int> removal;  // peeling order
    removal.reserve(static_cast<std::size_t>(n));
    int degeneracy = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1, best_deg = std::numeric_limits<int>::max();
        alive.for_each([&](int v) {
            if (deg[static_cast<std::size_t>(v)] < best_deg) {
                best_deg = deg[static_cast<std::size_t>(v)];
                best = v;
            }
        });
        degeneracy = std::max(degeneracy, best_deg);
        removal.push_back(best);
        alive.reset(best);
        g.adj[static_cast<std::size_t>(best)].for_each([&](int u) {
            if (alive.test(u)) --deg[static_cast<std::size_t>(u)];
        });
    }
    // Labels follow the reversed peeling order: the first-removed vertex gets
    // the largest label, so back-neighbors (smaller labels) are the ones that
    // were still alive at a vertex's removal — at most `degeneracy` of them.
    std::reverse(removal.begin(), removal.end());
    return {Labelling::from_order(removal), degeneracy};
}

int random_member(const VertexSet& s, Rng& rng) {
    int c = s.count();
    if (c == 0) throw PreconditionViolated("random_member of empty set");
    return s.kth(static_cast<int>(rng.uniform(static_cast<std::uint64_t>(c))));
}

VertexSet random_subset(const VertexSet& s, int k, Rng& rng) {
    int c = s.count();
    if (k < 0 || k > c) throw PreconditionViolated("random_subset size out of range");
    std::vector<int> members = s.to_vector();
    VertexSet out(s.universe());
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(c - i)));
        std::swap(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
        out.set(members[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace weave
