// Core graph types: partitioned graphs over dense bitset adjacency rows,
// vertex orderings (labellings), common-neighborhood queries, degeneracy.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weave/bitset.hpp"
#include "weave/rng.hpp"

namespace weave {

// Simple undirected graph, optionally partitioned into disjoint vertex
// classes. part_of[v] == -1 means unassigned. Multipartite hosts keep all
// edges across classes; nothing enforces that except validate().
struct Graph {
    int n = 0;
    std::vector<VertexSet> adj;   // adj[v] = neighbors of v; symmetric, irreflexive
    std::vector<VertexSet> parts; // may be empty (unpartitioned)
    std::vector<int> part_of;     // -1 = unassigned

    Graph() = default;
    explicit Graph(int n);

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            const std::vector<std::vector<int>>& parts = {});

    void add_edge(int u, int v);
    bool adjacent(int u, int v) const { return adj[u].test(v); }
    int degree(int v) const { return adj[v].count(); }
    int degree_in(int v, const VertexSet& s) const { return adj[v].intersect_count(s); }
    std::uint64_t edge_count() const;

    void set_parts(const std::vector<std::vector<int>>& part_lists);
    const VertexSet& part(int i) const { return parts[static_cast<std::size_t>(i)]; }
    int num_parts() const { return static_cast<int>(parts.size()); }

    // Checks symmetry, irreflexivity, part disjointness, part_of consistency;
    // if `multipartite_edges` is set, also that no edge lies inside a part.
    void validate(bool multipartite_edges = false) const;

    // All vertices of the graph as a set.
    VertexSet all_vertices() const { return VertexSet::full(n); }
};

// Common neighborhood of S within `target`: target ∩ ⋂_{v∈S} N(v).
// Empty S returns target itself.
VertexSet common_neighbors(const Graph& g, const VertexSet& s, const VertexSet& target);
VertexSet common_neighbors(const Graph& g, const std::vector<int>& tuple, const VertexSet& target);
// Size-only variant of the above (no allocation for the result set).
int common_neighbor_count(const Graph& g, const std::vector<int>& tuple, const VertexSet& target);

// A bijection between vertices and labels 1..n.
struct Labelling {
    std::vector<int> label;   // vertex -> label in [1, n]
    std::vector<int> vertex;  // label t -> vertex, via vertex[t-1]

    // Facts established by verify_labelling, carried for later consumers.
    std::optional<int> checked_d;
    std::optional<int> checked_beta;

    Labelling() = default;
    static Labelling from_order(const std::vector<int>& vertex_in_label_order);
    static Labelling from_labels(const std::vector<int>& label_of_vertex);
    static Labelling identity(int n);

    int size() const { return static_cast<int>(label.size()); }
    int label_of(int v) const { return label[static_cast<std::size_t>(v)]; }
    int vertex_at(int t) const { return vertex[static_cast<std::size_t>(t - 1)]; }
};

struct LabelReport {
    bool degenerate_ok = false;  // every vertex has <= d neighbors of smaller label
    bool local_ok = false;       // every edge has label gap <= beta
    int worst_back_degree = 0;   // max over vertices of smaller-label neighbor count
    int worst_stretch = 0;       // max over edges of |label(u) - label(v)|
};

// Checks d-degeneracy and beta-locality of `lab` on h; stamps checked_d /
// checked_beta into lab when the respective check passes.
LabelReport verify_labelling(const Graph& h, Labelling& lab, int d, int beta);

// Minimum-degree peeling order (lowest vertex id on ties), reversed so that
// every vertex has at most `degeneracy` neighbors of smaller label. Returns
// the labelling and the graph's degeneracy.
std::pair<Labelling, int> degeneracy_ordering(const Graph& g);

// Uniform random member of a nonempty set.
int random_member(const VertexSet& s, Rng& rng);
// Uniform random k-subset of s (k <= |s|).
VertexSet random_subset(const VertexSet& s, int k, Rng& rng);

}  // namespace weave
