// Instance generators. Every generator re-verifies its construction
// certificate before returning, so downstream code can trust the metadata.
#pragma once

#include <cstdint>
#include <vector>

#include "weave/graph.hpp"
#include "weave/rng.hpp"

namespace weave {

// Plain Erdos-Renyi helpers used across tests and generators.
Graph gnp(int n, double p, Rng rng);
Graph gnp_bipartite(int n1, int n2, double p, Rng rng);
Graph gnp_multipartite(const std::vector<int>& sizes, double p, Rng rng);

// A guest graph: d-degenerate, beta-local in the natural order, properly
// r-colored by label residue.
struct GuestInstance {
    Graph h;                    // parts = color classes
    Labelling order;            // the identity order; verified (d, beta)
    std::vector<int> coloring;  // vertex -> color in [0, r)
    int d = 0, beta = 0, r = 0;
};
GuestInstance gen_degenerate_bandwidth_H(int n, int d, int beta, int r, std::uint64_t seed);

// Dense multipartite host with independent cross-part edges.
struct HostInstance {
    Graph g;
    double p = 0;
    std::vector<std::vector<double>> pair_density;  // attained, upper triangle
};
HostInstance gen_dense_rpartite_G(const std::vector<int>& sizes, double p, std::uint64_t seed);

// G(n,p) resampled until minimum degree >= gamma * n; throws RetryExhausted.
struct MinDegreeInstance {
    Graph g;
    double gamma = 0;
    double p_used = 0;
    int min_degree = 0;
    int retries = 0;
};
MinDegreeInstance gen_min_degree_G(int n, double gamma, std::uint64_t seed, int max_retries = 50);

// Complete graph on [n], every edge red or blue, with a planted red band:
// vertices split into k consecutive classes, red probability p_hi between
// classes at distance <= band_width, p_lo otherwise.
struct TwoColoredInstance {
    Graph red;                           // blue = complement within K_n
    std::vector<std::vector<int>> planted_parts;
    int band_width = 0;
    double p_hi = 0, p_lo = 0;
};
TwoColoredInstance gen_two_colored_Kn(int n, int k, int band_width, std::uint64_t seed,
                                      double p_hi = 0.85, double p_lo = 0.15);

// Host with a planted backbone shape: parts V[i][j] for i in [k] blocks and
// j in [r+1] columns; pairs inside a block and between consecutive blocks
// (distinct columns) get density p_hi, everything else p_lo.
struct PlantedBackboneInstance {
    Graph g;
    std::vector<std::vector<std::vector<int>>> planted;  // [k][r+1] -> members
    int k = 0, r = 0;
    double p_hi = 0, p_lo = 0;
};
PlantedBackboneInstance gen_planted_backbone_G(int k, int r, int part_size, std::uint64_t seed,
                                               double p_hi = 0.7, double p_lo = 0.1);

}  // namespace weave
