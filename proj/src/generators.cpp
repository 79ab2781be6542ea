#include "weave/generators.hpp"

#include <algorithm>
#include <cmath>

#include "weave/errors.hpp"
#include "weave/labelling.hpp"

namespace weave {

Graph gnp(int n, double p, Rng rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

Graph gnp_bipartite(int n1, int n2, double p, Rng rng) {
    return gnp_multipartite({n1, n2}, p, rng);
}

Graph gnp_multipartite(const std::vector<int>& sizes, double p, Rng rng) {
    int n = 0;
    std::vector<std::vector<int>> parts;
    for (int s : sizes) {
        if (s < 0) throw InfeasibleParams("negative part size");
        std::vector<int> part;
        for (int i = 0; i < s; ++i) part.push_back(n + i);
        parts.push_back(std::move(part));
        n += s;
    }
    Graph g(n);
    g.set_parts(parts);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.part_of[static_cast<std::size_t>(u)] != g.part_of[static_cast<std::size_t>(v)] &&
                rng.bernoulli(p))
                g.add_edge(u, v);
    return g;
}

GuestInstance gen_degenerate_bandwidth_H(int n, int d, int beta, int r, std::uint64_t seed) {
    if (n < 1 || d < 0 || beta < 1 || r < 1)
        throw InfeasibleParams("guest generator needs n >= 1, d >= 0, beta >= 1, r >= 1");
    if (r == 1 && d > 0)
        throw InfeasibleParams("a properly 1-colored graph has no edges; use d = 0");

    Rng rng = Rng(seed).split(0x67656e48ULL);  // independent of other generators
    GuestInstance out;
    out.d = d;
    out.beta = beta;
    out.r = r;
    out.h = Graph(n);
    out.coloring.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) out.coloring[static_cast<std::size_t>(v)] = v % r;

    std::vector<int> window;
    for (int v = 1; v < n; ++v) {
        window.clear();
        for (int u = std::max(0, v - beta); u < v; ++u)
            if (u % r != v % r) window.push_back(u);
        if (window.empty()) continue;
        int k = std::min(rng.uniform_int(0, d), static_cast<int>(window.size()));
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(rng.uniform(window.size() - static_cast<std::size_t>(i)));
            std::swap(window[static_cast<std::size_t>(i)], window[static_cast<std::size_t>(j)]);
            out.h.add_edge(v, window[static_cast<std::size_t>(i)]);
        }
    }

    std::vector<std::vector<int>> colors(static_cast<std::size_t>(r));
    for (int v = 0; v < n; ++v) colors[static_cast<std::size_t>(v % r)].push_back(v);
    out.h.set_parts(colors);

    out.order = Labelling::identity(n);
    LabelReport rep = verify_labelling(out.h, out.order, d, beta);
    if (!rep.degenerate_ok || !rep.local_ok)
        throw InternalInvariantBroken("guest generator produced an out-of-contract instance");
    out.h.validate(/*multipartite_edges=*/true);
    return out;
}

HostInstance gen_dense_rpartite_G(const std::vector<int>& sizes, double p, std::uint64_t seed) {
    if (sizes.size() < 2) throw InfeasibleParams("host needs at least two parts");
    for (int s : sizes)
        if (s < 1) throw InfeasibleParams("host part sizes must be positive");
    if (p < 0 || p > 1) throw InfeasibleParams("edge probability out of [0,1]");

    HostInstance out;
    out.p = p;
    out.g = gnp_multipartite(sizes, p, Rng(seed).split(0x67656e47ULL));
    int r = out.g.num_parts();
    out.pair_density.assign(static_cast<std::size_t>(r), std::vector<double>(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            std::uint64_t edges = 0;
            out.g.part(i).for_each([&](int v) {
                edges += static_cast<std::uint64_t>(out.g.degree_in(v, out.g.part(j)));
            });
            double cap = static_cast<double>(out.g.part(i).count()) * out.g.part(j).count();
            double density = cap > 0 ? static_cast<double>(edges) / cap : 0;
            out.pair_density[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = density;
            out.pair_density[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = density;
        }
    return out;
}

MinDegreeInstance gen_min_degree_G(int n, double gamma, std::uint64_t seed, int max_retries) {
    if (n < 2 || gamma <= 0 || gamma >= 1) throw InfeasibleParams("need n >= 2 and gamma in (0,1)");
    double margin = 2.8 * std::sqrt(gamma * (1 - gamma) / n) + 2.0 / n;
    double p = std::min(1.0, gamma + margin);
    Rng root = Rng(seed).split(0x67656e4dULL);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Graph g = gnp(n, p, root.split(static_cast<std::uint64_t>(attempt)));
        int min_deg = n;
        for (int v = 0; v < n; ++v) min_deg = std::min(min_deg, g.degree(v));
        if (static_cast<double>(min_deg) >= gamma * n) {
            MinDegreeInstance out;
            out.g = std::move(g);
            out.gamma = gamma;
            out.p_used = p;
            out.min_degree = min_deg;
            out.retries = attempt;
            return out;
        }
    }
    throw RetryExhausted("no G(" + std::to_string(n) + ", " + std::to_string(p) +
                         ") sample reached minimum degree " + std::to_string(gamma) + "*n in " +
                         std::to_string(max_retries) + " tries");
}

TwoColoredInstance gen_two_colored_Kn(int n, int k, int band_width, std::uint64_t seed,
                                      double p_hi, double p_lo) {
    if (n < 2 || k < 1 || band_width < 0) throw InfeasibleParams("bad two-coloring parameters");
    TwoColoredInstance out;
    out.band_width = band_width;
    out.p_hi = p_hi;
    out.p_lo = p_lo;
    out.planted_parts.assign(static_cast<std::size_t>(k), {});
    std::vector<int> class_of(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int c = std::min(k - 1, static_cast<int>(static_cast<long long>(v) * k / n));
        class_of[static_cast<std::size_t>(v)] = c;
        out.planted_parts[static_cast<std::size_t>(c)].push_back(v);
    }
    Rng rng = Rng(seed).split(0x67656e32ULL);
    out.red = Graph(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int dist = std::abs(class_of[static_cast<std::size_t>(u)] - class_of[static_cast<std::size_t>(v)]);
            double p = (dist <= band_width) ? p_hi : p_lo;
            if (rng.bernoulli(p)) out.red.add_edge(u, v);
        }
    return out;
}

PlantedBackboneInstance gen_planted_backbone_G(int k, int r, int part_size, std::uint64_t seed,
                                               double p_hi, double p_lo) {
    if (k < 1 || r < 1 || part_size < 1) throw InfeasibleParams("bad backbone-plant parameters");
    PlantedBackboneInstance out;
    out.k = k;
    out.r = r;
    out.p_hi = p_hi;
    out.p_lo = p_lo;
    int cols = r + 1;
    int n = k * cols * part_size;
    out.planted.assign(static_cast<std::size_t>(k),
                       std::vector<std::vector<int>>(static_cast<std::size_t>(cols)));
    std::vector<std::pair<int, int>> cell_of(static_cast<std::size_t>(n));
    int next = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < cols; ++j)
            for (int s = 0; s < part_size; ++s) {
                out.planted[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(next);
                cell_of[static_cast<std::size_t>(next)] = {i, j};
                ++next;
            }
    Rng rng = Rng(seed).split(0x67656e42ULL);
    out.g = Graph(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            auto [iu, ju] = cell_of[static_cast<std::size_t>(u)];
            auto [iv, jv] = cell_of[static_cast<std::size_t>(v)];
            if (ju == jv) continue;  // columns stay independent inside
            bool close = std::abs(iu - iv) <= 1;
            if (rng.bernoulli(close ? p_hi : p_lo)) out.g.add_edge(u, v);
        }
    return out;
}

}  // namespace weave
