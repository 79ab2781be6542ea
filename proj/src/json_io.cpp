#include "weave/json_io.hpp"

#include <fstream>

#include "weave/errors.hpp"

namespace weave {

Json graph_to_json(const Graph& g, const Labelling* lab) {
    Json j;
    j["schema"] = "weave/graph-1";
    j["n"] = g.n;
    Json edges = Json::array();
    for (int u = 0; u < g.n; ++u)
        g.adj[static_cast<std::size_t>(u)].for_each([&](int v) {
            if (u < v) edges.push_back(Json::array({u, v}));
        });
    j["edges"] = std::move(edges);
    if (!g.parts.empty()) {
        Json parts = Json::array();
        for (const auto& p : g.parts) parts.push_back(p.to_vector());
        j["parts"] = std::move(parts);
    }
    if (lab) j["labelling"] = lab->label;
    return j;
}

Graph graph_from_json(const Json& j, std::optional<Labelling>* lab_out) {
    try {
        if (j.contains("schema")) {
            std::string schema = j["schema"].get<std::string>();
            if (schema != "weave/graph-1") throw ParseError("unknown schema: " + schema);
        }
        int n = j.at("n").get<int>();
        if (n < 0) throw ParseError("negative vertex count");
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge is not a pair");
            int u = e[0].get<int>(), v = e[1].get<int>();
            if (u >= v) throw ParseError("edge not in u < v form: (" + std::to_string(u) + "," + std::to_string(v) + ")");
            edges.emplace_back(u, v);
        }
        std::vector<std::vector<int>> parts;
        if (j.contains("parts"))
            for (const auto& p : j["parts"]) parts.push_back(p.get<std::vector<int>>());
        Graph g = Graph::from_edges(n, edges, parts);
        if (lab_out) {
            if (j.contains("labelling"))
                *lab_out = Labelling::from_labels(j["labelling"].get<std::vector<int>>());
            else
                lab_out->reset();
        }
        return g;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed graph json: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << '\n';
}

Graph load_graph(const std::string& path, std::optional<Labelling>* lab_out) {
    return graph_from_json(load_json_file(path), lab_out);
}

void save_graph(const std::string& path, const Graph& g, const Labelling* lab) {
    save_json_file(path, graph_to_json(g, lab));
}

}  // namespace weave
