// Graph/labelling interchange. Format:
//   {"schema": "weave/graph-1", "n": int,
//    "edges": [[u, v], ...]           // 0-based, u < v, no duplicates or loops
//    "parts": [[v, ...], ...],        // optional, disjoint
//    "labelling": [int, ...]}         // optional, label_of_vertex, values 1..n
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "weave/graph.hpp"

namespace weave {

using Json = nlohmann::json;

Json graph_to_json(const Graph& g, const Labelling* lab = nullptr);
Graph graph_from_json(const Json& j, std::optional<Labelling>* lab_out = nullptr);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

Graph load_graph(const std::string& path, std::optional<Labelling>* lab_out = nullptr);
void save_graph(const std::string& path, const Graph& g, const Labelling* lab = nullptr);

}  // namespace weave
