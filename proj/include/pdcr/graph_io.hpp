// graph_io.hpp
//
// Versioned JSON interchange for embedded graphs:
//   { "format": "pdcr-graph", "version": 1, "vertex_count": n,
//     "darts": [{"id", "origin", "twin", "next_at_origin"}, ...],
//     "labels": {"vertex": {name: [...]}, "face": {name: [...]}},
//     "coordinates": [[x, y], ...],
//     "nesting": [{"component_vertex", "outer_dart", "container_dart"}] }
// labels, coordinates and nesting are optional.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pdcr/plane_graph.hpp"

namespace pdcr {

inline constexpr int kGraphFormatVersion = 1;

nlohmann::json graph_to_json(const PlanarGraph& g, bool include_labels = true);
PlanarGraph graph_from_json(const nlohmann::json& j);

PlanarGraph load_graph(const std::string& path);
void save_graph(const PlanarGraph& g, const std::string& path, bool include_labels = true);

/// "u v" per line, one line per undirected edge.
std::string edge_list(const PlanarGraph& g);

}  // namespace pdcr
