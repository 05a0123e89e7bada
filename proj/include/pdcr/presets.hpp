// presets.hpp
//
// Named graphs and board layouts shared by the command line and the play
// service. Preset strings:
//   <family>[:k]     any small_family name, e.g. cycle:6, grid:4, cube
//   d5 | g0
//   glayers:<L>      G(L)
//   gnsr:<n>,<s>,<r>
// A trailing "/norm3" or "/norm4" applies normalize_degrees.

#pragma once

#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdcr/plane_graph.hpp"

namespace pdcr {

/// Throws GraphError for unknown names or malformed parameters.
PlanarGraph graph_preset(std::string_view spec);

struct BoardLayout {
  std::vector<Point> positions;
  /// Face drawn as the unbounded region.
  FaceId outer = -1;
};

/// Stored coordinates when the graph has them (outer = the face of largest
/// area); otherwise a barycentric layout with the longest face pinned to a
/// regular polygon (lowest id on ties), falling back to a circle when that
/// system is singular.
BoardLayout board_layout(const PlanarGraph& g);

/// {"outer", "vertices": [[x, y]...], "faces": [[v...]...]}; face polygons
/// list boundary vertices in dart order.
nlohmann::json layout_to_json(const PlanarGraph& g, const BoardLayout& layout);

}  // namespace pdcr
