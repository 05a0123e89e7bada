// generators.hpp
//
// Embedded graph families: small test families, the dodecahedron and its
// subdivision D5, the 4-regular graph G(L) built from D5 by degree-based
// splits and nested 30-cycles, and the grid-like graphs G_{n,s,r}.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pdcr/plane_graph.hpp"

namespace pdcr {

/// Label table keys written by the generators.
namespace label {
inline constexpr const char* kVertexClass = "vertex_class";
inline constexpr const char* kFaceClass = "face_class";
inline constexpr const char* kGridX = "grid_x";
inline constexpr const char* kGridY = "grid_y";
inline constexpr const char* kRegion = "region";
inline constexpr const char* kRing = "ring";
inline constexpr const char* kClosestGridVertex = "closest_grid_vertex";
inline constexpr const char* kOriginal = "original";
inline constexpr const char* kSubdividedEdge = "subdivided_edge";
inline constexpr const char* kEdgePosition = "edge_position";
inline constexpr const char* kBipartition = "bipartition";
inline constexpr const char* kD5Vertex = "d5_vertex";
inline constexpr const char* kInG0 = "g0";
inline constexpr const char* kLayer = "layer";
inline constexpr const char* kDFace = "d_face";
}  // namespace label

enum class VertexClass : int { plain = 0, grid = 1, subdivision = 2, ring = 3, split = 4 };
enum class FaceClass : int { ordinary = 0, shallow = 1, deep = 2, hole = 3 };

PlanarGraph dodecahedron();

/// Every edge becomes a path with t interior vertices.
PlanarGraph subdivide(const PlanarGraph& g, int t);

/// cycle (C_k), path (P_k), k2n (K_{2,k}), star (K_{1,k}), grid (k x k),
/// k1, k2, k4, cube, octahedron, bowtie, dodecahedron.
PlanarGraph small_family(std::string_view name, int k = 0);

/// The dodecahedron with five subdivision vertices per edge, labelled with the
/// bipartition (A holds the degree-3 vertices).
PlanarGraph build_D5();

PlanarGraph build_G0();

/// G(L): G0 with `layers` nested 30-cycles adjoined inside each of the twelve
/// large faces. Faces carry d5_vertex images (-1 for holes).
PlanarGraph build_G_delta4(int layers);

/// Face -> D5 vertex, -1 for holes. Requires labels from build_G_delta4.
std::vector<int> face_to_D5_vertex(const PlanarGraph& g);

PlanarGraph build_gnsr(int n, int s, int r);

/// Typed view of the G_{n,s,r} labels.
struct GridLabels {
  std::vector<VertexClass> vertex_class;
  std::vector<FaceClass> face_class;
  std::vector<int> region;               // per face: face of G_{n,s} it lies in
  std::vector<VertexId> closest_grid;    // per face: v_f
  std::vector<int> grid_x, grid_y;       // per vertex, -1 off-grid
  int n = 0;
  VertexId grid_vertex(int x, int y) const { return y * n + x; }
};
GridLabels grid_labels(const PlanarGraph& g);

/// Adds leaves until every vertex has degree `target` or 1.
PlanarGraph normalize_degrees(const PlanarGraph& g, int target);

/// Closed-form sizes used by the count checks.
struct ExpectedCounts {
  long vertices = 0;
  long edges = 0;
};
ExpectedCounts gnsr_counts(int n, int s, int r);
ExpectedCounts g_delta4_counts(int layers);

}  // namespace pdcr
