// plane_graph.hpp
//
// Plane graphs stored as a combinatorial embedding: darts (half-edges) with a
// twin involution and a counterclockwise rotation at every vertex. Faces are
// the orbits of d -> next_at_origin(twin(d)); the face of a dart d is the
// angle between prev_at_origin(d) and d at origin(d).

#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pdcr {

using VertexId = int;
using DartId = int;
using FaceId = int;

/// Simple undirected adjacency lists (no loops, no parallel entries).
using Adjacency = std::vector<std::vector<int>>;

inline constexpr int kInfinity = std::numeric_limits<int>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dart {
  DartId id = -1;
  VertexId origin = -1;
  DartId twin = -1;
  DartId next_at_origin = -1;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// A face may consist of several boundary cycles when the graph is
/// disconnected; `boundary` is their concatenation in cycle order.
struct Face {
  FaceId id = -1;
  std::vector<DartId> boundary;
  std::vector<std::vector<DartId>> cycles;
  std::vector<VertexId> isolated_vertices;
  int length() const { return static_cast<int>(boundary.size()); }
};

/// Places a component inside a face of another component.
/// `outer_dart` lies on the outer face of the nested component (-1 for an
/// isolated vertex); `container_dart` lies on the containing face.
struct Nesting {
  VertexId component_vertex = -1;
  DartId outer_dart = -1;
  DartId container_dart = -1;
};

/// Integer-valued attribute tables keyed by name, indexed by vertex/face id.
struct Labels {
  std::map<std::string, std::vector<int>> vertex;
  std::map<std::string, std::vector<int>> face;
  bool empty() const { return vertex.empty() && face.empty(); }
};

struct BuildOptions {
  std::vector<Nesting> nesting;
  bool require_connected = false;
};

class PlanarGraph {
 public:
  PlanarGraph() = default;

  /// Validates and builds. `darts[i].id` must equal i.
  static PlanarGraph from_darts(int vertex_count, std::vector<Dart> darts,
                                const BuildOptions& options = {});

  int vertex_count() const { return vertex_count_; }
  int dart_count() const { return static_cast<int>(darts_.size()); }
  int edge_count() const { return dart_count() / 2; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int component_count() const { return component_count_; }

  const std::vector<Dart>& darts() const { return darts_; }
  VertexId origin(DartId d) const { return darts_[d].origin; }
  DartId twin(DartId d) const { return darts_[d].twin; }
  DartId next(DartId d) const { return darts_[d].next_at_origin; }
  DartId prev(DartId d) const { return prev_[d]; }
  VertexId head(DartId d) const { return origin(twin(d)); }
  /// Successor of d along its face boundary.
  DartId face_successor(DartId d) const { return next(twin(d)); }

  FaceId face_of(DartId d) const { return face_of_dart_[d]; }
  const Face& face(FaceId f) const { return faces_[f]; }
  const std::vector<Face>& faces() const { return faces_; }

  /// Darts leaving v in counterclockwise order.
  const std::vector<DartId>& darts_at(VertexId v) const { return rotation_[v]; }
  int degree(VertexId v) const { return static_cast<int>(rotation_[v].size()); }
  int max_degree() const;
  std::vector<VertexId> neighbors(VertexId v) const;

  /// One face per angle in rotation order (a degree-0 vertex has one entry).
  const std::vector<FaceId>& angle_faces(VertexId v) const { return angle_faces_.at(check_vertex(v)); }
  /// Deduplicated, sorted.
  const std::vector<FaceId>& incident_faces(VertexId v) const { return incident_faces_.at(check_vertex(v)); }

  /// Simple primal adjacency.
  const Adjacency& adjacency() const { return adjacency_; }
  /// Faces adjacent across at least one edge; bridges give no self-move.
  const Adjacency& dual_adjacency() const { return dual_adjacency_; }

  const std::vector<Nesting>& nesting() const { return nesting_; }

  Labels& labels() { return labels_; }
  const Labels& labels() const { return labels_; }
  const std::vector<Point>& coordinates() const { return coordinates_; }
  bool has_coordinates() const { return !coordinates_.empty(); }
  void set_coordinates(std::vector<Point> coords);

  /// Attribute lookup helpers; return fallback when the table is absent.
  int vertex_label(const std::string& key, VertexId v, int fallback = -1) const;
  int face_label(const std::string& key, FaceId f, int fallback = -1) const;

  /// Darts listed per vertex in rotation order, as a JSON-friendly triple.
  std::vector<std::vector<DartId>> rotation_system() const { return rotation_; }

 private:
  int check_vertex(VertexId v) const;
  void validate_and_trace(const BuildOptions& options);

  int vertex_count_ = 0;
  int component_count_ = 0;
  std::vector<Dart> darts_;
  std::vector<DartId> prev_;
  std::vector<std::vector<DartId>> rotation_;
  std::vector<Face> faces_;
  std::vector<FaceId> face_of_dart_;
  std::vector<std::vector<FaceId>> angle_faces_;
  std::vector<std::vector<FaceId>> incident_faces_;
  Adjacency adjacency_;
  Adjacency dual_adjacency_;
  std::vector<Nesting> nesting_;
  Labels labels_;
  std::vector<Point> coordinates_;
};

/// Darts are numbered so that edge i has darts 2i and 2i+1 when built from
/// rotations alone; `twin_pairs` may use any numbering covering 0..2E-1.
PlanarGraph build_from_rotation(int vertex_count,
                                const std::vector<std::pair<DartId, DartId>>& twin_pairs,
                                const std::vector<std::vector<DartId>>& rotations,
                                const BuildOptions& options = {});

/// Rotation derived from a straight-line drawing by sorting neighbors by angle.
PlanarGraph from_straight_line(const std::vector<Point>& points,
                               const std::vector<std::pair<VertexId, VertexId>>& edges);

std::vector<Face> trace_faces(const PlanarGraph& g);
std::vector<FaceId> incident_faces(const PlanarGraph& g, VertexId v);
Adjacency dual_movement_graph(const PlanarGraph& g);

/// Multi-source BFS; unreachable vertices get kInfinity.
std::vector<int> bfs_distances(const Adjacency& graph, const std::vector<int>& sources);
std::vector<std::vector<int>> all_pairs_distances(const Adjacency& graph);
/// Throws GraphError on an acyclic graph.
int girth(const Adjacency& graph);
bool is_connected(const Adjacency& graph);

/// Replaces v (degree k >= 2) by a 2k-cycle alternating its neighbors with k
/// new vertices; the new vertices get ids vertex_count-1 .. in rotation order
/// after compaction (v is removed and higher ids shift down by one).
PlanarGraph degree_based_split(const PlanarGraph& g, VertexId v);

struct LayoutResult {
  std::vector<Point> positions;
  double max_residual = 0.0;
};

/// Barycentric (Tutte) layout: the boundary of `outer` is pinned to `polygon`
/// (a regular polygon when empty), every other vertex sits at the average of
/// its neighbors. Throws GraphError when the system is singular.
LayoutResult planar_layout(const PlanarGraph& g, FaceId outer, std::vector<Point> polygon = {},
                           double tolerance = 1e-9);

}  // namespace pdcr
