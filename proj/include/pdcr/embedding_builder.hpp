// embedding_builder.hpp
//
// Mutable rotation-system editor used by the generators. Dart and vertex ids
// are stable while editing; removed elements are compacted by finalize().

#pragma once

#include <vector>

#include "pdcr/plane_graph.hpp"

namespace pdcr {

class EmbeddingBuilder {
 public:
  EmbeddingBuilder() = default;
  explicit EmbeddingBuilder(const PlanarGraph& g);

  VertexId add_vertex();
  VertexId add_vertex(Point p);

  /// Adds edge u-v. The dart at u is placed counterclockwise-just-before
  /// `before_u` (which must leave u), i.e. into the angle of `before_u`; -1 is
  /// allowed only when u has no darts. Same for v. Returns the dart u->v.
  DartId add_edge(VertexId u, DartId before_u, VertexId v, DartId before_v);

  /// Edge between the corners (angles) of two darts; see add_edge.
  DartId insert_chord(DartId angle_u, DartId angle_v) {
    return add_edge(origin(angle_u), angle_u, origin(angle_v), angle_v);
  }

  /// Splits the edge of d with a new vertex w. Afterwards d runs origin(d)->w
  /// and twin(d)'s old twin side runs head->w; returns w.
  VertexId subdivide_edge(DartId d);

  /// Degree-based split; returns the new cycle vertices u_1..u_k where u_i
  /// lies between the i-th and (i+1)-th neighbor in rotation order.
  std::vector<VertexId> split_vertex(VertexId v);

  void remove_vertex(VertexId v);

  VertexId origin(DartId d) const { return origin_[d]; }
  DartId twin(DartId d) const { return twin_[d]; }
  DartId next(DartId d) const { return next_[d]; }
  DartId prev(DartId d) const { return prev_[d]; }
  VertexId head(DartId d) const { return origin_[twin_[d]]; }
  bool vertex_alive(VertexId v) const { return vertex_alive_[v]; }
  bool dart_alive(DartId d) const { return dart_alive_[d]; }
  int degree(VertexId v) const;
  std::vector<DartId> darts_at(VertexId v) const;
  /// Boundary of the face containing d, starting at d.
  std::vector<DartId> trace_face(DartId d) const;

  int vertex_slots() const { return static_cast<int>(first_.size()); }
  int dart_slots() const { return static_cast<int>(origin_.size()); }

  /// Compacted graph. Old-to-new maps (-1 for removed) are written when given.
  PlanarGraph finalize(std::vector<VertexId>* vertex_map = nullptr,
                       std::vector<DartId>* dart_map = nullptr,
                       const BuildOptions& options = {}) const;

 private:
  DartId new_dart(VertexId origin);
  void link_before(DartId d, DartId before);
  void unlink(DartId d);

  std::vector<VertexId> origin_;
  std::vector<DartId> twin_;
  std::vector<DartId> next_;
  std::vector<DartId> prev_;
  std::vector<bool> dart_alive_;
  std::vector<DartId> first_;
  std::vector<bool> vertex_alive_;
  std::vector<Point> points_;
  bool has_points_ = true;
};

}  // namespace pdcr
