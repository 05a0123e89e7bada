// Random connected plane graphs of maximum degree 3, grown from a triangle by
// edge subdivisions, chords inside a face and pendant leaves.
#pragma once

#include <random>

#include "pdcr/embedding_builder.hpp"
#include "pdcr/generators.hpp"

namespace pdcr::testing {

inline bool adjacent(const EmbeddingBuilder& b, VertexId u, VertexId v) {
  for (DartId d : b.darts_at(u))
    if (b.head(d) == v) return true;
  return false;
}

/// Grows until `vertices` vertices exist; the result has maximum degree 3.
inline PlanarGraph random_subcubic(std::mt19937& rng, int vertices) {
  EmbeddingBuilder b(small_family("cycle", 3));
  int alive = 3;
  auto pick_dart = [&] {
    for (;;) {
      const DartId d = static_cast<DartId>(rng() % b.dart_slots());
      if (b.dart_alive(d)) return d;
    }
  };
  while (alive < vertices) {
    const int op = static_cast<int>(rng() % 3);
    if (op == 0) {
      b.subdivide_edge(pick_dart());
      ++alive;
    } else if (op == 1) {
      const auto face = b.trace_face(pick_dart());
      std::vector<DartId> open;
      for (DartId x : face)
        if (b.degree(b.origin(x)) <= 2) open.push_back(x);
      if (open.size() < 2) continue;
      const DartId x = open[rng() % open.size()], y = open[rng() % open.size()];
      if (b.origin(x) == b.origin(y) || adjacent(b, b.origin(x), b.origin(y))) continue;
      b.insert_chord(x, y);
    } else {
      const DartId d = pick_dart();
      const VertexId v = b.origin(d);
      if (b.degree(v) > 2) continue;
      const VertexId leaf = b.add_vertex();
      b.add_edge(v, d, leaf, -1);
      ++alive;
    }
  }
  PlanarGraph g = b.finalize();
  g.set_coordinates({});
  return g;
}

/// A random subcubic graph that still has at most `cap` vertices after
/// normalization to degrees {1, 3}.
inline PlanarGraph random_normalized_subcubic(std::mt19937& rng, int cap) {
  for (;;) {
    const int n = 4 + static_cast<int>(rng() % 20);
    PlanarGraph g = normalize_degrees(random_subcubic(rng, n), 3);
    if (g.vertex_count() <= cap) return g;
  }
}

}  // namespace pdcr::testing
