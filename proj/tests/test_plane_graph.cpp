#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "pdcr/embedding_builder.hpp"
#include "pdcr/generators.hpp"
#include "pdcr/graph_io.hpp"
#include "pdcr/plane_graph.hpp"

using namespace pdcr;

namespace {

std::vector<int> face_lengths(const PlanarGraph& g) {
  std::vector<int> out;
  for (const Face& f : g.faces()) out.push_back(f.length());
  std::sort(out.begin(), out.end());
  return out;
}

// Plain reference BFS on an edge list, independent of the dart structure.
std::vector<int> reference_bfs(int n, const std::vector<std::pair<int, int>>& edges, int src) {
  std::vector<int> dist(n, -1);
  dist[src] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [u, v] : edges) {
      for (int k = 0; k < 2; ++k) {
        if (dist[u] >= 0 && (dist[v] < 0 || dist[v] > dist[u] + 1)) {
          dist[v] = dist[u] + 1;
          changed = true;
        }
        std::swap(u, v);
      }
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("triangle has two faces of length three") {
  PlanarGraph g = small_family("cycle", 3);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(face_lengths(g) == std::vector<int>{3, 3});
  for (int v = 0; v < 3; ++v) CHECK(g.incident_faces(v).size() == 2);
}

TEST_CASE("single edge has one face of length two") {
  PlanarGraph g = small_family("k2");
  CHECK(g.face_count() == 1);
  CHECK(g.face(0).length() == 2);
  CHECK(g.dual_adjacency()[0].empty());
}

TEST_CASE("single vertex has one face") {
  PlanarGraph g = small_family("k1");
  CHECK(g.face_count() == 1);
  CHECK(g.incident_faces(0) == std::vector<FaceId>{0});
}

TEST_CASE("dodecahedron census") {
  PlanarGraph g = dodecahedron();
  CHECK(g.vertex_count() == 20);
  CHECK(g.edge_count() == 30);
  CHECK(g.face_count() == 12);
  CHECK(face_lengths(g) == std::vector<int>(12, 5));
  CHECK(girth(g.adjacency()) == 5);
  for (int v = 0; v < 20; ++v) CHECK(g.degree(v) == 3);
  // Dual of the dodecahedron is the icosahedron: 5-regular.
  for (const auto& nb : g.dual_adjacency()) CHECK(nb.size() == 5);
}

TEST_CASE("K_{2,3} has three quadrilateral faces") {
  PlanarGraph g = small_family("k2n", 3);
  CHECK(face_lengths(g) == std::vector<int>{4, 4, 4});
}

TEST_CASE("bowtie cut vertex touches every face") {
  PlanarGraph g = small_family("bowtie");
  CHECK(g.face_count() == 3);
  CHECK(face_lengths(g) == std::vector<int>{3, 3, 6});
  CHECK(g.incident_faces(0).size() == 3);
  CHECK(g.angle_faces(0).size() == 4);
}

TEST_CASE("cube dual is the octahedron") {
  PlanarGraph g = small_family("cube");
  CHECK(g.face_count() == 6);
  for (const auto& nb : g.dual_adjacency()) CHECK(nb.size() == 4);
  PlanarGraph o = small_family("octahedron");
  CHECK(o.vertex_count() == 6);
  CHECK(o.edge_count() == 12);
  CHECK(face_lengths(o) == std::vector<int>(8, 3));
  for (int v = 0; v < 6; ++v) CHECK(o.degree(v) == 4);
}

TEST_CASE("face boundaries cover every dart once") {
  for (const char* name : {"cube", "octahedron", "k4", "bowtie", "dodecahedron"}) {
    PlanarGraph g = small_family(name, 0);
    std::vector<int> hits(g.dart_count(), 0);
    for (const Face& f : g.faces())
      for (DartId d : f.boundary) {
        ++hits[d];
        CHECK(g.face_of(d) == f.id);
      }
    for (int h : hits) CHECK(h == 1);
    CHECK(g.vertex_count() - g.edge_count() + g.face_count() == 2);
  }
}

TEST_CASE("broken twin involution is rejected") {
  std::vector<Dart> darts{{0, 0, 1, 0}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(PlanarGraph::from_darts(2, darts), GraphError);
}

TEST_CASE("non-planar rotation is rejected") {
  // K4 with one vertex's rotation reversed has genus 1.
  PlanarGraph g = small_family("k4");
  std::vector<std::vector<DartId>> rot = g.rotation_system();
  std::reverse(rot[0].begin(), rot[0].end());
  std::vector<std::pair<DartId, DartId>> twins;
  for (DartId d = 0; d < g.dart_count(); ++d)
    if (d < g.twin(d)) twins.emplace_back(d, g.twin(d));
  CHECK_THROWS_AS(build_from_rotation(4, twins, rot), GraphError);
}

TEST_CASE("disconnected graph needs a nesting entry") {
  std::vector<std::pair<DartId, DartId>> twins{{0, 1}};
  std::vector<std::vector<DartId>> rot{{0}, {1}, {}};
  CHECK_THROWS_AS(build_from_rotation(3, twins, rot), GraphError);
  BuildOptions opts;
  opts.nesting.push_back({2, -1, 0});
  PlanarGraph g = build_from_rotation(3, twins, rot, opts);
  CHECK(g.face_count() == 1);
  CHECK(g.face(0).isolated_vertices == std::vector<VertexId>{2});
  CHECK(g.incident_faces(2) == std::vector<FaceId>{0});
}

TEST_CASE("nested triangle shares the container face") {
  // Outer triangle 0,1,2 and an inner triangle 3,4,5 inside it.
  std::vector<Point> pts{{0, 0}, {10, 0}, {5, 9}, {4, 2}, {6, 2}, {5, 4}};
  PlanarGraph outer = from_straight_line({pts[0], pts[1], pts[2]}, {{0, 1}, {1, 2}, {2, 0}});
  PlanarGraph inner = from_straight_line({pts[3], pts[4], pts[5]}, {{0, 1}, {1, 2}, {2, 0}});
  std::vector<std::pair<DartId, DartId>> twins;
  std::vector<std::vector<DartId>> rot(6);
  for (DartId d = 0; d < 6; ++d) {
    if (d < outer.twin(d)) twins.emplace_back(d, outer.twin(d));
    if (d < inner.twin(d)) twins.emplace_back(d + 6, inner.twin(d) + 6);
  }
  for (int v = 0; v < 3; ++v) {
    rot[v] = outer.darts_at(v);
    for (DartId d : inner.darts_at(v)) rot[v + 3].push_back(d + 6);
  }
  // Bounded outer-triangle face and the inner triangle's unbounded face.
  DartId container = -1, inner_outer = -1;
  for (const Face& f : outer.faces()) {
    double area = 0;
    for (DartId d : f.boundary) {
      const Point &p = pts[outer.origin(d)], &q = pts[outer.head(d)];
      area += p.x * q.y - q.x * p.y;
    }
    if (area < 0) container = f.boundary.front();  // clockwise = bounded
  }
  for (const Face& f : inner.faces()) {
    double area = 0;
    for (DartId d : f.boundary) {
      const Point &p = pts[inner.origin(d) + 3], &q = pts[inner.head(d) + 3];
      area += p.x * q.y - q.x * p.y;
    }
    if (area > 0) inner_outer = f.boundary.front() + 6;
  }
  BuildOptions opts;
  opts.nesting.push_back({3, inner_outer, container});
  PlanarGraph g = build_from_rotation(6, twins, rot, opts);
  CHECK(g.face_count() == 3);
  CHECK(g.face(g.face_of(container)).cycles.size() == 2);
  CHECK(g.face_of(container) == g.face_of(inner_outer));
}

TEST_CASE("degree-based split of the octahedron") {
  PlanarGraph o = small_family("octahedron");
  PlanarGraph s = degree_based_split(o, 0);
  CHECK(s.vertex_count() == 6 - 1 + 4);
  CHECK(s.edge_count() == 12 - 4 + 8);
  // Every old face keeps its length; an extra 8-face appears.
  std::vector<int> expected(8, 3);
  expected.push_back(8);
  CHECK(face_lengths(s) == expected);
  for (int v = 5; v < 9; ++v) CHECK(s.degree(v) == 2);
}

TEST_CASE("split preserves the original face through every neighbor") {
  PlanarGraph d = dodecahedron();
  PlanarGraph s = degree_based_split(d, 7);
  std::vector<int> expected(12, 5);
  expected.push_back(6);
  std::sort(expected.begin(), expected.end());
  CHECK(face_lengths(s) == expected);
  // The three neighbors each trade one edge for two.
  CHECK(s.max_degree() == 4);
}

TEST_CASE("bfs agrees with a relaxation reference") {
  PlanarGraph g = subdivide(small_family("cube"), 2);
  std::vector<std::pair<int, int>> edges;
  for (DartId d = 0; d < g.dart_count(); ++d)
    if (d < g.twin(d)) edges.emplace_back(g.origin(d), g.head(d));
  for (int src : {0, 5, 17}) {
    auto mine = bfs_distances(g.adjacency(), {src});
    auto ref = reference_bfs(g.vertex_count(), edges, src);
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(mine[v] == ref[v]);
  }
  CHECK(girth(g.adjacency()) == 12);
  CHECK_THROWS_AS(girth(small_family("path", 4).adjacency()), GraphError);
}

TEST_CASE("barycentric layout of the cube") {
  PlanarGraph g = small_family("cube");
  FaceId outer = 0;
  for (const Face& f : g.faces())
    if (g.origin(f.boundary.front()) < 4 && g.origin(f.boundary[1]) < 4 && g.origin(f.boundary[2]) < 4) outer = f.id;
  LayoutResult r = planar_layout(g, outer);
  CHECK(r.max_residual < 1e-9);
  for (int v = 0; v < g.vertex_count(); ++v) {
    bool pinned = false;
    for (DartId d : g.face(outer).boundary) pinned |= g.origin(d) == v;
    if (pinned) continue;
    double sx = 0, sy = 0;
    for (VertexId w : g.neighbors(v)) {
      sx += r.positions[w].x;
      sy += r.positions[w].y;
    }
    CHECK(std::abs(sx / g.degree(v) - r.positions[v].x) < 1e-9);
    CHECK(std::abs(sy / g.degree(v) - r.positions[v].y) < 1e-9);
  }
}

TEST_CASE("layout of a graph with a floating component is singular") {
  std::vector<std::pair<DartId, DartId>> twins{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  // Triangle 0,1,2 plus an edge 3-4 floating inside it.
  PlanarGraph tri = small_family("cycle", 3);
  std::vector<std::vector<DartId>> rot(5);
  std::vector<std::pair<DartId, DartId>> tw;
  for (DartId d = 0; d < 6; ++d)
    if (d < tri.twin(d)) tw.emplace_back(d, tri.twin(d));
  for (int v = 0; v < 3; ++v) rot[v] = tri.darts_at(v);
  tw.emplace_back(6, 7);
  rot[3] = {6};
  rot[4] = {7};
  BuildOptions opts;
  opts.nesting.push_back({3, 6, tri.faces()[0].boundary.front()});
  PlanarGraph g = build_from_rotation(5, tw, rot, opts);
  FaceId outer = g.face_of(tri.faces()[1].boundary.front());
  CHECK_THROWS_AS(planar_layout(g, outer), GraphError);
}

TEST_CASE("json round trip keeps rotation, labels and nesting") {
  PlanarGraph g = build_D5();
  PlanarGraph h = graph_from_json(graph_to_json(g, true));
  CHECK(h.vertex_count() == g.vertex_count());
  CHECK(h.rotation_system() == g.rotation_system());
  CHECK(h.labels().vertex == g.labels().vertex);
  for (DartId d = 0; d < g.dart_count(); ++d) CHECK(h.twin(d) == g.twin(d));
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"format":"other"})")));
}
