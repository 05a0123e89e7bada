#include "pdcr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

#include "pdcr/embedding_builder.hpp"

namespace pdcr {

namespace {

constexpr double kPi = std::numbers::pi;

Point polar(double radius, double degrees) {
  const double t = degrees * kPi / 180.0;
  return {radius * std::cos(t), radius * std::sin(t)};
}

std::vector<Point> regular_polygon(int k, double radius, double start_degrees = 90.0) {
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back(polar(radius, start_degrees + 360.0 * i / k));
  return pts;
}

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

PlanarGraph cycle_graph(int k) {
  if (k < 3) throw GraphError("cycle needs k >= 3");
  EdgeList e;
  for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
  return from_straight_line(regular_polygon(k, 1.0), e);
}

PlanarGraph path_graph(int k) {
  if (k < 1) throw GraphError("path needs k >= 1");
  std::vector<Point> pts;
  EdgeList e;
  for (int i = 0; i < k; ++i) pts.push_back({static_cast<double>(i), 0.0});
  for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
  return from_straight_line(pts, e);
}

PlanarGraph star_graph(int k) {
  std::vector<Point> pts{{0, 0}};
  EdgeList e;
  for (int i = 0; i < k; ++i) {
    pts.push_back(polar(1.0, 90.0 + 360.0 * i / k));
    e.emplace_back(0, i + 1);
  }
  return from_straight_line(pts, e);
}

PlanarGraph k2n_graph(int k) {
  if (k < 1) throw GraphError("K_{2,n} needs n >= 1");
  std::vector<Point> pts{{-1, 0}, {1, 0}};
  EdgeList e;
  for (int i = 0; i < k; ++i) {
    pts.push_back({0.0, i - (k - 1) / 2.0});
    e.emplace_back(0, i + 2);
    e.emplace_back(1, i + 2);
  }
  return from_straight_line(pts, e);
}

PlanarGraph grid_graph(int n) {
  if (n < 1) throw GraphError("grid needs n >= 1");
  std::vector<Point> pts;
  EdgeList e;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      if (x + 1 < n) e.emplace_back(y * n + x, y * n + x + 1);
      if (y + 1 < n) e.emplace_back(y * n + x, (y + 1) * n + x);
    }
  PlanarGraph g = from_straight_line(pts, e);
  std::vector<int> gx(n * n), gy(n * n);
  for (int v = 0; v < n * n; ++v) {
    gx[v] = v % n;
    gy[v] = v / n;
  }
  g.labels().vertex[label::kGridX] = gx;
  g.labels().vertex[label::kGridY] = gy;
  return g;
}

PlanarGraph two_rings(int k, bool octa) {
  // Outer and inner k-gons; cube joins matching corners, octahedron joins
  // each inner corner to the two nearest outer corners.
  std::vector<Point> pts = regular_polygon(k, 3.0);
  auto inner = regular_polygon(k, 1.0, octa ? 90.0 + 180.0 / k : 90.0);
  pts.insert(pts.end(), inner.begin(), inner.end());
  EdgeList e;
  for (int i = 0; i < k; ++i) {
    e.emplace_back(i, (i + 1) % k);
    e.emplace_back(k + i, k + (i + 1) % k);
    e.emplace_back(i, k + i);
    if (octa) e.emplace_back((i + 1) % k, k + i);
  }
  return from_straight_line(pts, e);
}

}  // namespace

PlanarGraph dodecahedron() {
  // Schlegel diagram: outer pentagon a, ring b, zigzag partner c, inner pentagon d.
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(polar(4.0, 90.0 + 72.0 * i));
  for (int i = 0; i < 5; ++i) pts.push_back(polar(2.6, 90.0 + 72.0 * i));
  for (int i = 0; i < 5; ++i) pts.push_back(polar(2.0, 126.0 + 72.0 * i));
  for (int i = 0; i < 5; ++i) pts.push_back(polar(1.0, 126.0 + 72.0 * i));
  EdgeList e;
  for (int i = 0; i < 5; ++i) {
    const int j = (i + 1) % 5;
    e.emplace_back(i, j);
    e.emplace_back(i, 5 + i);
    e.emplace_back(5 + i, 10 + i);
    e.emplace_back(10 + i, 5 + j);
    e.emplace_back(10 + i, 15 + i);
    e.emplace_back(15 + i, 15 + j);
  }
  return from_straight_line(pts, e);
}

PlanarGraph subdivide(const PlanarGraph& g, int t) {
  if (t < 0) throw GraphError("subdivision count must be non-negative");
  EmbeddingBuilder b(g);
  const int nv0 = g.vertex_count();
  std::vector<int> original(nv0), edge_of(nv0, -1), position(nv0, 0);
  for (int v = 0; v < nv0; ++v) original[v] = v;
  std::vector<std::pair<VertexId, VertexId>> ends;
  int edge_index = 0;
  for (int d = 0; d < g.dart_count(); ++d) {
    if (d > g.twin(d)) continue;
    DartId cur = d;
    for (int i = 1; i <= t; ++i) {
      b.subdivide_edge(cur);
      original.push_back(-1);
      edge_of.push_back(edge_index);
      position.push_back(i);
      cur = b.next(b.twin(cur));
    }
    ends.emplace_back(g.origin(d), g.head(d));
    ++edge_index;
  }
  PlanarGraph out = b.finalize();
  if (g.has_coordinates()) {
    std::vector<Point> pts = out.coordinates();
    for (int v = nv0; v < out.vertex_count(); ++v) {
      auto [u, w] = ends[edge_of[v]];
      const double f = static_cast<double>(position[v]) / (t + 1);
      pts[v] = {g.coordinates()[u].x + f * (g.coordinates()[w].x - g.coordinates()[u].x),
                g.coordinates()[u].y + f * (g.coordinates()[w].y - g.coordinates()[u].y)};
    }
    out.set_coordinates(std::move(pts));
  }
  out.labels().vertex[label::kOriginal] = original;
  out.labels().vertex[label::kSubdividedEdge] = edge_of;
  out.labels().vertex[label::kEdgePosition] = position;
  return out;
}

PlanarGraph small_family(std::string_view name, int k) {
  if (name == "cycle") return cycle_graph(k);
  if (name == "path") return path_graph(k);
  if (name == "star") return star_graph(k);
  if (name == "k2n") return k2n_graph(k);
  if (name == "grid") return grid_graph(k);
  if (name == "k1") return path_graph(1);
  if (name == "k2") return path_graph(2);
  if (name == "k4") {
    auto pts = regular_polygon(3, 2.0);
    pts.push_back({0, 0});
    return from_straight_line(pts, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
  }
  if (name == "cube") return two_rings(4, false);
  if (name == "octahedron") return two_rings(3, true);
  if (name == "bowtie") {
    return from_straight_line({{0, 0}, {-1, 1}, {-1, -1}, {1, 1}, {1, -1}},
                              {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  }
  if (name == "dodecahedron") return dodecahedron();
  throw GraphError("unknown graph family '" + std::string(name) + "'");
}

PlanarGraph build_D5() {
  PlanarGraph g = subdivide(dodecahedron(), 5);
  std::vector<int> side(g.vertex_count());
  const auto& pos = g.labels().vertex.at(label::kEdgePosition);
  for (int v = 0; v < g.vertex_count(); ++v) side[v] = (pos[v] % 2 == 0) ? 0 : 1;
  g.labels().vertex[label::kBipartition] = side;
  return g;
}

namespace {

struct FaceRecord {
  DartId rep;
  int image;
  int layer;
  int d_face;
  bool hole;
};

PlanarGraph build_lower_bound_graph(int layers) {
  const PlanarGraph d5 = build_D5();
  EmbeddingBuilder b(d5);
  std::vector<int> image, layer, is_split;
  auto grow = [&] {
    const auto n = static_cast<std::size_t>(b.vertex_slots());
    image.resize(n, -1);
    layer.resize(n, 0);
    is_split.resize(n, 0);
  };
  grow();
  for (int v = 0; v < d5.vertex_count(); ++v) image[v] = v;
  const auto& side = d5.labels().vertex.at(label::kBipartition);
  for (int a = 0; a < d5.vertex_count(); ++a) {
    if (side[a] != 0) continue;
    auto fresh = b.split_vertex(a);
    grow();
    for (VertexId u : fresh) {
      image[u] = a;
      is_split[u] = 1;
    }
  }

  // Classify the faces of G0: twelve 30-faces and the split faces.
  std::vector<FaceRecord> records;
  std::vector<std::pair<DartId, int>> holes;  // rep dart, D face
  std::vector<bool> seen(b.dart_slots(), false);
  for (DartId d = 0; d < b.dart_slots(); ++d) {
    if (!b.dart_alive(d) || seen[d]) continue;
    auto cyc = b.trace_face(d);
    for (DartId x : cyc) seen[x] = true;
    if (cyc.size() == 30) {
      std::vector<FaceId> common;
      bool first = true;
      for (DartId x : cyc) {
        VertexId v = b.origin(x);
        if (is_split[v]) continue;
        const auto& inc = d5.incident_faces(image[v]);
        if (first) {
          common = inc;
          first = false;
        } else {
          std::vector<FaceId> keep;
          std::set_intersection(common.begin(), common.end(), inc.begin(), inc.end(), std::back_inserter(keep));
          common = keep;
        }
      }
      if (common.size() != 1) throw GraphError("could not match a 30-cycle to a dodecahedron face");
      holes.emplace_back(d, common.front());
    } else {
      int img = -1;
      for (DartId x : cyc)
        if (is_split[b.origin(x)]) img = image[b.origin(x)];
      records.push_back({d, img, 0, -1, false});
    }
  }
  if (holes.size() != 12) throw GraphError("expected twelve 30-faces in G0");

  for (auto& [h, dface] : holes) {
    for (int l = 1; l <= layers; ++l) {
      const auto bd = b.trace_face(h);
      if (bd.size() != 30) throw GraphError("hole boundary lost its length");
      int o = 0;
      while (b.degree(b.origin(bd[o])) != 2) ++o;
      std::vector<DartId> chords(15);
      std::vector<VertexId> middle(15);
      for (int j = 0; j < 15; ++j) {
        const DartId at_u = bd[(o + 2 * j) % 30];
        const DartId mid = bd[(o + 2 * j + 1) % 30];
        const DartId at_v = j < 14 ? bd[(o + 2 * j + 2) % 30] : chords[0];
        chords[j] = b.insert_chord(at_u, at_v);
        middle[j] = b.origin(mid);
        records.push_back({mid, image[middle[j]], l, dface, false});
      }
      for (int j = 0; j < 15; ++j) {
        VertexId m = b.subdivide_edge(chords[j]);
        grow();
        image[m] = image[middle[j]];
        layer[m] = l;
      }
      h = chords[0];
    }
    records.push_back({h, -1, -1, dface, true});
  }

  std::vector<VertexId> vmap;
  std::vector<DartId> dmap;
  PlanarGraph g = b.finalize(&vmap, &dmap);
  g.set_coordinates({});

  const int nf = g.face_count();
  std::vector<int> f_class(nf, -1), f_image(nf, -1), f_layer(nf, -1), f_dface(nf, -1);
  for (const auto& r : records) {
    const FaceId f = g.face_of(dmap.at(r.rep));
    f_class[f] = static_cast<int>(r.hole ? FaceClass::hole : FaceClass::ordinary);
    f_image[f] = r.image;
    f_layer[f] = r.layer;
    f_dface[f] = r.d_face;
  }
  for (int f = 0; f < nf; ++f)
    if (f_class[f] == -1 || (f_class[f] != static_cast<int>(FaceClass::hole) && f_image[f] < 0))
      throw GraphError("unlabelled face in lower-bound graph");
  const int nv = g.vertex_count();
  std::vector<int> v_image(nv), v_layer(nv), v_g0(nv), v_class(nv);
  for (std::size_t old = 0; old < vmap.size(); ++old) {
    const VertexId v = vmap[old];
    if (v < 0) continue;
    v_image[v] = image[old];
    v_layer[v] = layer[old];
    v_g0[v] = layer[old] == 0 ? 1 : 0;
    v_class[v] = static_cast<int>(is_split[old] ? VertexClass::split : VertexClass::plain);
  }
  auto& L = g.labels();
  L.vertex[label::kD5Vertex] = v_image;
  L.vertex[label::kLayer] = v_layer;
  L.vertex[label::kInG0] = v_g0;
  L.vertex[label::kVertexClass] = v_class;
  L.face[label::kFaceClass] = f_class;
  L.face[label::kD5Vertex] = f_image;
  L.face[label::kLayer] = f_layer;
  L.face[label::kDFace] = f_dface;
  return g;
}

}  // namespace

PlanarGraph build_G0() { return build_lower_bound_graph(0); }

PlanarGraph build_G_delta4(int layers) {
  if (layers < 1) throw GraphError("G(L) needs L >= 1");
  return build_lower_bound_graph(layers);
}

std::vector<int> face_to_D5_vertex(const PlanarGraph& g) {
  auto it = g.labels().face.find(label::kD5Vertex);
  if (it == g.labels().face.end()) throw GraphError("graph carries no D5 face correspondence");
  return it->second;
}

ExpectedCounts g_delta4_counts(int layers) { return {270L + 180L * layers, 360L + 360L * layers}; }

ExpectedCounts gnsr_counts(int n, int s, int r) {
  const long nn = n, ss = s, rr = r;
  const long ring_vertices = 12 * ss * rr * nn * (nn - 1);
  const long per_ring = ring_vertices / rr;
  ExpectedCounts c;
  c.vertices = nn * nn + 4 * ss * nn * (nn - 1) + ring_vertices;
  c.edges = 2 * nn * (nn - 1) * (2 * ss + 1) + ring_vertices + (rr - 1) * per_ring + 12 * ss * nn * (nn - 1);
  return c;
}

PlanarGraph build_gnsr(int n, int s, int r) {
  if (n < 3 || s < 1 || r < 1) throw GraphError("G_{n,s,r} needs n >= 3, s >= 1, r >= 1");
  std::vector<Point> pts;
  EdgeList edges;
  std::vector<int> vclass, gx, gy, region, ring;
  auto add = [&](Point p, VertexClass c, int x = -1, int y = -1, int reg = -1, int t = -1) {
    pts.push_back(p);
    vclass.push_back(static_cast<int>(c));
    gx.push_back(x);
    gy.push_back(y);
    region.push_back(reg);
    ring.push_back(t);
    return static_cast<VertexId>(pts.size()) - 1;
  };
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) add({double(x), double(y)}, VertexClass::grid, x, y);
  const int len = 2 * s;
  // hpath[y][x]: from (x,y) to (x+1,y); vpath[x][y]: from (x,y) to (x,y+1).
  std::vector<std::vector<std::vector<VertexId>>> hpath(n, std::vector<std::vector<VertexId>>(n)),
      vpath(n, std::vector<std::vector<VertexId>>(n));
  auto make_path = [&](VertexId from, VertexId to, Point a, Point bpt) {
    std::vector<VertexId> path;
    VertexId prev = from;
    for (int k = 1; k <= len; ++k) {
      const double f = double(k) / (len + 1);
      VertexId v = add({a.x + f * (bpt.x - a.x), a.y + f * (bpt.y - a.y)}, VertexClass::subdivision);
      edges.emplace_back(prev, v);
      prev = v;
      path.push_back(v);
    }
    edges.emplace_back(prev, to);
    return path;
  };
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      if (x + 1 < n) hpath[y][x] = make_path(y * n + x, y * n + x + 1, {double(x), double(y)}, {double(x + 1), double(y)});
      if (y + 1 < n) vpath[x][y] = make_path(y * n + x, (y + 1) * n + x, {double(x), double(y)}, {double(x), double(y + 1)});
    }

  const int inner = (n - 1) * (n - 1);
  const int outer = inner;
  auto face_id = [&](int i, int j) { return (i < 0 || j < 0 || i >= n - 1 || j >= n - 1) ? outer : j * (n - 1) + i; };

  struct WalkPoint {
    VertexId v;
    int mult;  // ring edges into this face (0 for grid vertices)
  };
  // Multiplicity: the k-th vertex from the lexicographically smaller end sends
  // two edges into the smaller-id face when k is even, one otherwise.
  auto mult = [&](int face, int fa, int fb, int k) {
    const bool to_small = face == std::min(fa, fb);
    return ((k % 2 == 0) == to_small) ? 2 : 1;
  };
  auto h_run = [&](std::vector<WalkPoint>& w, int x, int y, bool forward, int face) {
    const int below = face_id(x, y - 1), above = face_id(x, y);
    for (int i = 0; i < len; ++i) {
      const int k = forward ? i : len - 1 - i;
      w.push_back({hpath[y][x][k], mult(face, below, above, k)});
    }
  };
  auto v_run = [&](std::vector<WalkPoint>& w, int x, int y, bool forward, int face) {
    const int left = face_id(x - 1, y), right = face_id(x, y);
    for (int i = 0; i < len; ++i) {
      const int k = forward ? i : len - 1 - i;
      w.push_back({vpath[x][y][k], mult(face, left, right, k)});
    }
  };

  auto build_region = [&](int face, const std::vector<WalkPoint>& walk, Point center, bool outward) {
    std::vector<double> ang;
    for (const auto& wp : walk) {
      double a = std::atan2(pts[wp.v].y - center.y, pts[wp.v].x - center.x);
      if (!ang.empty())
        while (a <= ang.back()) a += 2 * kPi;
      ang.push_back(a);
    }
    double gap = ang.front() + 2 * kPi - ang.back();
    for (std::size_t i = 1; i < ang.size(); ++i) gap = std::min(gap, ang[i] - ang[i - 1]);
    const double delta = gap / 4;
    std::vector<double> ring_angle;
    std::vector<VertexId> owner;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (walk[i].mult == 1) {
        ring_angle.push_back(ang[i]);
        owner.push_back(walk[i].v);
      } else if (walk[i].mult == 2) {
        ring_angle.push_back(ang[i] - delta);
        ring_angle.push_back(ang[i] + delta);
        owner.push_back(walk[i].v);
        owner.push_back(walk[i].v);
      }
    }
    const int m = static_cast<int>(ring_angle.size());
    const double half = outward ? (n - 1) * std::numbers::sqrt2 / 2 : 0.5;
    std::vector<std::vector<VertexId>> rings(r);
    for (int t = 0; t < r; ++t) {
      const double f = r == 1 ? 0.0 : double(t) / (r - 1);
      const double radius = outward ? half * (1.15 + 0.85 * f) : 0.4 - 0.33 * f;
      for (int i = 0; i < m; ++i)
        rings[t].push_back(add({center.x + radius * std::cos(ring_angle[i]), center.y + radius * std::sin(ring_angle[i])},
                               VertexClass::ring, -1, -1, face, t + 1));
      for (int i = 0; i < m; ++i) edges.emplace_back(rings[t][i], rings[t][(i + 1) % m]);
      if (t > 0)
        for (int i = 0; i < m; ++i) edges.emplace_back(rings[t - 1][i], rings[t][i]);
    }
    for (int i = 0; i < m; ++i) edges.emplace_back(owner[i], rings[0][i]);
    return m;
  };

  for (int j = 0; j < n - 1; ++j)
    for (int i = 0; i < n - 1; ++i) {
      const int face = face_id(i, j);
      std::vector<WalkPoint> w;
      w.push_back({j * n + i, 0});
      h_run(w, i, j, true, face);
      w.push_back({j * n + i + 1, 0});
      v_run(w, i + 1, j, true, face);
      w.push_back({(j + 1) * n + i + 1, 0});
      h_run(w, i, j + 1, false, face);
      w.push_back({(j + 1) * n + i, 0});
      v_run(w, i, j, false, face);
      if (build_region(face, w, {i + 0.5, j + 0.5}, false) != 12 * s)
        throw GraphError("inner ring length mismatch");
    }
  {
    std::vector<WalkPoint> w;
    for (int x = 0; x < n - 1; ++x) {
      w.push_back({x, 0});
      h_run(w, x, 0, true, outer);
    }
    for (int y = 0; y < n - 1; ++y) {
      w.push_back({y * n + n - 1, 0});
      v_run(w, n - 1, y, true, outer);
    }
    for (int x = n - 1; x > 0; --x) {
      w.push_back({(n - 1) * n + x, 0});
      h_run(w, x - 1, n - 1, false, outer);
    }
    for (int y = n - 1; y > 0; --y) {
      w.push_back({y * n, 0});
      v_run(w, 0, y - 1, false, outer);
    }
    const double c = (n - 1) / 2.0;
    if (build_region(outer, w, {c, c}, true) != 12 * s * (n - 1)) throw GraphError("outer ring length mismatch");
  }

  PlanarGraph g = from_straight_line(pts, edges);
  const int nv = g.vertex_count();

  // Closest grid vertex: BFS distance, ties to the smallest (x, y).
  std::vector<int> dist(nv, kInfinity), key(nv, kInfinity);
  std::vector<VertexId> frontier;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const VertexId v = y * n + x;
      dist[v] = 0;
      key[v] = x * n + y;
      frontier.push_back(v);
    }
  for (int d = 0; !frontier.empty(); ++d) {
    std::vector<VertexId> next;
    for (VertexId u : frontier)
      for (VertexId w : g.adjacency()[u]) {
        if (dist[w] == kInfinity) {
          dist[w] = d + 1;
          key[w] = key[u];
          next.push_back(w);
        } else if (dist[w] == d + 1) {
          key[w] = std::min(key[w], key[u]);
        }
      }
    frontier = std::move(next);
  }

  const int nf = g.face_count();
  std::vector<int> f_class(nf), f_region(nf, -1), f_closest(nf);
  for (int f = 0; f < nf; ++f) {
    bool shallow = false;
    std::pair<int, int> best{kInfinity, kInfinity};
    for (DartId d : g.face(f).boundary) {
      const VertexId v = g.origin(d);
      if (vclass[v] == static_cast<int>(VertexClass::subdivision)) shallow = true;
      if (vclass[v] == static_cast<int>(VertexClass::ring)) f_region[f] = region[v];
      best = std::min(best, {dist[v], key[v]});
    }
    if (f_region[f] < 0) throw GraphError("face without ring vertex in G_{n,s,r}");
    f_class[f] = static_cast<int>(shallow ? FaceClass::shallow : FaceClass::deep);
    const int x = best.second / n, y = best.second % n;
    f_closest[f] = y * n + x;
  }
  auto& L = g.labels();
  L.vertex[label::kVertexClass] = vclass;
  L.vertex[label::kGridX] = gx;
  L.vertex[label::kGridY] = gy;
  L.vertex[label::kRegion] = region;
  L.vertex[label::kRing] = ring;
  L.face[label::kFaceClass] = f_class;
  L.face[label::kRegion] = f_region;
  L.face[label::kClosestGridVertex] = f_closest;
  return g;
}

GridLabels grid_labels(const PlanarGraph& g) {
  GridLabels out;
  const auto& V = g.labels().vertex;
  const auto& F = g.labels().face;
  if (!V.count(label::kVertexClass) || !F.count(label::kClosestGridVertex))
    throw GraphError("graph carries no G_{n,s,r} labels");
  for (int c : V.at(label::kVertexClass)) out.vertex_class.push_back(static_cast<VertexClass>(c));
  for (int c : F.at(label::kFaceClass)) out.face_class.push_back(static_cast<FaceClass>(c));
  out.region = F.at(label::kRegion);
  out.closest_grid = F.at(label::kClosestGridVertex);
  out.grid_x = V.at(label::kGridX);
  out.grid_y = V.at(label::kGridY);
  for (int x : out.grid_x) out.n = std::max(out.n, x + 1);
  return out;
}

PlanarGraph normalize_degrees(const PlanarGraph& g, int target) {
  if (target != 3 && target != 4) throw GraphError("normalization target must be 3 or 4");
  if (g.max_degree() > target) throw GraphError("maximum degree exceeds the normalization target");
  EmbeddingBuilder b(g);
  const bool coords = g.has_coordinates();
  std::vector<Point> pts = g.coordinates();
  const int nv0 = g.vertex_count();
  for (int v = 0; v < nv0; ++v) {
    const int k = g.degree(v);
    if (k == target || k == 1) continue;
    if (k == 0) {
      if (nv0 != 1) throw GraphError("cannot normalize an isolated vertex");
      for (int i = 0; i < target; ++i) {
        const Point p = coords ? Point{pts[v].x + std::cos(2 * kPi * i / target), pts[v].y + std::sin(2 * kPi * i / target)} : Point{};
        const VertexId leaf = coords ? b.add_vertex(p) : b.add_vertex();
        const auto at = b.darts_at(v);
        b.add_edge(v, at.empty() ? -1 : at.front(), leaf, -1);
      }
      continue;
    }
    const auto& around = g.darts_at(v);
    const int missing = target - k;
    std::vector<int> per_angle(k, 0);
    for (int i = 0; i < missing; ++i) ++per_angle[i % k];
    for (int i = 0; i < k; ++i) {
      const DartId d = around[i];
      double a_from = 0, sweep = 2 * kPi, reach = 1.0;
      if (coords) {
        auto dir = [&](DartId x) {
          const Point& q = pts[g.head(x)];
          return std::atan2(q.y - pts[v].y, q.x - pts[v].x);
        };
        a_from = dir(g.prev(d));
        sweep = dir(d) - a_from;
        while (sweep <= 0) sweep += 2 * kPi;
        for (DartId x : around) {
          const Point& q = pts[g.head(x)];
          reach = std::min(reach, 0.3 * std::hypot(q.x - pts[v].x, q.y - pts[v].y));
        }
      }
      for (int j = 0; j < per_angle[i]; ++j) {
        VertexId leaf;
        if (coords) {
          const double a = a_from + sweep * (j + 1) / (per_angle[i] + 1);
          leaf = b.add_vertex({pts[v].x + reach * std::cos(a), pts[v].y + reach * std::sin(a)});
        } else {
          leaf = b.add_vertex();
        }
        b.add_edge(v, d, leaf, -1);
      }
    }
  }
  PlanarGraph out = b.finalize();
  Labels l = g.labels();
  for (auto& [k, vec] : l.vertex) vec.resize(out.vertex_count(), -1);
  l.face.clear();
  out.labels() = l;
  return out;
}

}  // namespace pdcr
