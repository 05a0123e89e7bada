#include "pdcr/plane_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "pdcr/embedding_builder.hpp"

namespace pdcr {

namespace {

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

}  // namespace

int PlanarGraph::check_vertex(VertexId v) const {
  if (v < 0 || v >= vertex_count_) throw GraphError("unknown vertex " + std::to_string(v));
  return v;
}

int PlanarGraph::max_degree() const {
  int best = 0;
  for (const auto& r : rotation_) best = std::max(best, static_cast<int>(r.size()));
  return best;
}

std::vector<VertexId> PlanarGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (DartId d : rotation_.at(check_vertex(v))) out.push_back(head(d));
  return out;
}

void PlanarGraph::set_coordinates(std::vector<Point> coords) {
  if (!coords.empty() && static_cast<int>(coords.size()) != vertex_count_)
    throw GraphError("coordinate count does not match vertex count");
  coordinates_ = std::move(coords);
}

int PlanarGraph::vertex_label(const std::string& key, VertexId v, int fallback) const {
  auto it = labels_.vertex.find(key);
  if (it == labels_.vertex.end() || v < 0 || v >= static_cast<int>(it->second.size())) return fallback;
  return it->second[v];
}

int PlanarGraph::face_label(const std::string& key, FaceId f, int fallback) const {
  auto it = labels_.face.find(key);
  if (it == labels_.face.end() || f < 0 || f >= static_cast<int>(it->second.size())) return fallback;
  return it->second[f];
}

PlanarGraph PlanarGraph::from_darts(int vertex_count, std::vector<Dart> darts,
                                    const BuildOptions& options) {
  PlanarGraph g;
  if (vertex_count < 0) throw GraphError("negative vertex count");
  g.vertex_count_ = vertex_count;
  g.darts_ = std::move(darts);
  g.validate_and_trace(options);
  return g;
}

void PlanarGraph::validate_and_trace(const BuildOptions& options) {
  const int n = dart_count();
  if (n % 2 != 0) throw GraphError("odd number of darts");
  for (int d = 0; d < n; ++d) {
    const Dart& x = darts_[d];
    if (x.id != d) throw GraphError("dart id mismatch at index " + std::to_string(d));
    if (x.origin < 0 || x.origin >= vertex_count_)
      throw GraphError("dart " + std::to_string(d) + " has invalid origin");
    if (x.twin < 0 || x.twin >= n || x.twin == d || darts_[x.twin].twin != d)
      throw GraphError("broken twin involution at dart " + std::to_string(d));
    if (x.next_at_origin < 0 || x.next_at_origin >= n)
      throw GraphError("dart " + std::to_string(d) + " has invalid rotation successor");
    if (darts_[x.next_at_origin].origin != x.origin)
      throw GraphError("dart " + std::to_string(x.next_at_origin) + " listed under wrong origin");
  }
  prev_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    DartId s = darts_[d].next_at_origin;
    if (prev_[s] != -1) throw GraphError("rotation is not a permutation");
    prev_[s] = d;
  }

  rotation_.assign(vertex_count_, {});
  std::vector<int> out_degree(vertex_count_, 0);
  for (int d = 0; d < n; ++d) ++out_degree[darts_[d].origin];
  std::vector<bool> seen(n, false);
  for (int d = 0; d < n; ++d) {
    const VertexId v = darts_[d].origin;
    if (!rotation_[v].empty()) continue;
    // d is the smallest dart at v because we scan in increasing order.
    DartId cur = d;
    do {
      seen[cur] = true;
      rotation_[v].push_back(cur);
      cur = darts_[cur].next_at_origin;
    } while (cur != d);
    if (static_cast<int>(rotation_[v].size()) != out_degree[v])
      throw GraphError("rotation at vertex " + std::to_string(v) + " is not a single cycle");
  }

  adjacency_.assign(vertex_count_, {});
  for (int v = 0; v < vertex_count_; ++v) {
    for (DartId d : rotation_[v]) {
      VertexId w = head(d);
      if (w != v) adjacency_[v].push_back(w);
    }
    std::sort(adjacency_[v].begin(), adjacency_[v].end());
    adjacency_[v].erase(std::unique(adjacency_[v].begin(), adjacency_[v].end()), adjacency_[v].end());
  }

  // Components (isolated vertices count as components).
  DisjointSets comps(vertex_count_);
  for (int d = 0; d < n; ++d) comps.unite(darts_[d].origin, head(d));
  std::vector<int> comp_of(vertex_count_);
  std::vector<int> comp_index(vertex_count_, -1);
  component_count_ = 0;
  for (int v = 0; v < vertex_count_; ++v) {
    int r = comps.find(v);
    if (comp_index[r] == -1) comp_index[r] = component_count_++;
    comp_of[v] = comp_index[r];
  }

  // Face cycles; isolated vertices get one virtual cycle each.
  std::vector<int> cycle_of(n, -1);
  std::vector<std::vector<DartId>> cycles;
  for (int d = 0; d < n; ++d) {
    if (cycle_of[d] != -1) continue;
    std::vector<DartId> cyc;
    DartId cur = d;
    do {
      cycle_of[cur] = static_cast<int>(cycles.size());
      cyc.push_back(cur);
      cur = face_successor(cur);
    } while (cur != d);
    cycles.push_back(std::move(cyc));
  }
  const int real_cycles = static_cast<int>(cycles.size());
  std::vector<int> virtual_cycle(vertex_count_, -1);
  std::vector<VertexId> virtual_owner;
  for (int v = 0; v < vertex_count_; ++v) {
    if (rotation_[v].empty()) {
      virtual_cycle[v] = static_cast<int>(cycles.size());
      cycles.emplace_back();
      virtual_owner.push_back(v);
    }
  }

  // Euler per component: V - E + F = 2 certifies a genus-0 rotation system.
  std::vector<long> euler(component_count_, 0);
  for (int v = 0; v < vertex_count_; ++v) euler[comp_of[v]] += 1;
  for (int d = 0; d < n; d += 1)
    if (d < darts_[d].twin) euler[comp_of[darts_[d].origin]] -= 1;
  for (int c = 0; c < real_cycles; ++c) euler[comp_of[darts_[cycles[c][0]].origin]] += 1;
  for (int v = 0; v < vertex_count_; ++v)
    if (virtual_cycle[v] != -1) euler[comp_of[v]] += 1;
  for (int c = 0; c < component_count_; ++c)
    if (euler[c] != 2) throw GraphError("Euler formula violated: rotation system is not planar");

  if (component_count_ > 1 && options.require_connected)
    throw GraphError("graph declared connected but has " + std::to_string(component_count_) + " components");

  auto cycle_for_dart = [&](DartId d) {
    if (d < 0 || d >= n) throw GraphError("nesting refers to invalid dart");
    return cycle_of[d];
  };
  DisjointSets face_sets(static_cast<int>(cycles.size()));
  if (component_count_ > 1) {
    if (static_cast<int>(options.nesting.size()) != component_count_ - 1)
      throw GraphError("disconnected graph requires a nesting entry for every non-root component");
    std::vector<int> parent(component_count_, -1);
    for (const Nesting& e : options.nesting) {
      int c = comp_of.at(check_vertex(e.component_vertex));
      int outer = -1;
      if (rotation_[e.component_vertex].empty()) {
        outer = virtual_cycle[e.component_vertex];
      } else {
        outer = cycle_for_dart(e.outer_dart);
        if (comp_of[darts_[e.outer_dart].origin] != c) throw GraphError("outer dart outside nested component");
      }
      int container = cycle_for_dart(e.container_dart);
      int pc = comp_of[darts_[e.container_dart].origin];
      if (pc == c) throw GraphError("component nested in itself");
      if (parent[c] != -1) throw GraphError("component nested twice");
      parent[c] = pc;
      face_sets.unite(outer, container);
    }
    for (int c = 0; c < component_count_; ++c) {
      int cur = c;
      for (int steps = 0; cur != -1; ++steps) {
        if (steps > component_count_) throw GraphError("cyclic nesting map");
        cur = parent[cur];
      }
    }
    nesting_ = options.nesting;
  }

  // Canonical face ids: ordered by the smallest dart on the face boundary.
  std::map<int, std::vector<int>> groups;
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c) groups[face_sets.find(c)].push_back(c);
  std::vector<std::pair<long, std::vector<int>>> keyed;
  for (auto& [root, members] : groups) {
    long key = std::numeric_limits<long>::max();
    for (int c : members) {
      if (c < real_cycles) {
        key = std::min<long>(key, *std::min_element(cycles[c].begin(), cycles[c].end()));
      } else {
        key = std::min<long>(key, static_cast<long>(n) + virtual_owner[c - real_cycles]);
      }
    }
    keyed.emplace_back(key, members);
  }
  std::sort(keyed.begin(), keyed.end());
  faces_.clear();
  face_of_dart_.assign(n, -1);
  std::vector<int> face_of_cycle(cycles.size(), -1);
  for (const auto& [key, members] : keyed) {
    Face f;
    f.id = static_cast<FaceId>(faces_.size());
    std::vector<int> ordered = members;
    auto cycle_key = [&](int c) -> long {
      return c < real_cycles ? *std::min_element(cycles[c].begin(), cycles[c].end())
                             : static_cast<long>(n) + virtual_owner[c - real_cycles];
    };
    std::sort(ordered.begin(), ordered.end(), [&](int a, int b) { return cycle_key(a) < cycle_key(b); });
    for (int c : ordered) {
      face_of_cycle[c] = f.id;
      if (c >= real_cycles) {
        f.isolated_vertices.push_back(virtual_owner[c - real_cycles]);
        continue;
      }
      std::vector<DartId> cyc = cycles[c];
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      for (DartId d : cyc) {
        face_of_dart_[d] = f.id;
        f.boundary.push_back(d);
      }
      f.cycles.push_back(std::move(cyc));
    }
    faces_.push_back(std::move(f));
  }

  angle_faces_.assign(vertex_count_, {});
  incident_faces_.assign(vertex_count_, {});
  for (int v = 0; v < vertex_count_; ++v) {
    if (rotation_[v].empty()) {
      angle_faces_[v].push_back(face_of_cycle[virtual_cycle[v]]);
    } else {
      for (DartId d : rotation_[v]) angle_faces_[v].push_back(face_of_dart_[d]);
    }
    incident_faces_[v] = angle_faces_[v];
    auto& s = incident_faces_[v];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  dual_adjacency_.assign(faces_.size(), {});
  for (int d = 0; d < n; ++d) {
    FaceId a = face_of_dart_[d];
    FaceId b = face_of_dart_[darts_[d].twin];
    if (a != b) dual_adjacency_[a].push_back(b);
  }
  for (auto& row : dual_adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

PlanarGraph build_from_rotation(int vertex_count,
                                const std::vector<std::pair<DartId, DartId>>& twin_pairs,
                                const std::vector<std::vector<DartId>>& rotations,
                                const BuildOptions& options) {
  const int n = static_cast<int>(twin_pairs.size()) * 2;
  std::vector<Dart> darts(n);
  for (int d = 0; d < n; ++d) darts[d].id = d;
  for (auto [a, b] : twin_pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw GraphError("twin pair refers to unknown dart");
    if (darts[a].twin != -1 || darts[b].twin != -1 || a == b)
      throw GraphError("twin pairing is not a perfect matching");
    darts[a].twin = b;
    darts[b].twin = a;
  }
  if (static_cast<int>(rotations.size()) != vertex_count) throw GraphError("one rotation per vertex required");
  for (int v = 0; v < vertex_count; ++v) {
    const auto& rot = rotations[v];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      DartId d = rot[i];
      if (d < 0 || d >= n) throw GraphError("rotation refers to unknown dart");
      if (darts[d].origin != -1) throw GraphError("dart " + std::to_string(d) + " listed twice");
      darts[d].origin = v;
      darts[d].next_at_origin = rot[(i + 1) % rot.size()];
    }
  }
  for (const Dart& d : darts)
    if (d.origin == -1) throw GraphError("dart " + std::to_string(d.id) + " missing from rotations");
  return PlanarGraph::from_darts(vertex_count, std::move(darts), options);
}

PlanarGraph from_straight_line(const std::vector<Point>& points,
                               const std::vector<std::pair<VertexId, VertexId>>& edges) {
  const int nv = static_cast<int>(points.size());
  std::vector<std::pair<DartId, DartId>> twins;
  std::vector<std::vector<DartId>> rot(nv);
  std::vector<VertexId> head;
  for (auto [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= nv || v >= nv) throw GraphError("invalid straight-line edge");
    DartId a = static_cast<DartId>(head.size());
    head.push_back(v);
    head.push_back(u);
    twins.emplace_back(a, a + 1);
    rot[u].push_back(a);
    rot[v].push_back(a + 1);
  }
  for (int v = 0; v < nv; ++v) {
    auto angle = [&](DartId d) {
      const Point& p = points[v];
      const Point& q = points[head[d]];
      return std::atan2(q.y - p.y, q.x - p.x);
    };
    std::sort(rot[v].begin(), rot[v].end(), [&](DartId a, DartId b) { return angle(a) < angle(b); });
  }
  PlanarGraph g = build_from_rotation(nv, twins, rot);
  g.set_coordinates(points);
  return g;
}

std::vector<Face> trace_faces(const PlanarGraph& g) { return g.faces(); }

std::vector<FaceId> incident_faces(const PlanarGraph& g, VertexId v) { return g.incident_faces(v); }

Adjacency dual_movement_graph(const PlanarGraph& g) { return g.dual_adjacency(); }

std::vector<int> bfs_distances(const Adjacency& graph, const std::vector<int>& sources) {
  std::vector<int> dist(graph.size(), kInfinity);
  std::queue<int> q;
  for (int s : sources) {
    if (dist.at(s) != 0) {
      dist[s] = 0;
      q.push(s);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : graph[u]) {
      if (dist[w] == kInfinity) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> all_pairs_distances(const Adjacency& graph) {
  std::vector<std::vector<int>> out;
  out.reserve(graph.size());
  for (int v = 0; v < static_cast<int>(graph.size()); ++v) out.push_back(bfs_distances(graph, {v}));
  return out;
}

int girth(const Adjacency& graph) {
  const int n = static_cast<int>(graph.size());
  int best = kInfinity;
  std::vector<int> dist(n), parent(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent[root] = -1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (2 * dist[u] + 1 >= best) break;
      for (int w : graph[u]) {
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kInfinity) throw GraphError("girth of an acyclic graph is undefined");
  return best;
}

bool is_connected(const Adjacency& graph) {
  if (graph.empty()) return true;
  auto d = bfs_distances(graph, {0});
  return std::none_of(d.begin(), d.end(), [](int x) { return x == kInfinity; });
}

PlanarGraph degree_based_split(const PlanarGraph& g, VertexId v) {
  EmbeddingBuilder b(g);
  b.split_vertex(v);
  return b.finalize();
}

LayoutResult planar_layout(const PlanarGraph& g, FaceId outer, std::vector<Point> polygon, double tolerance) {
  if (outer < 0 || outer >= g.face_count()) throw GraphError("unknown outer face");
  const int nv = g.vertex_count();
  std::vector<VertexId> ring;
  std::vector<bool> pinned(nv, false);
  for (DartId d : g.face(outer).boundary) {
    VertexId v = g.origin(d);
    if (!pinned[v]) {
      pinned[v] = true;
      ring.push_back(v);
    }
  }
  if (polygon.empty()) {
    const int m = static_cast<int>(ring.size());
    for (int i = 0; i < m; ++i) {
      double t = 2.0 * std::numbers::pi * i / m;
      polygon.push_back({std::cos(t), std::sin(t)});
    }
  }
  if (polygon.size() != ring.size()) throw GraphError("polygon size does not match outer boundary");

  LayoutResult out;
  out.positions.assign(nv, {});
  for (std::size_t i = 0; i < ring.size(); ++i) out.positions[ring[i]] = polygon[i];

  const Adjacency& adj = g.adjacency();
  auto reach = bfs_distances(adj, ring);
  std::vector<int> index(nv, -1);
  int m = 0;
  for (int v = 0; v < nv; ++v) {
    if (pinned[v]) continue;
    if (reach[v] == kInfinity) throw GraphError("singular layout system: vertex " + std::to_string(v) +
                                                " is not connected to the pinned boundary");
    index[v] = m++;
  }
  if (m > 0) {
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd bx = Eigen::VectorXd::Zero(m), by = Eigen::VectorXd::Zero(m);
    for (int v = 0; v < nv; ++v) {
      if (index[v] < 0) continue;
      const int i = index[v];
      trips.emplace_back(i, i, static_cast<double>(adj[v].size()));
      for (int w : adj[v]) {
        if (index[w] >= 0) {
          trips.emplace_back(i, index[w], -1.0);
        } else {
          bx[i] += out.positions[w].x;
          by[i] += out.positions[w].y;
        }
      }
    }
    Eigen::SparseMatrix<double> a(m, m);
    a.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw GraphError("singular layout system");
    Eigen::VectorXd x = lu.solve(bx), y = lu.solve(by);
    if (lu.info() != Eigen::Success) throw GraphError("layout solve failed");
    for (int v = 0; v < nv; ++v)
      if (index[v] >= 0) out.positions[v] = {x[index[v]], y[index[v]]};
  }
  for (int v = 0; v < nv; ++v) {
    if (pinned[v]) continue;
    double sx = 0, sy = 0;
    for (int w : adj[v]) {
      sx += out.positions[w].x;
      sy += out.positions[w].y;
    }
    const double k = static_cast<double>(adj[v].size());
    out.max_residual = std::max({out.max_residual, std::abs(out.positions[v].x - sx / k),
                                 std::abs(out.positions[v].y - sy / k)});
  }
  if (!(out.max_residual < tolerance)) throw GraphError("layout residual above tolerance");
  return out;
}

}  // namespace pdcr
