#include "pdcr/embedding_builder.hpp"

#include <algorithm>

namespace pdcr {

EmbeddingBuilder::EmbeddingBuilder(const PlanarGraph& g) {
  const int nv = g.vertex_count();
  has_points_ = g.has_coordinates();
  for (int v = 0; v < nv; ++v) {
    first_.push_back(g.degree(v) > 0 ? g.darts_at(v).front() : -1);
    vertex_alive_.push_back(true);
    points_.push_back(has_points_ ? g.coordinates()[v] : Point{});
  }
  for (const Dart& d : g.darts()) {
    origin_.push_back(d.origin);
    twin_.push_back(d.twin);
    next_.push_back(d.next_at_origin);
    prev_.push_back(g.prev(d.id));
    dart_alive_.push_back(true);
  }
}

VertexId EmbeddingBuilder::add_vertex() {
  has_points_ = false;
  return add_vertex(Point{});
}

VertexId EmbeddingBuilder::add_vertex(Point p) {
  first_.push_back(-1);
  vertex_alive_.push_back(true);
  points_.push_back(p);
  return static_cast<VertexId>(first_.size()) - 1;
}

DartId EmbeddingBuilder::new_dart(VertexId origin) {
  origin_.push_back(origin);
  twin_.push_back(-1);
  next_.push_back(-1);
  prev_.push_back(-1);
  dart_alive_.push_back(true);
  return static_cast<DartId>(origin_.size()) - 1;
}

void EmbeddingBuilder::link_before(DartId d, DartId before) {
  const VertexId v = origin_[d];
  if (before == -1) {
    if (first_[v] != -1) throw GraphError("insertion position required at a vertex with darts");
    next_[d] = prev_[d] = d;
    first_[v] = d;
    return;
  }
  if (origin_[before] != v || !dart_alive_[before]) throw GraphError("insertion dart does not leave the vertex");
  DartId p = prev_[before];
  next_[p] = d;
  prev_[d] = p;
  next_[d] = before;
  prev_[before] = d;
}

void EmbeddingBuilder::unlink(DartId d) {
  const VertexId v = origin_[d];
  if (next_[d] == d) {
    first_[v] = -1;
  } else {
    next_[prev_[d]] = next_[d];
    prev_[next_[d]] = prev_[d];
    if (first_[v] == d) first_[v] = next_[d];
  }
  dart_alive_[d] = false;
}

DartId EmbeddingBuilder::add_edge(VertexId u, DartId before_u, VertexId v, DartId before_v) {
  if (u == v) throw GraphError("loops are not supported");
  DartId a = new_dart(u);
  DartId b = new_dart(v);
  twin_[a] = b;
  twin_[b] = a;
  link_before(a, before_u);
  link_before(b, before_v);
  return a;
}

VertexId EmbeddingBuilder::subdivide_edge(DartId d) {
  const DartId t = twin_[d];
  const VertexId u = origin_[d], v = origin_[t];
  Point mid{};
  if (has_points_) mid = {(points_[u].x + points_[v].x) / 2, (points_[u].y + points_[v].y) / 2};
  const VertexId w = add_vertex(mid);
  DartId a = new_dart(w);  // w -> u
  DartId b = new_dart(w);  // w -> v
  twin_[d] = a;
  twin_[a] = d;
  twin_[t] = b;
  twin_[b] = t;
  link_before(a, -1);
  link_before(b, a);
  return w;
}

int EmbeddingBuilder::degree(VertexId v) const {
  if (first_[v] == -1) return 0;
  int k = 0;
  DartId d = first_[v];
  do {
    ++k;
    d = next_[d];
  } while (d != first_[v]);
  return k;
}

std::vector<DartId> EmbeddingBuilder::darts_at(VertexId v) const {
  std::vector<DartId> out;
  if (first_[v] == -1) return out;
  DartId d = first_[v];
  do {
    out.push_back(d);
    d = next_[d];
  } while (d != first_[v]);
  return out;
}

std::vector<DartId> EmbeddingBuilder::trace_face(DartId d) const {
  std::vector<DartId> out;
  DartId cur = d;
  do {
    out.push_back(cur);
    cur = next_[twin_[cur]];
  } while (cur != d);
  return out;
}

std::vector<VertexId> EmbeddingBuilder::split_vertex(VertexId v) {
  const std::vector<DartId> around = darts_at(v);
  const int k = static_cast<int>(around.size());
  if (k < 2) throw GraphError("degree-based split needs degree >= 2");
  std::vector<VertexId> nbr(k);
  std::vector<DartId> back(k);
  for (int i = 0; i < k; ++i) {
    nbr[i] = head(around[i]);
    back[i] = twin_[around[i]];
    if (nbr[i] == v) throw GraphError("cannot split a vertex with a loop");
  }
  std::vector<VertexId> fresh(k);
  for (int i = 0; i < k; ++i) {
    Point p{};
    if (has_points_) {
      const Point& a = points_[nbr[i]];
      const Point& b = points_[nbr[(i + 1) % k]];
      const Point& c = points_[v];
      p = {(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3};
    }
    fresh[i] = add_vertex(p);
  }
  // At neighbor i the dart back to v is replaced by darts to u_i then u_{i-1}
  // (counterclockwise), which keeps every old face intact.
  std::vector<DartId> to_next(k), to_prev(k);
  for (int i = 0; i < k; ++i) {
    const VertexId ui = fresh[i];
    const VertexId uprev = fresh[(i + k - 1) % k];
    DartId x = new_dart(nbr[i]);
    DartId xt = new_dart(ui);
    twin_[x] = xt;
    twin_[xt] = x;
    link_before(x, back[i]);
    DartId y = new_dart(nbr[i]);
    DartId yt = new_dart(uprev);
    twin_[y] = yt;
    twin_[yt] = y;
    link_before(y, back[i]);
    to_next[i] = xt;
    to_prev[i] = yt;
  }
  for (int i = 0; i < k; ++i) {
    // u_i is adjacent to v_i (via to_next[i]) and v_{i+1} (via to_prev[i+1]).
    link_before(to_next[i], -1);
    link_before(to_prev[(i + 1) % k], to_next[i]);
  }
  for (int i = 0; i < k; ++i) {
    unlink(back[i]);
    unlink(around[i]);
  }
  vertex_alive_[v] = false;
  return fresh;
}

void EmbeddingBuilder::remove_vertex(VertexId v) {
  for (DartId d : darts_at(v)) {
    unlink(twin_[d]);
    unlink(d);
  }
  vertex_alive_[v] = false;
}

PlanarGraph EmbeddingBuilder::finalize(std::vector<VertexId>* vertex_map, std::vector<DartId>* dart_map,
                                       const BuildOptions& options) const {
  std::vector<VertexId> vmap(first_.size(), -1);
  int nv = 0;
  for (std::size_t v = 0; v < first_.size(); ++v)
    if (vertex_alive_[v]) vmap[v] = nv++;
  std::vector<DartId> dmap(origin_.size(), -1);
  int nd = 0;
  for (std::size_t d = 0; d < origin_.size(); ++d)
    if (dart_alive_[d]) dmap[d] = nd++;
  std::vector<Dart> darts(nd);
  for (std::size_t d = 0; d < origin_.size(); ++d) {
    if (!dart_alive_[d]) continue;
    Dart& x = darts[dmap[d]];
    x.id = dmap[d];
    x.origin = vmap[origin_[d]];
    x.twin = dmap[twin_[d]];
    x.next_at_origin = dmap[next_[d]];
  }
  BuildOptions opts = options;
  for (Nesting& e : opts.nesting) {
    e.component_vertex = vmap.at(e.component_vertex);
    if (e.outer_dart >= 0) e.outer_dart = dmap.at(e.outer_dart);
    e.container_dart = dmap.at(e.container_dart);
  }
  PlanarGraph g = PlanarGraph::from_darts(nv, std::move(darts), opts);
  if (has_points_) {
    std::vector<Point> pts;
    for (std::size_t v = 0; v < first_.size(); ++v)
      if (vertex_alive_[v]) pts.push_back(points_[v]);
    g.set_coordinates(std::move(pts));
  }
  if (vertex_map) *vertex_map = std::move(vmap);
  if (dart_map) *dart_map = std::move(dmap);
  return g;
}

}  // namespace pdcr
