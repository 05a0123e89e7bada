#include "pdcr/presets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "pdcr/generators.hpp"

namespace pdcr {

namespace {

std::vector<int> parse_ints(std::string_view text, std::string_view spec) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto part = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw GraphError("bad parameter in graph preset '" + std::string(spec) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double signed_area(const PlanarGraph& g, const Face& f) {
  const auto& pts = g.coordinates();
  double a = 0.0;
  for (DartId d : f.boundary) {
    const Point& p = pts[g.origin(d)];
    const Point& q = pts[g.head(d)];
    a += p.x * q.y - q.x * p.y;
  }
  return a / 2.0;
}

}  // namespace

PlanarGraph graph_preset(std::string_view spec) {
  std::string_view name = spec;
  int normalize = 0;
  if (auto slash = name.find('/'); slash != std::string_view::npos) {
    const auto suffix = name.substr(slash + 1);
    if (suffix == "norm3") normalize = 3;
    else if (suffix == "norm4") normalize = 4;
    else throw GraphError("unknown graph preset suffix '" + std::string(suffix) + "'");
    name = name.substr(0, slash);
  }
  std::string_view params;
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    params = name.substr(colon + 1);
    name = name.substr(0, colon);
  }
  const auto args = parse_ints(params, spec);
  auto want = [&](std::size_t count) {
    if (args.size() != count)
      throw GraphError("graph preset '" + std::string(spec) + "' expects " + std::to_string(count) + " parameter(s)");
  };
  PlanarGraph g;
  if (name == "d5") {
    want(0);
    g = build_D5();
  } else if (name == "g0") {
    want(0);
    g = build_G0();
  } else if (name == "glayers") {
    want(1);
    g = build_G_delta4(args[0]);
  } else if (name == "gnsr") {
    want(3);
    g = build_gnsr(args[0], args[1], args[2]);
  } else {
    if (args.size() > 1) throw GraphError("graph preset '" + std::string(spec) + "' takes at most one parameter");
    g = small_family(name, args.empty() ? 0 : args[0]);
  }
  return normalize ? normalize_degrees(g, normalize) : g;
}

BoardLayout board_layout(const PlanarGraph& g) {
  BoardLayout out;
  if (g.face_count() == 0) return out;
  if (g.has_coordinates()) {
    out.positions = g.coordinates();
    double best = -1.0;
    for (const Face& f : g.faces()) {
      const double a = std::abs(signed_area(g, f));
      if (a > best) {
        best = a;
        out.outer = f.id;
      }
    }
    return out;
  }
  for (const Face& f : g.faces())
    if (out.outer < 0 || f.length() > g.face(out.outer).length()) out.outer = f.id;
  try {
    out.positions = planar_layout(g, out.outer).positions;
  } catch (const GraphError&) {
    const int n = g.vertex_count();
    out.positions.clear();
    for (int v = 0; v < n; ++v) {
      const double t = 2.0 * std::numbers::pi * v / std::max(n, 1);
      out.positions.push_back({std::cos(t), std::sin(t)});
    }
  }
  return out;
}

nlohmann::json layout_to_json(const PlanarGraph& g, const BoardLayout& layout) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Point& p : layout.positions) vertices.push_back({p.x, p.y});
  nlohmann::json faces = nlohmann::json::array();
  for (const Face& f : g.faces()) {
    std::vector<int> ring;
    for (DartId d : f.boundary) ring.push_back(g.origin(d));
    for (VertexId v : f.isolated_vertices) ring.push_back(v);
    faces.push_back(ring);
  }
  return {{"outer", layout.outer}, {"vertices", vertices}, {"faces", faces}};
}

}  // namespace pdcr
