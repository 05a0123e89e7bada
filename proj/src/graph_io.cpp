#include "pdcr/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pdcr {

using nlohmann::json;

json graph_to_json(const PlanarGraph& g, bool include_labels) {
  json j;
  j["format"] = "pdcr-graph";
  j["version"] = kGraphFormatVersion;
  j["vertex_count"] = g.vertex_count();
  json darts = json::array();
  for (const Dart& d : g.darts())
    darts.push_back({{"id", d.id}, {"origin", d.origin}, {"twin", d.twin}, {"next_at_origin", d.next_at_origin}});
  j["darts"] = std::move(darts);
  if (include_labels && !g.labels().empty()) {
    j["labels"]["vertex"] = g.labels().vertex;
    j["labels"]["face"] = g.labels().face;
  }
  if (g.has_coordinates()) {
    json pts = json::array();
    for (const Point& p : g.coordinates()) pts.push_back({p.x, p.y});
    j["coordinates"] = std::move(pts);
  }
  if (!g.nesting().empty()) {
    json nest = json::array();
    for (const Nesting& e : g.nesting())
      nest.push_back({{"component_vertex", e.component_vertex},
                      {"outer_dart", e.outer_dart},
                      {"container_dart", e.container_dart}});
    j["nesting"] = std::move(nest);
  }
  return j;
}

PlanarGraph graph_from_json(const json& j) {
  if (j.value("format", std::string{}) != "pdcr-graph") throw GraphError("not a pdcr-graph document");
  if (j.value("version", 0) != kGraphFormatVersion)
    throw GraphError("unsupported graph format version " + std::to_string(j.value("version", 0)));
  const int n = j.at("vertex_count").get<int>();
  std::vector<Dart> darts;
  for (const auto& d : j.at("darts"))
    darts.push_back({d.at("id").get<int>(), d.at("origin").get<int>(), d.at("twin").get<int>(),
                     d.at("next_at_origin").get<int>()});
  std::sort(darts.begin(), darts.end(), [](const Dart& a, const Dart& b) { return a.id < b.id; });
  BuildOptions opts;
  if (j.contains("nesting")) {
    for (const auto& e : j["nesting"])
      opts.nesting.push_back({e.at("component_vertex").get<int>(), e.value("outer_dart", -1),
                              e.at("container_dart").get<int>()});
  }
  PlanarGraph g = PlanarGraph::from_darts(n, std::move(darts), opts);
  if (j.contains("labels")) {
    const auto& l = j["labels"];
    if (l.contains("vertex")) g.labels().vertex = l["vertex"].get<std::map<std::string, std::vector<int>>>();
    if (l.contains("face")) g.labels().face = l["face"].get<std::map<std::string, std::vector<int>>>();
  }
  if (j.contains("coordinates")) {
    std::vector<Point> pts;
    for (const auto& p : j["coordinates"]) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    g.set_coordinates(std::move(pts));
  }
  return g;
}

PlanarGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return graph_from_json(json::parse(in));
}

void save_graph(const PlanarGraph& g, const std::string& path, bool include_labels) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << graph_to_json(g, include_labels).dump() << '\n';
}

std::string edge_list(const PlanarGraph& g) {
  std::ostringstream os;
  for (const Dart& d : g.darts())
    if (d.id < d.twin) os << d.origin << ' ' << g.head(d.id) << '\n';
  return os.str();
}

}  // namespace pdcr
