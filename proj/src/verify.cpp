#include "pdcr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <random>
#include <utility>

#include "pdcr/generators.hpp"
#include "pdcr/solver.hpp"
#include "pdcr/strategies.hpp"

namespace pdcr {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every unordered pair of [0, m), or `count` random ones.
std::vector<std::pair<int, int>> pick_pairs(int m, int count, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> out;
  if (count < 0) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) out.emplace_back(i, j);
    return out;
  }
  if (m < 2) return out;
  std::uniform_int_distribution<int> pick(0, m - 1);
  while (static_cast<int>(out.size()) < count) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    out.emplace_back(std::min(i, j), std::max(i, j));
  }
  return out;
}

// BFS inside the faces allowed by `keep`.
std::vector<int> restricted_bfs(const Adjacency& dual, FaceId source, const std::vector<bool>& keep) {
  std::vector<int> dist(dual.size(), kInfinity);
  std::vector<FaceId> frontier{source};
  dist[source] = 0;
  for (int d = 1; !frontier.empty(); ++d) {
    std::vector<FaceId> next;
    for (FaceId f : frontier)
      for (FaceId h : dual[f])
        if (keep[h] && dist[h] == kInfinity) {
          dist[h] = d;
          next.push_back(h);
        }
    frontier = std::move(next);
  }
  return dist;
}

void finish(json& report, std::chrono::steady_clock::time_point t0) {
  report["ok"] = report["violations"].empty();
  report["seconds"] = seconds_since(t0);
}

constexpr int kMaxListed = 50;

void add_violation(json& report, json v) {
  report["violation_count"] = report.value("violation_count", 0) + 1;
  if (report["violations"].size() < kMaxListed) report["violations"].push_back(std::move(v));
}

}  // namespace

json verify_lemma3(int n, int s, int r, int sample_count, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  json report = {{"check", "lemma3"}, {"n", n}, {"s", s}, {"r", r}, {"violations", json::array()}};
  report["precondition"] = "r > 3s(n-1)";
  report["precondition_met"] = r > 3 * s * (n - 1);
  const PlanarGraph g = build_gnsr(n, s, r);
  const GridLabels L = grid_labels(g);
  const Adjacency& dual = g.dual_adjacency();
  std::mt19937_64 rng(seed);

  std::map<int, std::vector<FaceId>> regions;
  for (int f = 0; f < g.face_count(); ++f) regions[L.region[f]].push_back(f);
  const int outer_region = (n - 1) * (n - 1);
  long pairs_checked = 0;
  int worst_shallow_route = 0;
  for (const auto& [region, faces] : regions) {
    const int x = region == outer_region ? 8 * s * (n - 1) : 8 * s;
    std::vector<bool> inside(g.face_count(), false), shallow_inside(g.face_count(), false);
    std::vector<FaceId> shallow;
    FaceId innermost = -1;
    for (FaceId f : faces) {
      inside[f] = true;
      if (L.face_class[f] == FaceClass::shallow) {
        shallow_inside[f] = true;
        shallow.push_back(f);
      } else if (innermost < 0 || g.face(f).length() > g.face(innermost).length()) {
        innermost = f;
      }
    }
    if (static_cast<int>(shallow.size()) * 2 != 3 * x)
      add_violation(report, {{"inequality", "shallow faces per face of G_{n,s} = (3/2)x"},
                             {"region", region}, {"found", shallow.size()}, {"x", x}});
    std::vector<std::vector<int>> from(shallow.size()), along(shallow.size());
    for (std::size_t i = 0; i < shallow.size(); ++i) {
      from[i] = restricted_bfs(dual, shallow[i], inside);
      along[i] = restricted_bfs(dual, shallow[i], shallow_inside);
      if (innermost >= 0 && from[i][innermost] < r)
        add_violation(report, {{"inequality", "dist(shallow face, innermost deep face) >= r"},
                               {"region", region}, {"face", shallow[i]}, {"distance", from[i][innermost]}});
    }
    for (auto [i, j] : pick_pairs(static_cast<int>(shallow.size()), sample_count, rng)) {
      ++pairs_checked;
      const int d = from[i][shallow[j]];
      worst_shallow_route = std::max(worst_shallow_route, along[i][shallow[j]]);
      if (4 * along[i][shallow[j]] > 3 * x)
        add_violation(report, {{"inequality", "shallow-only route length <= (3/4)x"}, {"region", region},
                               {"a1", shallow[i]}, {"a2", shallow[j]}, {"length", along[i][shallow[j]]}});
      for (FaceId f : faces) {
        if (L.face_class[f] == FaceClass::shallow) continue;
        if (from[i][f] != kInfinity && from[j][f] != kInfinity && from[i][f] + from[j][f] == d) {
          add_violation(report, {{"inequality", "shortest restricted routes use only shallow faces"},
                                 {"region", region}, {"a1", shallow[i]}, {"a2", shallow[j]},
                                 {"deep_face", f}, {"distance", d}});
          break;
        }
      }
    }
  }
  report["regions"] = regions.size();
  report["pairs_checked"] = pairs_checked;
  report["longest_shallow_route"] = worst_shallow_route;
  finish(report, t0);
  return report;
}

json verify_lemma4(int n, int s, int r, int pairs, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  json report = {{"check", "lemma4"}, {"n", n}, {"s", s}, {"r", r}, {"violations", json::array()}};
  report["precondition"] = "r > 3s(n-1)";
  report["precondition_met"] = r > 3 * s * (n - 1);
  const PlanarGraph g = build_gnsr(n, s, r);
  const GridLabels L = grid_labels(g);
  std::mt19937_64 rng(seed);
  auto grid_distance = [&](VertexId a, VertexId b) { return std::abs(a % n - b % n) + std::abs(a / n - b / n); };

  // Robber side: subdivision routes on G_{n,s}, and nothing shorter in G.
  Adjacency skeleton(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (L.vertex_class[v] == VertexClass::ring) continue;
    for (VertexId w : g.adjacency()[v])
      if (L.vertex_class[w] != VertexClass::ring) skeleton[v].push_back(w);
  }
  long robber_pairs = 0;
  for (VertexId a = 0; a < n * n; ++a) {
    const auto along = bfs_distances(skeleton, {a});
    const auto any = bfs_distances(g.adjacency(), {a});
    for (VertexId b = a + 1; b < n * n; ++b) {
      ++robber_pairs;
      const int d = grid_distance(a, b);
      if (along[b] != (2 * s + 1) * d)
        add_violation(report, {{"inequality", "subdivision route length = (2s+1)d"}, {"a", a}, {"b", b},
                               {"d", d}, {"length", along[b]}});
      if (any[b] > (2 * s + 1) * d)
        add_violation(report, {{"inequality", "primal distance <= (2s+1)d"}, {"a", a}, {"b", b}, {"d", d},
                               {"distance", any[b]}});
    }
  }

  // Cop side: every (sampled) pair of shallow faces.
  std::vector<FaceId> shallow;
  for (int f = 0; f < g.face_count(); ++f)
    if (L.face_class[f] == FaceClass::shallow) shallow.push_back(f);
  const auto chosen = pick_pairs(static_cast<int>(shallow.size()), pairs, rng);
  std::map<int, std::vector<int>> partners;
  for (auto [i, j] : chosen) partners[i].push_back(j);
  long cop_pairs = 0, nontrivial = 0;
  int min_slack = kInfinity;
  for (const auto& [i, js] : partners) {
    const auto dist = bfs_distances(g.dual_adjacency(), {shallow[i]});
    for (int j : js) {
      ++cop_pairs;
      const int d = grid_distance(L.closest_grid[shallow[i]], L.closest_grid[shallow[j]]);
      const int need = 3 * s * (d - 2);
      const int got = dist[shallow[j]];
      if (d >= 3) {
        ++nontrivial;
        min_slack = std::min(min_slack, got - need);
      }
      if (got < need)
        add_violation(report, {{"inequality", "dual distance >= 3s(d-2)"}, {"a", shallow[i]}, {"b", shallow[j]},
                               {"d", d}, {"distance", got}, {"bound", need}});
    }
  }
  report["grid_pairs_checked"] = robber_pairs;
  report["face_pairs_checked"] = cop_pairs;
  report["face_pairs_with_d_at_least_3"] = nontrivial;
  report["min_slack_d_at_least_3"] = nontrivial ? json(min_slack) : json(nullptr);
  finish(report, t0);
  return report;
}

json verify_lemma2(const Lemma2Options& options) {
  const auto t0 = std::chrono::steady_clock::now();
  json report = {{"check", "lemma2"}, {"violations", json::array()}};
  const PlanarGraph d5 = build_D5();
  const int gir = girth(d5.adjacency());
  report["girth"] = gir;
  if (gir != 30) add_violation(report, {{"inequality", "girth(D5) = 30"}, {"girth", gir}});

  Board board(d5, rules_preset("lemma2"));
  auto table = std::make_shared<SolveResult>(solve(board, 2));
  report["states"] = table->state_count();
  report["robber_wins"] = !table->cops_win();
  report["solve_seconds"] = seconds_since(t0);
  if (table->cops_win()) add_violation(report, {{"inequality", "robber wins against 2 cops"}});
  const long long bad = table->audit();
  if (bad != 0) add_violation(report, {{"inequality", "solver table consistent"}, {"bad_states", bad}});

  D5Evader probe(d5);
  long placements = 0, unsafe = 0;
  for (int a = 0; a < d5.vertex_count(); ++a)
    for (int b = a; b < d5.vertex_count(); ++b) {
      ++placements;
      if (!probe.has_safe_start({a, b})) {
        ++unsafe;
        add_violation(report, {{"inequality", "safe start exists"}, {"cops", {a, b}}});
      }
    }
  report["placements_checked"] = placements;

  // Asserts the robber's invariants over one transcript.
  auto audit_match = [&](const Transcript& t, const D5Robber& robber, const std::string& who) {
    const D5Evader& e = robber.evader();
    for (const auto& entry : t.entries) {
      const GameState& st = entry.state;
      if (st.robber < 0) continue;
      int m = kInfinity;
      for (int c : st.cops) m = std::min(m, e.dist()[c][st.robber]);
      if (m < 2) {
        add_violation(report, {{"inequality", "cop distance >= 2"}, {"opponent", who}, {"distance", m}});
        return;
      }
    }
    for (int len : e.relocation_lengths())
      if (len != 4 && len != 6)
        add_violation(report, {{"inequality", "relocation takes 4 or 6 turns"}, {"opponent", who}, {"turns", len}});
    for (int d : e.trigger_distances())
      if (d != 3)
        add_violation(report, {{"inequality", "trigger at cop distance exactly 3"}, {"opponent", who}, {"distance", d}});
    if (e.fallbacks() != 0)
      add_violation(report, {{"inequality", "no fallback moves"}, {"opponent", who}, {"fallbacks", e.fallbacks()}});
    if (t.outcome != Outcome::robber_survives)
      add_violation(report, {{"inequality", "robber survives"}, {"opponent", who}, {"reason", t.reason}});
  };
  // While resting next to v, both cops keep distance >= 4 from v.
  auto safe_observer = [&](D5Robber& robber, const std::string& who) {
    return [&report, &robber, who](const Board&, const Transcript& t) {
      const auto& entry = t.entries.back();
      if (entry.actor != "robber" || t.entries.size() < 3) return;
      const D5Evader& e = robber.evader();
      if (e.relocating()) return;
      int m = kInfinity;
      for (int c : entry.state.cops) m = std::min(m, e.dist()[c][e.home()]);
      if (m < 4)
        add_violation(report, {{"inequality", "safe around v: cops at distance >= 4 from v"}, {"opponent", who},
                               {"distance", m}});
    };
  };

  {
    TableCops cops(table);
    D5Robber robber(d5);
    MatchOptions mo;
    mo.turn_budget = options.match_turns;
    mo.detect_repetition = false;
    const Transcript t = run_match(board, 2, cops, robber, mo, safe_observer(robber, "solver"));
    audit_match(t, robber, "solver");
    report["solver_match"] = {{"turns", t.turns},
                              {"reason", t.reason},
                              {"relocations", robber.evader().relocation_lengths().size()}};
  }
  long relocations = 0;
  for (int i = 0; i < options.rollouts; ++i) {
    const double greed = (i % 4) / 3.0;
    RandomCops cops(options.seed + i, greed);
    D5Robber robber(d5);
    MatchOptions mo;
    mo.turn_budget = options.rollout_turns;
    mo.detect_repetition = false;
    const Transcript t = run_match(board, 2, cops, robber, mo, safe_observer(robber, "random"));
    audit_match(t, robber, "random");
    relocations += static_cast<long>(robber.evader().relocation_lengths().size());
  }
  report["rollouts"] = options.rollouts;
  report["rollout_relocations"] = relocations;
  finish(report, t0);
  return report;
}

json verify_counts() {
  const auto t0 = std::chrono::steady_clock::now();
  json report = {{"check", "counts"}, {"violations", json::array()}, {"cases", json::array()}};
  auto expect = [&](const std::string& what, long want, long got) {
    report["cases"].push_back({{"what", what}, {"expected", want}, {"actual", got}});
    if (want != got) add_violation(report, {{"inequality", what}, {"expected", want}, {"actual", got}});
  };
  const PlanarGraph d5 = build_D5();
  expect("D5 vertices", 170, d5.vertex_count());
  expect("D5 edges", 180, d5.edge_count());
  const PlanarGraph g0 = build_G0();
  expect("G0 vertices", 270, g0.vertex_count());
  expect("G0 edges", 360, g0.edge_count());
  for (int layers : {1, 2, 3, 12}) {
    const PlanarGraph g = build_G_delta4(layers);
    const auto c = g_delta4_counts(layers);
    const std::string tag = "G(L=" + std::to_string(layers) + ") ";
    expect(tag + "vertices = 270 + 180L", 270 + 180L * layers, g.vertex_count());
    expect(tag + "vertices (closed form)", c.vertices, g.vertex_count());
    expect(tag + "edges = 360 + 360L", 360 + 360L * layers, g.edge_count());
    std::map<int, long> census;
    for (const Face& f : g.faces()) ++census[f.length()];
    expect(tag + "faces of length 30", 12, census[30]);
    expect(tag + "faces of length 6", 20, census[6]);
    expect(tag + "faces of other lengths than 4, 6, 30", 0,
           static_cast<long>(g.face_count()) - census[4] - census[6] - census[30]);
    expect(tag + "maximum degree", 4, g.max_degree());
  }
  for (int n : {3, 4, 5})
    for (int s : {1, 2, 3})
      for (int r : {1, 2}) {
        const PlanarGraph g = build_gnsr(n, s, r);
        const std::string tag =
            "G_{" + std::to_string(n) + "," + std::to_string(s) + "," + std::to_string(r) + "} ";
        const long nn = n, ss = s, rr = r;
        expect(tag + "vertices = n^2 + 4sn(n-1) + 12srn(n-1)", nn * nn + 4 * ss * nn * (nn - 1) + 12 * ss * rr * nn * (nn - 1),
               g.vertex_count());
        expect(tag + "edges (closed form)", gnsr_counts(n, s, r).edges, g.edge_count());
        expect(tag + "maximum degree", 5, g.max_degree());
      }
  finish(report, t0);
  return report;
}

}  // namespace pdcr
