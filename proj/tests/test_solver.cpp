#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <map>
#include <memory>

#include "pdcr/generators.hpp"
#include "pdcr/solver.hpp"

using namespace pdcr;

namespace {

int star_number(const char* family, int k, const char* rules = "surround", int k_max = 6) {
  PlanarGraph g = small_family(family, k);
  Board b(g, rules_preset(rules));
  auto c = cop_number(b, k_max);
  return c ? *c : -1;
}

// Naive value iteration over every explicit GameState; the oracle shares
// only legal_moves / captured with the solver.
std::map<std::vector<int>, bool> brute_force(const Board& b, int k) {
  std::vector<GameState> states;
  GameState placement = GameState::initial(k);
  for (const GameState& p : legal_moves(b, placement)) {
    for (const GameState& r : legal_moves(b, p)) {
      GameState c = r;
      states.push_back(c);
      GameState rob = c;
      rob.turn = Turn::robber_move;
      states.push_back(rob);
    }
  }
  // Close under legal moves (announced slots appear only after moves).
  std::map<std::vector<int>, bool> win;
  auto key = [](const GameState& s) {
    std::vector<int> kk = s.cops;
    kk.push_back(s.robber);
    kk.push_back(s.announced);
    kk.push_back(static_cast<int>(s.turn));
    return kk;
  };
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const GameState& n : legal_moves(b, states[i]))
      if (!win.count(key(n))) {
        win[key(n)] = false;
        states.push_back(n);
      }
    win[key(states[i])] = false;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GameState& s : states) {
      bool& w = win[key(s)];
      if (w) continue;
      bool now;
      if (s.turn == Turn::robber_move) {
        now = b.captured(s.cops, s.robber);
        if (!now) {
          now = true;
          for (const GameState& n : legal_moves(b, s)) now = now && win[key(n)];
        }
      } else {
        now = false;
        for (const GameState& n : legal_moves(b, s)) now = now || win[key(n)];
      }
      if (now) {
        w = true;
        changed = true;
      }
    }
  }
  return win;
}

}  // namespace

TEST_CASE("multiset ranking is a bijection") {
  MultisetIndex idx(7, 3);
  CHECK(idx.count() == 84);
  std::vector<bool> seen(84, false);
  for (int a = 0; a < 7; ++a)
    for (int b = a; b < 7; ++b)
      for (int c = b; c < 7; ++c) {
        long long r = idx.rank({a, b, c});
        REQUIRE(r >= 0);
        REQUIRE(r < 84);
        CHECK_FALSE(seen[r]);
        seen[r] = true;
        CHECK(idx.unrank(r) == std::vector<int>{a, b, c});
      }
}

TEST_CASE("cop numbers of small families") {
  for (int n : {2, 3, 4}) CHECK(star_number("k2n", n) == n);
  CHECK(star_number("star", 3) == 1);
  CHECK(star_number("path", 5) == 1);
  for (int k : {3, 4, 5, 6}) CHECK(star_number("cycle", k) == 2);
  CHECK(star_number("k4", 0) == 3);
  CHECK(star_number("dodecahedron", 0) == 3);
  CHECK(star_number("k1", 0) == 1);
}

TEST_CASE("classical velocity sanity") {
  for (int k : {3, 5, 7}) CHECK(star_number("path", k, "classical") == 1);
  for (int k : {4, 5, 6}) CHECK(star_number("cycle", k, "classical") == 2);
}

TEST_CASE("solver agrees with naive value iteration") {
  struct Case {
    const char* family;
    int param;
    const char* rules;
    int k;
  };
  for (Case c : {Case{"cycle", 5, "surround", 1}, Case{"cycle", 4, "surround", 2}, Case{"k2n", 3, "surround", 2},
                 Case{"bowtie", 0, "surround", 2}, Case{"cycle", 6, "classical", 1}, Case{"path", 6, "velocity:1,2", 1},
                 Case{"cube", 0, "lemma2", 1}, Case{"k4", 0, "surround", 2}}) {
    CAPTURE(c.family);
    CAPTURE(c.rules);
    PlanarGraph g = small_family(c.family, c.param);
    Board b(g, rules_preset(c.rules));
    SolveResult r = solve(b, c.k);
    CHECK(r.audit() == 0);
    auto oracle = brute_force(b, c.k);
    for (const auto& [key, w] : oracle) {
      GameState s;
      s.cops.assign(key.begin(), key.begin() + c.k);
      s.robber = key[c.k];
      s.announced = key[c.k + 1];
      s.turn = static_cast<Turn>(key[c.k + 2]);
      CHECK(r.cop_win(s) == w);
    }
  }
}

TEST_CASE("monotone in the number of cops and above the face lower bound") {
  for (const char* name : {"cube", "octahedron", "k4", "bowtie"}) {
    PlanarGraph g = small_family(name, 0);
    Board b(g, rules_preset("surround"));
    bool won = false;
    for (int k = 1; k <= 4; ++k) {
      const bool w = solve(b, k).cops_win();
      if (won) CHECK(w);
      won = won || w;
    }
    // Lower bound from non-cut vertices.
    int bound = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      Adjacency without = g.adjacency();
      for (int w : without[v]) std::erase(without[w], v);
      without[v].clear();
      auto dist = bfs_distances(without, {v == 0 ? 1 : 0});
      int unreachable = 0;
      for (int u = 0; u < g.vertex_count(); ++u) unreachable += u != v && dist[u] == kInfinity;
      if (unreachable == 0) bound = std::max(bound, static_cast<int>(g.incident_faces(v).size()));
    }
    auto c = cop_number(b, 6);
    REQUIRE(c);
    CHECK(*c >= bound);
  }
}

TEST_CASE("distance to capture drops by one along optimal play") {
  PlanarGraph g = small_family("k4");
  Board b(g, rules_preset("surround"));
  auto table = std::make_shared<SolveResult>(solve(b, 3));
  REQUIRE(table->cops_win());
  TableCops cops(table);
  TableRobber robber(table);
  Transcript t = run_match(b, 3, cops, robber);
  CHECK(t.outcome == Outcome::cops_win);
  CHECK(t.turns == table->placement_distance());
  int prev = -1;
  for (const auto& e : t.entries) {
    if (e.state.turn != Turn::cop_move && e.state.turn != Turn::robber_move) continue;
    const int d = table->distance(e.state);
    if (prev >= 0) CHECK(d == prev - 1);
    prev = d;
  }
}

TEST_CASE("table strategies realise the solved outcome") {
  PlanarGraph c6 = small_family("cycle", 6);
  Board b6(c6, rules_preset("surround"));
  auto t6 = std::make_shared<SolveResult>(solve(b6, 2));
  TableCops cops(t6);
  TableRobber robber(t6);
  Transcript t = run_match(b6, 2, cops, robber);
  CHECK(t.outcome == Outcome::cops_win);
  CHECK(t.turns <= t6->state_count());

  PlanarGraph c4 = small_family("cycle", 4);
  Board b4(c4, rules_preset("surround"));
  auto t4 = std::make_shared<SolveResult>(solve(b4, 1));
  CHECK_FALSE(t4->cops_win());
  TableCops one(t4);
  TableRobber runner(t4);
  MatchOptions opts;
  opts.turn_budget = static_cast<int>(10 * t4->state_count());
  opts.detect_repetition = false;
  Transcript u = run_match(b4, 1, one, runner, opts);
  CHECK(u.outcome == Outcome::robber_survives);
  CHECK(u.reason == "turn-budget");
}

TEST_CASE("classical dual solver") {
  PlanarGraph o = small_family("octahedron");
  CHECK(classical_dual_solver(o, 3).cops_win());
  PlanarGraph k2 = small_family("k2");
  CHECK(classical_dual_solver(k2, 1).cops_win());
  PlanarGraph d = dodecahedron();
  CHECK(classical_dual_solver(d, 3).cops_win());
}

TEST_CASE("table dump round trip") {
  PlanarGraph g = small_family("cube");
  Board b(g, rules_preset("surround"));
  SolveResult r = solve(b, 3);
  const std::string path = "solver_table_roundtrip.bin";
  r.save(path);
  SolveResult back = SolveResult::load(b, path);
  CHECK(back.state_count() == r.state_count());
  CHECK(back.winning_placement() == r.winning_placement());
  CHECK(back.audit() == 0);
  Board other(g, rules_preset("classical"));
  CHECK_THROWS(SolveResult::load(other, path));
  std::remove(path.c_str());
}

TEST_CASE("budget guard") {
  PlanarGraph g = build_D5();
  Board b(g, rules_preset("classical"));
  SolverOptions opts;
  opts.state_budget = 1000;
  CHECK_THROWS_AS(solve(b, 2, opts), BudgetExceeded);
}

TEST_CASE("velocity cop numbers of small grids") {
  // Same-vertex capture; c_{1,2} of the 3x3 grid is a fixed regression value.
  auto c = [](int n, const char* rules) {
    PlanarGraph g = small_family("grid", n);
    Board b(g, rules_preset(rules));
    return cop_number(b, 4);
  };
  CHECK(c(3, "velocity:1,2") == 2);
  CHECK(c(3, "velocity:1,1") == 2);
  CHECK(c(3, "velocity:2,1") == 1);
  CHECK(c(2, "velocity:1,1") == 2);
}
