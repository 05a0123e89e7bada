#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <memory>
#include <random>

#include "pdcr/generators.hpp"
#include "pdcr/strategies.hpp"
#include "support/random_plane.hpp"

using namespace pdcr;

namespace {

Transcript delta3_vs_solver(const PlanarGraph& g, Delta3Cops& cops) {
  Board b(g, rules_preset("surround"));
  auto table = std::make_shared<SolveResult>(solve(b, 3));
  TableRobber robber(table);
  return run_match(b, 3, cops, robber);
}

void expect_delta3_capture(const PlanarGraph& g) {
  Delta3Cops cops(g);
  Transcript t = delta3_vs_solver(g, cops);
  CHECK(t.outcome == Outcome::cops_win);
  const int cop_moves = (t.turns + 1) / 2;
  CHECK(cop_moves <= cops.turn_bound());
  CHECK(check_potential_sequence(cops.potentials()) == "");
  REQUIRE_FALSE(cops.potentials().empty());
}

int d5_min_distance(const D5Evader& e, const GameState& s) {
  int m = kInfinity;
  if (s.robber < 0) return m;
  for (int c : s.cops) m = std::min(m, e.dist()[c][s.robber]);
  return m;
}

}  // namespace

TEST_CASE("effective vertex of a leaf") {
  PlanarGraph g = normalize_degrees(small_family("path", 5), 3);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int e = effective_vertex(g, v);
    CHECK(g.degree(e) == 3);
  }
  PlanarGraph k2 = small_family("k2");
  CHECK(effective_vertex(k2, 0) == 0);
}

TEST_CASE("delta3 captures optimal robbers on cubic polyhedra") {
  expect_delta3_capture(small_family("k4"));
  expect_delta3_capture(small_family("cube"));
  expect_delta3_capture(dodecahedron());
}

TEST_CASE("delta3 on random subcubic plane graphs") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 8; ++i) {
    PlanarGraph g = testing::random_normalized_subcubic(rng, 40);
    CAPTURE(i);
    CAPTURE(g.vertex_count());
    expect_delta3_capture(g);
  }
}

TEST_CASE("delta3 against random robbers on the cube") {
  PlanarGraph g = small_family("cube");
  Board b(g, rules_preset("surround"));
  for (int seed = 0; seed < 300; ++seed) {
    Delta3Cops cops(g);
    RandomRobber robber(seed);
    MatchOptions opts;
    opts.detect_repetition = false;
    Transcript t = run_match(b, 3, cops, robber, opts);
    REQUIRE(t.outcome == Outcome::cops_win);
    CHECK((t.turns + 1) / 2 <= cops.turn_bound());
    CHECK(check_potential_sequence(cops.potentials()) == "");
  }
}

TEST_CASE("delta3 rejects bad preconditions") {
  CHECK_THROWS_AS(Delta3Cops(small_family("octahedron")), StrategyError);
  PlanarGraph g = small_family("cube");
  Board b(g, rules_preset("surround"));
  Delta3Cops cops(g);
  CHECK_THROWS_AS(cops.place(b, 2), StrategyError);
}

TEST_CASE("potential sequence checker") {
  CHECK(check_potential_sequence({5, 4, 4, 3, 2, 0}) == "");
  CHECK(check_potential_sequence({5, 6}) != "");
  CHECK(check_potential_sequence({5, 5, 5}) != "");
}

TEST_CASE("delta4 captures the optimal robber on the octahedron") {
  PlanarGraph g = small_family("octahedron");
  Board b(g, rules_preset("surround"));
  auto table = std::make_shared<SolveResult>(solve(b, 6));
  Delta4Cops cops(g);
  TableRobber robber(table);
  Transcript t = run_match(b, 6, cops, robber);
  CHECK(t.outcome == Outcome::cops_win);
  const auto& times = cops.catch_times();
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] >= 0) CHECK(times[i - 1] <= times[i]);
}

TEST_CASE("delta4 against random robbers on a normalized grid") {
  PlanarGraph g = normalize_degrees(small_family("grid", 4), 4);
  Board b(g, rules_preset("surround"));
  auto table = std::make_shared<SolveResult>(classical_dual_solver(g, 3));
  for (int seed = 0; seed < 100; ++seed) {
    Delta4Cops cops(g, table);
    RandomRobber robber(seed);
    MatchOptions opts;
    opts.detect_repetition = false;
    Transcript t = run_match(b, 6, cops, robber, opts);
    REQUIRE(t.outcome == Outcome::cops_win);
  }
}

TEST_CASE("track faces move along dual edges") {
  PlanarGraph g = small_family("octahedron");
  Board b(g, rules_preset("surround"));
  Delta4Cops cops(g);
  RandomRobber robber(5);
  std::vector<FaceId> before;
  MatchObserver watch = [&](const Board&, const Transcript& t) {
    if (t.entries.back().actor != "cops" || t.entries.back().state.robber < 0) return;
    auto now = cops.track_faces();
    const auto dist = all_pairs_distances(g.dual_adjacency());
    if (!before.empty())
      for (int i = 0; i < 4; ++i) CHECK(dist[before[i]][now[i]] <= 1);
    // The tracks are the four faces around the robber.
    auto faces = now;
    std::sort(faces.begin(), faces.end());
    CHECK(faces == g.incident_faces(effective_vertex(g, t.entries.back().state.robber)));
    before = now;
  };
  run_match(b, 6, cops, robber, {}, watch);
}

TEST_CASE("search robber runs against delta4") {
  PlanarGraph g = small_family("octahedron");
  Board b(g, rules_preset("surround"));
  Delta4Cops cops(g);
  SearchRobber robber(cops, 6);
  Transcript t = run_match(b, 6, cops, robber);
  CHECK(t.outcome == Outcome::cops_win);
}

TEST_CASE("d5 robber keeps distance two against the solved cops") {
  PlanarGraph d5 = build_D5();
  Board b(d5, rules_preset("lemma2"));
  auto table = std::make_shared<SolveResult>(solve(b, 2));
  REQUIRE_FALSE(table->cops_win());
  TableCops cops(table);
  D5Robber robber(d5);
  MatchOptions opts;
  opts.turn_budget = 600;
  opts.detect_repetition = false;
  Transcript t = run_match(b, 2, cops, robber, opts);
  CHECK(t.outcome == Outcome::robber_survives);
  CHECK(t.reason == "turn-budget");
  for (const auto& e : t.entries) CHECK(d5_min_distance(robber.evader(), e.state) >= 2);
  for (int len : robber.evader().relocation_lengths()) CHECK((len == 4 || len == 6));
  for (int d : robber.evader().trigger_distances()) CHECK(d == 3);
  CHECK(robber.evader().fallbacks() == 0);
  CHECK_FALSE(robber.evader().relocation_lengths().empty());
}

TEST_CASE("d5 robber against randomized cops") {
  PlanarGraph d5 = build_D5();
  Board b(d5, rules_preset("lemma2"));
  for (int seed = 0; seed < 200; ++seed) {
    RandomCops cops(seed, 0.7);
    D5Robber robber(d5);
    MatchOptions opts;
    opts.turn_budget = 300;
    opts.detect_repetition = false;
    Transcript t = run_match(b, 2, cops, robber, opts);
    REQUIRE(t.outcome == Outcome::robber_survives);
    for (const auto& e : t.entries) CHECK(d5_min_distance(robber.evader(), e.state) >= 2);
    CHECK(robber.evader().fallbacks() == 0);
  }
}

TEST_CASE("lifted robber survives scripted cops on G(L)") {
  const int L = 12;
  PlanarGraph g = build_G_delta4(L);
  Board b(g, rules_preset("surround"));
  for (int seed = 0; seed < 60; ++seed) {
    std::unique_ptr<CopStrategy> cops;
    if (seed % 3 == 0) cops = std::make_unique<GreedyCops>();
    else if (seed % 3 == 1) cops = std::make_unique<RandomCops>(seed, 0.5);
    else cops = std::make_unique<HoleDivingCops>(seed);
    LiftedRobber robber(g);
    MatchOptions opts;
    opts.turn_budget = 20 * L;
    opts.detect_repetition = false;
    Transcript t = run_match(b, 5, *cops, robber, opts);
    CAPTURE(seed);
    CHECK(t.outcome == Outcome::robber_survives);
    CHECK(robber.violations() == 0);
    if (seed % 3 == 2) CHECK(robber.episodes_started() > 0);
    const auto& in_g0 = g.labels().vertex.at(label::kInG0);
    for (const auto& e : t.entries)
      if (e.state.robber >= 0) CHECK(in_g0[e.state.robber] == 1);
  }
}

TEST_CASE("velocity translation keeps macro-step bounds") {
  PlanarGraph g = build_gnsr(3, 8, 49);
  Board b(g, rules_preset("surround"));
  for (int k : {1, 2}) {
    auto evasion = std::make_shared<TableGridEvasion>(3, 7, 8, k);
    VelocityTranslationRobber robber(g, evasion);
    CHECK(robber.macro_length() == 136);
    GreedyCops cops;
    MatchOptions opts;
    opts.turn_budget = 2 * 136 * 6;
    opts.detect_repetition = false;
    Transcript t = run_match(b, k, cops, robber, opts);
    CHECK(robber.macro_steps().size() >= 2);
    CHECK(check_macro_steps(g, robber.macro_steps(), 7, 8) == "");
  }
}

TEST_CASE("registry builds every named agent") {
  PlanarGraph cube = small_family("cube");
  Board b(cube, rules_preset("surround"));
  for (const auto& name : {"delta3", "solver", "greedy", "random"}) CHECK(make_cops(name, b)->name() == name);
  CHECK_THROWS(make_cops("delta4", b));
  for (const auto& name : {"solver", "random", "stationary"}) CHECK(make_robber(name, b)->name() == name);
  CHECK_THROWS(make_robber("nope", b));
  PlanarGraph d5 = build_D5();
  Board bd(d5, rules_preset("lemma2"));
  CHECK(make_robber("d5", bd)->name() == "d5");
}
