// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// line fails. Every comparison is exact; runtime limits are checked per line.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "pdcr/generators.hpp"
#include "pdcr/solver.hpp"
#include "pdcr/strategies.hpp"
#include "pdcr/verify.hpp"
#include "support/random_plane.hpp"

using namespace pdcr;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream detail;

  // Records a failure without stopping the criterion.
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "failed: ";
    else detail << "; ";
    detail << what;
    pass = false;
  }
};

int failures = 0;

void criterion(const char* name, double limit_seconds, const std::function<void(Result&)>& body) {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.expect(secs < limit_seconds, "runtime " + std::to_string(secs) + "s over the limit");
  std::printf("%s %-14s %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", name, r.detail.str().c_str(), secs);
  std::fflush(stdout);
  if (!r.pass) ++failures;
}

std::string str(const std::optional<int>& c) { return c ? std::to_string(*c) : "none"; }

void expect_cop_number(Result& r, const std::string& label, const PlanarGraph& g, int want) {
  Board b(g, rules_preset("surround"));
  const auto c = cop_number(b, want + 1);
  r.expect(c == want, label + " gave " + str(c) + ", expected " + std::to_string(want));
}

// Delta3 cops against the solved robber; returns the cop moves used.
int delta3_match(Result& r, const std::string& label, const PlanarGraph& g) {
  Board b(g, rules_preset("surround"));
  auto table = std::make_shared<SolveResult>(solve(b, 3));
  Delta3Cops cops(g);
  TableRobber robber(table);
  Transcript t = run_match(b, 3, cops, robber);
  const int cop_moves = (t.turns + 1) / 2;
  r.expect(t.outcome == Outcome::cops_win, label + ": no capture (" + t.reason + ")");
  r.expect(cop_moves <= cops.turn_bound(), label + ": " + std::to_string(cop_moves) + " moves over the bound " +
                                               std::to_string(cops.turn_bound()));
  const std::string pot = check_potential_sequence(cops.potentials());
  r.expect(pot.empty(), label + ": potential " + pot);
  return cop_moves;
}

// Escorted tracks are occupied after every cop move and tracks move along
// dual edges.
MatchObserver lockstep_observer(const PlanarGraph& g, const Delta4Cops& cops, Result& r, const std::string& label) {
  auto dual = std::make_shared<std::vector<std::vector<int>>>(all_pairs_distances(g.dual_adjacency()));
  auto before = std::make_shared<std::vector<FaceId>>();
  return [&cops, &r, label, dual, before](const Board&, const Transcript& t) {
    const auto& e = t.entries.back();
    if (e.actor != "cops" || e.state.robber < 0) return;
    const auto now = cops.track_faces();
    for (int i = 0; i < 4; ++i) {
      const int esc = cops.escorts()[i];
      if (esc >= 0 && std::find(e.state.cops.begin(), e.state.cops.end(), now[i]) == e.state.cops.end())
        r.expect(false, label + ": escorted track " + std::to_string(i) + " unoccupied");
      if (!before->empty() && (*dual)[(*before)[i]][now[i]] > 1)
        r.expect(false, label + ": track " + std::to_string(i) + " jumped");
    }
    *before = now;
  };
}

void delta4_match(Result& r, const std::string& label, const PlanarGraph& g, bool try_solver) {
  Board b(g, rules_preset("surround"));
  std::shared_ptr<SolveResult> table;
  if (try_solver) {
    SolverOptions opts;
    opts.state_budget = 2'000'000;
    try {
      table = std::make_shared<SolveResult>(solve(b, 6, opts));
    } catch (const BudgetExceeded&) {
    }
  }
  Delta4Cops cops(g);
  std::unique_ptr<RobberStrategy> robber;
  if (table)
    robber = std::make_unique<TableRobber>(table);
  else
    robber = std::make_unique<SearchRobber>(cops, 12);
  Transcript t = run_match(b, 6, cops, *robber, {}, lockstep_observer(g, cops, r, label));
  r.expect(t.outcome == Outcome::cops_win, label + ": no capture (" + t.reason + " " + t.detail + ")");
  r.detail << label << " vs " << (table ? "solver" : "search-12") << " captured in " << t.turns << " plies; ";
}

}  // namespace

int main() {
  criterion("solver-oracle", 300, [](Result& r) {
    for (int n = 2; n <= 4; ++n) expect_cop_number(r, "K_{2," + std::to_string(n) + "}", small_family("k2n", n), n);
    expect_cop_number(r, "path P_5", small_family("path", 5), 1);
    expect_cop_number(r, "star K_{1,4}", small_family("star", 4), 1);
    std::mt19937 rng(3);
    for (int i = 0; i < 3; ++i) {
      // Caterpillars and spiders.
      PlanarGraph tree = normalize_degrees(small_family(i % 2 ? "star" : "path", 3 + static_cast<int>(rng() % 4)), 3);
      expect_cop_number(r, "tree " + std::to_string(i), tree, 1);
    }
    for (int k = 3; k <= 6; ++k) expect_cop_number(r, "C_" + std::to_string(k), small_family("cycle", k), 2);
    expect_cop_number(r, "K_4", small_family("k4"), 3);
    expect_cop_number(r, "dodecahedron", dodecahedron(), 3);
    if (r.pass) r.detail << "K_{2,n}=n (n=2..4), trees=1, C_3..C_6=2, K_4=dodecahedron=3";
  });

  criterion("delta3", 300, [](Result& r) {
    delta3_match(r, "K_4", small_family("k4"));
    delta3_match(r, "cube", small_family("cube"));
    delta3_match(r, "dodecahedron", dodecahedron());
    std::mt19937 rng(2024);
    int largest = 0;
    for (int i = 0; i < 20; ++i) {
      PlanarGraph g = testing::random_normalized_subcubic(rng, 40);
      largest = std::max(largest, g.vertex_count());
      delta3_match(r, "random " + std::to_string(i), g);
    }
    PlanarGraph cube = small_family("cube");
    Board b(cube, rules_preset("surround"));
    for (int seed = 0; seed < 10000; ++seed) {
      Delta3Cops cops(cube);
      RandomRobber robber(seed);
      MatchOptions opts;
      opts.detect_repetition = false;
      Transcript t = run_match(b, 3, cops, robber, opts);
      const bool ok = t.outcome == Outcome::cops_win && (t.turns + 1) / 2 <= cops.turn_bound() &&
                      check_potential_sequence(cops.potentials()).empty();
      r.expect(ok, "cube random robber seed " + std::to_string(seed));
      if (!ok) break;
    }
    if (r.pass)
      r.detail << "K_4, cube, dodecahedron and 20 random graphs (<= " << largest
               << " vertices) vs solver robbers, 10^4 random robbers on the cube; bounds and potentials hold";
  });

  criterion("delta4", 900, [](Result& r) {
    delta4_match(r, "octahedron", small_family("octahedron"), true);
    delta4_match(r, "grid4", normalize_degrees(small_family("grid", 4), 4), true);
    delta4_match(r, "grid5", normalize_degrees(small_family("grid", 5), 4), true);
    if (r.pass) r.detail << "lockstep held";
  });

  criterion("lemma2", 1200, [](Result& r) {
    Lemma2Options opts;
    opts.rollouts = 10000;
    const auto rep = verify_lemma2(opts);
    r.expect(rep.at("ok").get<bool>(), rep.at("violations").dump());
    r.expect(rep.at("girth") == 30, "girth " + rep.at("girth").dump());
    if (r.pass)
      r.detail << "robber wins on D5 (" << rep.at("states").dump() << " states), girth 30, "
               << rep.at("rollouts").dump() << " rollouts keep distance >= 2";
  });

  criterion("lift-g", 1800, [](Result& r) {
    const int L = 12;
    PlanarGraph g = build_G_delta4(L);
    Board b(g, rules_preset("surround"));
    const auto& in_g0 = g.labels().vertex.at(label::kInG0);
    int bad = 0, episodes = 0;
    for (int seed = 0; seed < 1000; ++seed) {
      std::unique_ptr<CopStrategy> cops;
      if (seed % 3 == 0) cops = std::make_unique<GreedyCops>();
      else if (seed % 3 == 1) cops = std::make_unique<RandomCops>(seed, 0.5);
      else cops = std::make_unique<HoleDivingCops>(seed);
      LiftedRobber robber(g);
      MatchOptions opts;
      opts.turn_budget = 20 * L;
      opts.detect_repetition = false;
      Transcript t = run_match(b, 5, *cops, robber, opts);
      bool ok = t.outcome == Outcome::robber_survives && t.turns == 20 * L && robber.violations() == 0;
      for (const auto& e : t.entries) ok = ok && (e.state.robber < 0 || in_g0[e.state.robber] == 1);
      episodes += robber.episodes_started();
      if (!ok) {
        ++bad;
        r.expect(false, "seed " + std::to_string(seed) + " (" + cops->name() + ", " + t.reason + ", " +
                            std::to_string(robber.violations()) + " violations)");
      }
    }
    if (r.pass) r.detail << "G(12): 1000 rollouts of 240 plies, 0 violations, " << episodes << " hole episodes";
    else r.detail << " [" << bad << "/1000 rollouts]";
  });

  criterion("lemma3", 600, [](Result& r) {
    for (auto [n, s, rr] : {std::tuple{4, 2, 19}, std::tuple{5, 2, 25}}) {
      const auto rep = verify_lemma3(n, s, rr);
      r.expect(rep.at("ok").get<bool>(), "G_{" + std::to_string(n) + ",2," + std::to_string(rr) + "}: " +
                                             rep.at("violations").dump());
    }
    const auto neg = verify_lemma3(4, 2, 1);
    r.expect(!neg.at("ok").get<bool>(), "negative control G_{4,2,1} passed");
    if (r.pass)
      r.detail << "G_{4,2,19}, G_{5,2,25}: all shallow pairs pass; G_{4,2,1} fails with "
               << neg.at("violation_count").dump() << " violations";
  });

  criterion("lemma4", 600, [](Result& r) {
    for (auto [n, s, rr] : {std::tuple{4, 2, 19}, std::tuple{5, 2, 25}}) {
      const auto rep = verify_lemma4(n, s, rr);
      r.expect(rep.at("ok").get<bool>(), "G_{" + std::to_string(n) + ",2," + std::to_string(rr) + "}: " +
                                             rep.at("violations").dump());
      r.detail << "G_{" << n << ",2," << rr << "} min slack " << rep.at("min_slack_d_at_least_3").dump() << "; ";
    }
    if (r.pass) r.detail << "skeleton distance (2s+1)d exact, dual bound 3s(d-2) holds";
  });

  criterion("counts", 300, [](Result& r) {
    const auto rep = verify_counts();
    r.expect(rep.at("ok").get<bool>(), rep.at("violations").dump());
    if (r.pass) r.detail << "D5, G0, G(L), G_{n,s,r} counts and censuses exact";
  });

  criterion("vtrans", 600, [](Result& r) {
    PlanarGraph g = build_gnsr(3, 8, 49);
    Board b(g, rules_preset("surround"));
    int steps = 0;
    for (int k : {1, 2}) {
      auto evasion = std::make_shared<TableGridEvasion>(3, 7, 8, k);
      for (int seed = 0; seed < 4; ++seed) {
        std::unique_ptr<CopStrategy> cops;
        if (seed == 0) cops = std::make_unique<GreedyCops>();
        else cops = std::make_unique<RandomCops>(seed, 0.6);
        VelocityTranslationRobber robber(g, evasion);
        r.expect(robber.macro_length() == 136, "macro length " + std::to_string(robber.macro_length()));
        MatchOptions opts;
        opts.turn_budget = 2 * 136 * 6;
        opts.detect_repetition = false;
        run_match(b, k, *cops, robber, opts);
        steps += static_cast<int>(robber.macro_steps().size());
        const std::string err = check_macro_steps(g, robber.macro_steps(), 7, 8);
        r.expect(err.empty(), "k=" + std::to_string(k) + " seed " + std::to_string(seed) + ": " + err);
      }
    }
    // c_{1,2} of the 3x3 grid under same-vertex capture, fixed at first run.
    PlanarGraph g3 = small_family("grid", 3);
    Board b3(g3, rules_preset("velocity:1,2"));
    const auto c12 = cop_number(b3, 4);
    r.expect(c12 == 2, "c_{1,2}(G_3) = " + str(c12) + ", pinned 2");
    if (r.pass) r.detail << steps << " macro steps of 136 turns within 8 grid steps; c_{1,2}(G_3) = 2";
  });

  std::printf("summary: %d failing\n", failures);
  return failures ? 1 : 0;
}
