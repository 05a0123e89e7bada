// pdcr: generate graphs, solve games, run matches, check the distance
// statements and serve play sessions. Reports are JSON on stdout;
// verification commands exit 1 when a report is not ok.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pdcr/game.hpp"
#include "pdcr/graph_io.hpp"
#include "pdcr/presets.hpp"
#include "pdcr/service.hpp"
#include "pdcr/solver.hpp"
#include "pdcr/strategies.hpp"
#include "pdcr/verify.hpp"

using namespace pdcr;
using nlohmann::json;

namespace {

// A preset name, or a path to a graph JSON file.
PlanarGraph load_input(const std::string& spec) {
  if (std::filesystem::exists(spec)) return load_graph(spec);
  return graph_preset(spec);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int report(const json& j) {
  std::cout << j.dump(2) << '\n';
  return j.value("ok", false) ? 0 : 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual cops and robber on plane graphs"};
  app.require_subcommand(1);

  std::string graph = "cube", rules = "surround", output;

  auto* gen = app.add_subcommand("gen", "Write a preset graph as JSON");
  gen->add_option("preset", graph, "cycle:6, grid:4, d5, g0, glayers:12, gnsr:4,2,19, ... (suffix /norm3 or /norm4)")
      ->required();
  gen->add_option("-o,--output", output, "File (default stdout)");
  bool no_labels = false;
  gen->add_flag("--no-labels", no_labels, "Omit label tables");

  auto* solve_cmd = app.add_subcommand("solve", "Solve a game exactly");
  int k = 1;
  bool kmax = false;
  std::string table_out;
  long long budget = 0;
  solve_cmd->add_option("-g,--graph", graph, "Preset or graph JSON file");
  solve_cmd->add_option("-r,--rules", rules, "Rule preset");
  solve_cmd->add_option("-k,--k", k, "Number of cops")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--kmax", kmax, "Search for the least winning k <= --k");
  solve_cmd->add_option("--save", table_out, "Write the solved table (binary)");
  solve_cmd->add_option("--budget", budget, "State budget (default from PDCR_STATE_BUDGET or built in)");

  auto* sim = app.add_subcommand("simulate", "Play one match between two strategies");
  std::string cops_name = "greedy", robber_name = "random", table_in, transcript_out;
  int turns = 1000;
  std::uint64_t seed = 1;
  bool repetition = false;
  sim->add_option("-g,--graph", graph, "Preset or graph JSON file");
  sim->add_option("-r,--rules", rules, "Rule preset");
  sim->add_option("-k,--k", k, "Number of cops")->check(CLI::PositiveNumber);
  sim->add_option("--cops", cops_name, "delta3 | delta4 | solver | greedy | random | hole-diving");
  sim->add_option("--robber", robber_name, "d5 | lift-g | vtrans | solver | random | stationary");
  sim->add_option("--turns", turns, "Plies after placement");
  sim->add_option("--seed", seed, "Seed for randomized agents");
  sim->add_option("--table", table_in, "Solved table for solver agents (from solve --save)");
  sim->add_option("--transcript", transcript_out, "Write the transcript as JSON lines");
  sim->add_flag("--repetition", repetition, "End the match on a repeated position");

  auto* replay_cmd = app.add_subcommand("replay", "Check a transcript against the rules");
  std::string transcript_in;
  replay_cmd->add_option("-g,--graph", graph, "Preset or graph JSON file");
  replay_cmd->add_option("transcript", transcript_in, "JSON lines transcript")->required();

  auto* v2 = app.add_subcommand("verify-lemma2", "Distance-2 game on D5 with two cops");
  Lemma2Options l2;
  v2->add_option("--match-turns", l2.match_turns, "Plies against the solved cops");
  v2->add_option("--rollouts", l2.rollouts, "Randomized cop teams");
  v2->add_option("--rollout-turns", l2.rollout_turns, "Plies per rollout");
  v2->add_option("--seed", l2.seed);

  int n = 4, s = 2, r = 19, samples = -1;
  auto* v3 = app.add_subcommand("verify-lemma3", "Shortest cop routes between shallow faces");
  auto* v4 = app.add_subcommand("verify-lemma4", "Robber and cop route lengths on G_{n,s,r}");
  for (auto* cmd : {v3, v4}) {
    cmd->add_option("-n", n, "Grid side")->check(CLI::Range(2, 64));
    cmd->add_option("-s", s, "Subdivisions per grid edge")->check(CLI::NonNegativeNumber);
    cmd->add_option("-r", r, "Nested rings per face")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", samples, "Sampled pairs (negative: all)");
    cmd->add_option("--seed", seed);
  }

  auto* vc = app.add_subcommand("verify-counts", "Closed-form counts of the generators");

  auto* exp = app.add_subcommand("export", "Export a graph");
  std::string format = "json";
  exp->add_option("-g,--graph", graph, "Preset or graph JSON file");
  exp->add_option("-f,--format", format, "json | edges | layout")->check(CLI::IsMember({"json", "edges", "layout"}));
  exp->add_option("-o,--output", output, "File (default stdout)");

  auto* srv = app.add_subcommand("serve", "HTTP play sessions");
  int port = 8080;
  std::string host = "127.0.0.1";
  srv->add_option("-p,--port", port);
  srv->add_option("--host", host);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      write_output(graph_to_json(graph_preset(graph), !no_labels).dump() + "\n", output);
      return 0;
    }
    if (*solve_cmd) {
      PlanarGraph g = load_input(graph);
      Board b(g, rules_preset(rules));
      SolverOptions opts;
      if (budget > 0) opts.state_budget = budget;
      const auto t0 = std::chrono::steady_clock::now();
      json out{{"rules", b.rules().name}, {"vertices", g.vertex_count()}, {"faces", g.face_count()}};
      if (kmax) {
        auto c = cop_number(b, k, opts);
        out["k_max"] = k;
        out["cop_number"] = c ? json(*c) : json(nullptr);
      } else {
        SolveResult res = solve(b, k, opts);
        out["k"] = k;
        out["states"] = res.state_count();
        out["cops_win"] = res.cops_win();
        out["placement"] = res.winning_placement();
        out["capture_plies"] = res.placement_distance();
        if (!table_out.empty()) res.save(table_out);
      }
      out["seconds"] = seconds_since(t0);
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*sim) {
      PlanarGraph g = load_input(graph);
      Board b(g, rules_preset(rules));
      AgentOptions o;
      o.seed = seed;
      o.cop_count = k;
      if (!table_in.empty()) o.table = std::make_shared<SolveResult>(SolveResult::load(b, table_in));
      auto cops = make_cops(cops_name, b, o);
      auto robber = make_robber(robber_name, b, o);
      MatchOptions mo;
      mo.turn_budget = turns;
      mo.detect_repetition = repetition;
      Transcript t = run_match(b, k, *cops, *robber, mo);
      if (!transcript_out.empty()) write_output(t.to_jsonl(), transcript_out);
      json out{{"rules", t.rules},          {"cops", t.cop_strategy},
               {"robber", t.robber_strategy}, {"outcome", t.outcome == Outcome::cops_win ? "cops-win" : "robber-survives"},
               {"reason", t.reason},         {"turns", t.turns},
               {"final", state_to_json(t.final_state())}};
      if (!t.detail.empty()) out["detail"] = t.detail;
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*replay_cmd) {
      PlanarGraph g = load_input(graph);
      std::ifstream in(transcript_in);
      if (!in) throw std::runtime_error("cannot read " + transcript_in);
      std::stringstream text;
      text << in.rdbuf();
      Transcript t = transcript_from_jsonl(text.str());
      Board b(g, rules_preset(t.rules));
      json out{{"moves", t.entries.size()}};
      try {
        out["final"] = state_to_json(replay(b, t));
        out["ok"] = true;
      } catch (const std::runtime_error& e) {
        out["ok"] = false;
        out["violations"] = {e.what()};
      }
      return report(out);
    }
    if (*v2) return report(verify_lemma2(l2));
    if (*v3) return report(verify_lemma3(n, s, r, samples, seed));
    if (*v4) return report(verify_lemma4(n, s, r, samples, seed));
    if (*vc) return report(verify_counts());
    if (*exp) {
      PlanarGraph g = load_input(graph);
      if (format == "json") write_output(graph_to_json(g).dump() + "\n", output);
      else if (format == "edges") write_output(edge_list(g), output);
      else write_output(layout_to_json(g, board_layout(g)).dump() + "\n", output);
      return 0;
    }
    if (*srv) {
      std::cerr << "serving on http://" << host << ':' << port << '\n';
      serve(port, host);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
