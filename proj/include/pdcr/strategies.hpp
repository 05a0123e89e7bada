// strategies.hpp
//
// Match agents: the constructive cop strategies for maximum degree 3 and 4,
// the distance-keeping robber on D5 and its lift to G(L), the robber that
// translates a grid evasion strategy to G_{n,s,r}, a bounded-depth search
// robber, and simple scripted/random agents used as opponents.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdcr/game.hpp"
#include "pdcr/solver.hpp"

namespace pdcr {

/// A strategy precondition or one of its asserted invariants failed.
class StrategyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// --- shared helpers ---------------------------------------------------------

/// A robber on a leaf is treated as standing on the leaf's neighbor.
VertexId effective_vertex(const PlanarGraph& g, VertexId v);

/// Assigns each cop of `from` (in order) a destination in the multiset `to`
/// reachable in one move; throws StrategyError when impossible.
std::vector<int> match_moves(const Board& board, const std::vector<int>& from, const std::vector<int>& to);

/// Whether a perfect matching pairs `a` with `b` using only allowed pairs.
bool has_perfect_matching(const std::vector<int>& a, const std::vector<int>& b,
                          const std::function<bool(int, int)>& allowed);

// --- maximum degree 3: three face-cops with target faces --------------------

class Delta3Cops : public CopStrategy {
 public:
  /// The graph must have all degrees in {1, 3} (see normalize_degrees), or
  /// maximum degree at most 1.
  explicit Delta3Cops(const PlanarGraph& g);

  std::string name() const override { return "delta3"; }
  std::vector<int> place(const Board& board, int cop_count) override;
  std::vector<int> move(const Board& board, const GameState& s) override;
  std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<Delta3Cops>(*this); }

  /// Sum of dual distances to the targets after each cop move.
  const std::vector<int>& potentials() const { return potentials_; }
  int stall_count() const { return stalls_; }
  /// Cop moves after which capture is guaranteed, from the first potential.
  int turn_bound() const;

 private:
  struct Pending {
    VertexId u = -1, v = -1;
    int c1 = -1;
    FaceId x = -1, y = -1;  // faces on both sides of uv
  };
  int dist(FaceId a, FaceId b) const { return dual_dist_[a][b]; }
  int step_toward(const Board& board, FaceId from, FaceId to) const;
  int potential(const std::vector<DartId>& targets) const;
  void assign_at(VertexId v, const std::vector<int>& who);
  void retarget(VertexId u, VertexId v);
  void resolve_stall(VertexId r);

  const PlanarGraph* g_;
  std::vector<std::vector<int>> dual_dist_;
  std::vector<int> pos_;
  std::vector<DartId> target_;  // angle dart per cop (its face is the target)
  VertexId at_ = -1;            // effective robber vertex the targets refer to
  std::optional<Pending> pending_;
  std::vector<int> potentials_;
  int stalls_ = 0;
};

/// Checks the potential sequence: never increases, strictly decreases over
/// every two consecutive cop moves, and reaches zero. Empty string if fine.
std::string check_potential_sequence(const std::vector<int>& potentials);

// --- maximum degree 4: six face-cops, escorts and imaginary robbers --------

class Delta4Cops : public CopStrategy {
 public:
  /// Degrees must be in {1, 4} (or maximum degree at most 1). Solves the
  /// three-cop classical game on the dual unless a table is supplied.
  explicit Delta4Cops(const PlanarGraph& g, std::shared_ptr<const SolveResult> dual_table = nullptr);

  std::string name() const override { return "delta4"; }
  std::vector<int> place(const Board& board, int cop_count) override;
  std::vector<int> move(const Board& board, const GameState& s) override;
  std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<Delta4Cops>(*this); }

  /// Face currently occupied by each imaginary robber track.
  std::vector<FaceId> track_faces() const;
  /// Cop index escorting each track, -1 while not caught.
  const std::vector<int>& escorts() const { return escort_; }
  /// Cop move index at which each track was caught, -1 while hunting.
  const std::vector<int>& catch_times() const { return catch_time_; }
  int phase() const { return phase_; }

 private:
  void advance_tracks(VertexId u, VertexId v);
  void hunt(const Board& board);
  void check_lockstep() const;
  int step_toward(FaceId from, FaceId to) const;

  const PlanarGraph* g_;
  std::shared_ptr<const SolveResult> table_;
  std::vector<std::vector<int>> dual_dist_;
  std::vector<int> pos_;
  std::vector<DartId> track_;  // angle dart at the effective robber vertex
  std::vector<int> escort_;
  std::vector<int> catch_time_;
  std::vector<int> hunters_;
  std::vector<int> reserve_;
  VertexId at_ = -1;
  int phase_ = 0;
  int moves_ = 0;
};

// --- D5: keep distance two from two vertex-cops ----------------------------

/// The relocation logic of the D5 robber, independent of how the cops are
/// observed, so that it can also be driven from G(L).
class D5Evader {
 public:
  /// `d5` must be build_D5() (degree-3 vertices joined by 6-paths).
  explicit D5Evader(const PlanarGraph& d5);

  /// Start at a neighbor s_v of a degree-3 vertex v with all cops at
  /// distance >= 4 from v. Throws StrategyError when no such v exists.
  VertexId place(const std::vector<VertexId>& cops);
  /// Whether `place` would succeed.
  bool has_safe_start(const std::vector<VertexId>& cops) const;

  struct Step {
    VertexId to = -1;
    VertexId announce = -1;  // next planned vertex after `to`, if any
    bool fallback = false;   // the proof's preconditions did not hold
  };
  /// One robber turn from `at` given the cop positions that matter.
  /// `prefer` (optional) lists degree-3 vertices to drift toward while safe.
  Step step(VertexId at, const std::vector<VertexId>& cops, const std::vector<VertexId>& prefer = {});

  VertexId home() const { return home_; }

  bool relocating() const { return !path_.empty(); }
  /// Robber turns used by each completed relocation.
  const std::vector<int>& relocation_lengths() const { return relocation_lengths_; }
  /// Cop distance to home that fired each relocation.
  const std::vector<int>& trigger_distances() const { return trigger_distances_; }
  int fallbacks() const { return fallbacks_; }
  const std::vector<std::vector<int>>& dist() const { return dist_; }
  const std::vector<VertexId>& degree3() const { return v3_; }

 private:
  VertexId start_neighbor(VertexId v, const std::vector<VertexId>& cops) const;
  std::vector<VertexId> path_to_neighbor_of(VertexId from, VertexId w) const;
  Step fallback_step(VertexId at, const std::vector<VertexId>& cops);
  Step recover(VertexId at, const std::vector<VertexId>& cops);
  int worst_case_distance(VertexId robber, const std::vector<VertexId>& cops, int rounds) const;

  const PlanarGraph* g_;
  std::vector<std::vector<int>> dist_;
  std::vector<VertexId> v3_;
  VertexId home_ = -1;
  std::vector<VertexId> path_;  // remaining vertices of the relocation
  int relocation_turns_ = 0;
  bool recovering_ = false;
  std::vector<int> relocation_lengths_;
  std::vector<int> trigger_distances_;
  int fallbacks_ = 0;
};

class D5Robber : public RobberStrategy {
 public:
  explicit D5Robber(const PlanarGraph& d5) : evader_(d5) {}
  std::string name() const override { return "d5"; }
  RobberMove place(const Board& board, const GameState& s) override;
  RobberMove move(const Board& board, const GameState& s) override;
  const D5Evader& evader() const { return evader_; }

 private:
  D5Evader evader_;
};

// --- G(L): the D5 robber lifted to face-cops -------------------------------

class LiftedRobber : public RobberStrategy {
 public:
  /// `g` must come from build_G_delta4; the robber watches the first two
  /// cops it sees and keeps their D5 images at distance >= 2.
  explicit LiftedRobber(const PlanarGraph& g);
  std::string name() const override { return "lift-g"; }
  RobberMove place(const Board& board, const GameState& s) override;
  RobberMove move(const Board& board, const GameState& s) override;

  /// Tracked cop faces after the last observation.
  const std::vector<FaceId>& tracked() const { return tracked_; }
  /// Whether each tracked cop is inside a hole episode (entered a hole and
  /// has not yet come back to a face touching G0).
  const std::vector<bool>& in_episode() const { return episode_; }
  int episodes_started() const { return episodes_started_; }
  /// Observations where a tracked cop outside a hole episode sat on a face
  /// whose D5 image is within distance 1 of the robber's image.
  int violations() const { return violations_; }
  const D5Evader& evader() const { return evader_; }
  const PlanarGraph& d5() const { return *d5_; }
  const std::vector<int>& face_image() const { return face_image_; }
  int vertex_image(VertexId v) const { return vertex_image_[v]; }

 private:
  void observe(const std::vector<FaceId>& cops);
  std::vector<VertexId> relevant_images() const;
  std::vector<VertexId> threat_images() const;
  std::vector<VertexId> hole_free_targets() const;
  void audit(VertexId robber);
  VertexId realize(VertexId at, VertexId d5_to, VertexId d5_after) const;

  const PlanarGraph* g_;
  std::shared_ptr<PlanarGraph> d5_;
  D5Evader evader_;
  std::vector<int> face_image_;
  std::vector<int> vertex_image_;
  std::vector<bool> touches_g0_;
  std::vector<int> hole_dface_;
  std::vector<std::vector<VertexId>> dface_vertices_;  // D5 boundary of each D face
  std::vector<VertexId> g0_of_b_;                // D5 B vertex -> G vertex
  std::vector<FaceId> tracked_;
  std::vector<bool> episode_;
  std::vector<int> episode_hole_;  // D face of the entered hole
  int episodes_started_ = 0;
  int violations_ = 0;
};

// --- G_{n,s,r}: velocity translation ----------------------------------------

/// Evasion strategy for vertex-cops with velocity p against a robber with
/// velocity q on the n x n grid G_n (vertex ids y*n + x).
class GridEvasion {
 public:
  virtual ~GridEvasion() = default;
  virtual int place(const std::vector<int>& cops) = 0;
  virtual int move(const std::vector<int>& cops, int robber) = 0;
};

/// Grid evasion read off a solved table of the velocity game on G_n.
class TableGridEvasion : public GridEvasion {
 public:
  TableGridEvasion(int n, int p, int q, int cop_count, const SolverOptions& options = {});
  int place(const std::vector<int>& cops) override;
  int move(const std::vector<int>& cops, int robber) override;
  const SolveResult& table() const { return *table_; }
  int fallbacks() const { return fallbacks_; }

 private:
  std::unique_ptr<PlanarGraph> grid_;
  std::unique_ptr<SolveResult> table_;
  int fallbacks_ = 0;
};

struct MacroStep {
  int start_turn = 0;  // robber move index at which it began
  VertexId from = -1, to = -1;
  int grid_distance = 0;
  int walk_length = 0;
  std::vector<FaceId> cop_faces;      // at the start
  std::vector<VertexId> cop_images;   // v_f of those faces
};

class VelocityTranslationRobber : public RobberStrategy {
 public:
  /// Cops velocity p, robber velocity q in the grid game.
  VelocityTranslationRobber(const PlanarGraph& g, std::shared_ptr<GridEvasion> evasion, int p = 7, int q = 8);
  std::string name() const override { return "vtrans"; }
  RobberMove place(const Board& board, const GameState& s) override;
  RobberMove move(const Board& board, const GameState& s) override;

  /// Robber turns per macro-step: (2s+1) q.
  int macro_length() const { return (2 * s_ + 1) * q_; }
  const std::vector<MacroStep>& macro_steps() const { return steps_; }
  /// Grid distance between two grid vertices.
  int grid_distance(VertexId a, VertexId b) const;

 private:
  void begin_macro(const GameState& s);
  std::vector<VertexId> route(VertexId from, VertexId to) const;

  const PlanarGraph* g_;
  std::shared_ptr<GridEvasion> evasion_;
  int n_, s_, p_, q_;
  std::vector<int> closest_grid_;
  std::vector<bool> on_route_;  // grid and subdivision vertices
  std::vector<MacroStep> steps_;
  std::vector<VertexId> walk_;  // remaining vertices
  int turn_ = 0;
  int macro_turn_ = 0;
};

/// Checks the recorded macro-steps: each walk has length (2s+1)d with d <= q
/// and at most the macro length, and between consecutive macro-steps the cop
/// images can be matched with grid displacement <= p. Also checks the dual
/// lower bound 3s(d-2) on every pair of shallow cop faces. Empty if fine.
std::string check_macro_steps(const PlanarGraph& g, const std::vector<MacroStep>& steps, int p, int q);

// --- generic agents ---------------------------------------------------------

/// Each cop heads for a distinct position of the robber's capture set.
class GreedyCops : public CopStrategy {
 public:
  std::string name() const override { return "greedy"; }
  std::vector<int> place(const Board& board, int cop_count) override;
  std::vector<int> move(const Board& board, const GameState& s) override;
  std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<GreedyCops>(*this); }
};

/// With probability `greed` a cop makes the greedy move, otherwise a uniformly
/// random move within its ball.
class RandomCops : public CopStrategy {
 public:
  explicit RandomCops(std::uint64_t seed, double greed = 0.0) : rng_(seed), greed_(greed) {}
  std::string name() const override { return "random"; }
  std::vector<int> place(const Board& board, int cop_count) override;
  std::vector<int> move(const Board& board, const GameState& s) override;
  std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<RandomCops>(*this); }

 private:
  std::mt19937_64 rng_;
  double greed_;
};

/// On G(L): cops alternate between diving into the nearest hole, waiting
/// there, and chasing the robber greedily.
class HoleDivingCops : public CopStrategy {
 public:
  explicit HoleDivingCops(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "hole-diving"; }
  std::vector<int> place(const Board& board, int cop_count) override;
  std::vector<int> move(const Board& board, const GameState& s) override;
  std::unique_ptr<CopStrategy> clone() const override { return std::make_unique<HoleDivingCops>(*this); }

 private:
  enum class Mode { dive, wait, chase };
  std::mt19937_64 rng_;
  std::vector<int> pos_;
  std::vector<Mode> mode_;
  std::vector<int> timer_;
};

class RandomRobber : public RobberStrategy {
 public:
  explicit RandomRobber(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  RobberMove place(const Board& board, const GameState& s) override;
  RobberMove move(const Board& board, const GameState& s) override;

 private:
  std::mt19937_64 rng_;
};

/// Starts as far from the cops as possible and never moves (unless an
/// announcement forces a step).
class StationaryRobber : public RobberStrategy {
 public:
  std::string name() const override { return "stationary"; }
  RobberMove place(const Board& board, const GameState& s) override;
  RobberMove move(const Board& board, const GameState& s) override;
};

/// Searches `plies` plies ahead against a copy of the actual cop strategy
/// (robber moves enumerated, cop replies simulated), maximizing the time to
/// capture and then a distance heuristic.
class SearchRobber : public RobberStrategy {
 public:
  SearchRobber(const CopStrategy& cops, int plies = 12) : cops_(&cops), plies_(plies) {}
  std::string name() const override { return "search"; }
  RobberMove place(const Board& board, const GameState& s) override;
  RobberMove move(const Board& board, const GameState& s) override;

 private:
  long long value(const Board& board, const GameState& s, const CopStrategy& cops, int plies_left) const;
  const CopStrategy* cops_;
  int plies_;
};

// --- registry ---------------------------------------------------------------

struct AgentOptions {
  std::uint64_t seed = 1;
  int cop_count = 3;
  SolverOptions solver;
  /// Solved table of the board, shared by "solver" agents when present.
  std::shared_ptr<const SolveResult> table;
};

/// delta3 | delta4 | solver | greedy | random | hole-diving
std::unique_ptr<CopStrategy> make_cops(const std::string& name, const Board& board, const AgentOptions& options = {});
/// d5 | lift-g | vtrans | solver | random | stationary
std::unique_ptr<RobberStrategy> make_robber(const std::string& name, const Board& board,
                                            const AgentOptions& options = {});
std::vector<std::string> cop_strategy_names();
std::vector<std::string> robber_strategy_names();

}  // namespace pdcr
