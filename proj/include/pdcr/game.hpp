// game.hpp
//
// Cops-and-robber variants on plane graphs: who stands where (faces or
// vertices), what counts as capture, velocities and the degree-3
// announcement rule. A Board caches everything the rules need per graph.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdcr/plane_graph.hpp"

namespace pdcr {

enum class Arena { dual_faces, primal_vertices };
enum class CaptureKind { surround, same_vertex, within_distance };

struct RuleSet {
  Arena cop_arena = Arena::dual_faces;
  /// Faces are only used for the classical game played on the dual.
  Arena robber_arena = Arena::primal_vertices;
  CaptureKind capture = CaptureKind::surround;
  /// within_distance(d): captured when some cop is closer than d.
  int capture_distance = 0;
  int cop_speed = 1;
  int robber_speed = 1;
  /// A robber stepping onto a degree-3 vertex names his next vertex.
  bool announcement = false;
  std::string name;

  /// Throws std::invalid_argument on inconsistent combinations.
  void validate() const;
};

/// surround, classical, dual-classical, lemma2, within:<d>, velocity:<p>,<q>,
/// surround-velocity:<p>,<q>. The conclusion variants single-face and
/// no-flank are recognised but throw std::logic_error.
RuleSet rules_preset(std::string_view name);

enum class Turn { cop_placement, robber_placement, cop_move, robber_move };
std::string_view turn_name(Turn t);

inline constexpr int kUnplaced = -1;

struct GameState {
  std::vector<int> cops;  // sorted; kUnplaced entries before placement
  int robber = kUnplaced;
  Turn turn = Turn::cop_placement;
  int announced = -1;

  bool operator==(const GameState&) const = default;
  static GameState initial(int cop_count);
};

struct RobberMove {
  int vertex = -1;
  int announce = -1;
  bool operator==(const RobberMove&) const = default;
};

class Board {
 public:
  /// The graph must outlive the board.
  Board(const PlanarGraph& graph, RuleSet rules);

  const PlanarGraph& graph() const { return *graph_; }
  const RuleSet& rules() const { return rules_; }

  int cop_positions() const { return static_cast<int>(cop_adj_->size()); }
  int robber_positions() const { return static_cast<int>(robber_adj_->size()); }
  const Adjacency& cop_arena() const { return *cop_adj_; }
  const Adjacency& robber_arena() const { return *robber_adj_; }

  /// Sorted closed balls of radius p (cops) and q (robber).
  const std::vector<int>& cop_ball(int x) const { return cop_ball_[x]; }
  const std::vector<int>& robber_ball(int v) const { return robber_ball_[v]; }
  bool cop_reaches(int from, int to) const;

  /// Surround: the incident face set; otherwise the cop positions that
  /// capture a robber standing at v. Sorted.
  const std::vector<int>& capture_set(int v) const { return capture_set_[v]; }
  bool captured(const std::vector<int>& cops, int robber) const;

  /// Whether stepping onto v from elsewhere triggers an announcement.
  bool announces_at(int v) const;

  bool cop_move_legal(const std::vector<int>& from, const std::vector<int>& to) const;
  std::vector<RobberMove> robber_moves(const GameState& s) const;
  /// Non-empty reason when the move is illegal.
  std::string robber_move_error(const GameState& s, const RobberMove& m) const;
  std::string cop_move_error(const GameState& s, const std::vector<int>& to) const;

  /// Applies a move without checking legality.
  GameState after_cops(const GameState& s, std::vector<int> to) const;
  GameState after_robber(const GameState& s, const RobberMove& m) const;

 private:
  const PlanarGraph* graph_;
  RuleSet rules_;
  const Adjacency* cop_adj_;
  const Adjacency* robber_adj_;
  std::vector<std::vector<int>> cop_ball_;
  std::vector<std::vector<int>> robber_ball_;
  std::vector<std::vector<int>> capture_set_;
};

/// All successor states (deduplicated). Placement turns enumerate every
/// multiset / every vertex, so use with care on large arenas.
std::vector<GameState> legal_moves(const Board& board, const GameState& s);
bool is_captured(const Board& board, const GameState& s);

class CopStrategy {
 public:
  virtual ~CopStrategy() = default;
  virtual std::string name() const = 0;
  virtual std::vector<int> place(const Board& board, int cop_count) = 0;
  virtual std::vector<int> move(const Board& board, const GameState& s) = 0;
  /// Copy including private memory; null when the strategy cannot be copied.
  virtual std::unique_ptr<CopStrategy> clone() const { return nullptr; }
};

class RobberStrategy {
 public:
  virtual ~RobberStrategy() = default;
  virtual std::string name() const = 0;
  virtual RobberMove place(const Board& board, const GameState& s) = 0;
  virtual RobberMove move(const Board& board, const GameState& s) = 0;
};

enum class Outcome { cops_win, robber_survives };

struct TranscriptEntry {
  std::string actor;  // "cops" or "robber"
  std::vector<int> cop_move;
  RobberMove robber_move;
  GameState state;  // after the move
};

struct Transcript {
  std::string rules;
  std::string cop_strategy;
  std::string robber_strategy;
  GameState start;
  std::vector<TranscriptEntry> entries;
  Outcome outcome = Outcome::robber_survives;
  /// capture | repetition | turn-budget | illegal-cop-move | illegal-robber-move
  std::string reason;
  /// Plies after placement when the game ended.
  int turns = 0;
  std::string detail;

  const GameState& final_state() const { return entries.empty() ? start : entries.back().state; }
  /// One JSON object per line: a header, one record per move, the outcome.
  std::string to_jsonl() const;
};

nlohmann::json state_to_json(const GameState& s);
GameState state_from_json(const nlohmann::json& j);

struct MatchOptions {
  /// Moves after both placements.
  int turn_budget = 1000;
  bool detect_repetition = true;
};

/// Optional hook called after every entry; may throw to abort a match.
using MatchObserver = std::function<void(const Board&, const Transcript&)>;

/// A match advanced one move at a time; run_match and the play service both
/// drive one of these, so they share every transition.
class Match {
 public:
  Match(const Board& board, int cop_count, std::string cop_strategy, std::string robber_strategy,
        MatchOptions options = {});

  const Board& board() const { return *board_; }
  const GameState& state() const { return state_; }
  const Transcript& transcript() const { return t_; }
  bool over() const { return over_; }
  bool cops_to_move() const { return state_.turn == Turn::cop_placement || state_.turn == Turn::cop_move; }

  /// Empty on success; otherwise the reason, and nothing changes. Also
  /// refuses moves once the match is over.
  std::string play_cops(const std::vector<int>& to);
  std::string play_robber(const RobberMove& m);
  /// Ends the match against the side to move (an agent produced `error`).
  void forfeit(const std::string& error);

  void set_observer(MatchObserver observer) { observer_ = std::move(observer); }

 private:
  void after_move();
  void finish(Outcome o, std::string reason, std::string detail = "");

  const Board* board_;
  MatchOptions options_;
  Transcript t_;
  GameState state_;
  bool over_ = false;
  std::set<std::vector<int>> seen_;
  MatchObserver observer_;
};

Transcript run_match(const Board& board, int cop_count, CopStrategy& cops, RobberStrategy& robber,
                     const MatchOptions& options = {}, const MatchObserver& observer = {});

/// Inverse of Transcript::to_jsonl. Throws std::runtime_error on bad input.
Transcript transcript_from_jsonl(const std::string& text);

/// Re-applies every move with full legality checks; returns the final state.
/// Throws std::runtime_error if any recorded state does not match.
GameState replay(const Board& board, const Transcript& t);

}  // namespace pdcr
