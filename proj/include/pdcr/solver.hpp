// solver.hpp
//
// Retrograde analysis of a Board with k cops. States are (cop multiset,
// robber slot, side to move); a robber slot is a robber position together
// with a pending announcement. Every state gets a distance-to-capture in
// plies, or -1 when the robber escapes forever.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdcr/game.hpp"

namespace pdcr {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, long long count) : std::runtime_error(what), count_(count) {}
  long long count() const { return count_; }

 private:
  long long count_;
};

struct SolverOptions {
  /// Maximum number of encoded states; PDCR_STATE_BUDGET overrides the default.
  long long state_budget = default_state_budget();
  /// Maximum number of cop-move combinations enumerated (0: unlimited).
  long long work_budget = 0;
  static long long default_state_budget();
};

/// Sorted multisets of size k over n positions, ranked in colex order.
class MultisetIndex {
 public:
  MultisetIndex(int positions, int k);
  long long count() const { return count_; }
  long long rank(const std::vector<int>& sorted) const;
  std::vector<int> unrank(long long r) const;

 private:
  long long binom(int n, int r) const;
  int n_;
  int k_;
  long long count_;
  std::vector<std::vector<long long>> table_;
};

class SolveResult {
 public:
  const Board& board() const { return board_; }
  int cop_count() const { return k_; }
  long long state_count() const { return static_cast<long long>(dtc_.size()); }

  /// Whether some placement wins for the cops.
  bool cops_win() const { return !placement_.empty(); }
  /// A placement minimizing the worst-case distance to capture; empty if none.
  const std::vector<int>& winning_placement() const { return placement_; }
  int placement_distance() const { return placement_distance_; }

  /// Plies until capture under optimal play, -1 if the robber escapes.
  /// Robber-placement states are scored as the worst robber placement.
  int distance(const GameState& s) const;
  bool cop_win(const GameState& s) const { return distance(s) >= 0; }

  std::vector<int> best_cop_move(const GameState& s) const;
  RobberMove best_robber_move(const GameState& s) const;

  /// Binary table dump, versioned; load() checks it matches the board.
  void save(const std::string& path) const;
  static SolveResult load(const Board& board, const std::string& path);

  /// Re-evaluates the recurrence on every state; returns the number of
  /// states whose stored value disagrees.
  long long audit() const;

 private:
  friend SolveResult solve(const Board& board, int k, const SolverOptions& options);
  SolveResult(const Board& board, int k);
  void finish_placement();

  long long slot_of(int vertex, int announced) const;
  long long state_id(long long multiset, long long slot, int robber_to_move) const {
    return (multiset * slot_count_ + slot) * 2 + robber_to_move;
  }
  std::vector<long long> cop_successors(long long multiset) const;

  Board board_;
  int k_;
  MultisetIndex index_;
  long long slot_count_ = 0;
  std::vector<int> slot_vertex_;
  std::vector<int> slot_announce_;
  std::vector<long long> slot_base_;  // first slot of each vertex
  std::vector<std::vector<long long>> slot_next_;
  std::vector<std::int32_t> dtc_;
  std::vector<int> placement_;
  int placement_distance_ = -1;
  std::vector<std::vector<int>> cop_dist_;
};

/// Throws BudgetExceeded when the state space or work budget is exceeded.
SolveResult solve(const Board& board, int k, const SolverOptions& options = {});

/// Least k <= k_max with a cops-win, or nullopt.
std::optional<int> cop_number(const Board& board, int k_max, const SolverOptions& options = {});

/// The classical game (same-vertex capture, cops and robber on faces) on the
/// dual of g. The result keeps a pointer to g.
SolveResult classical_dual_solver(const PlanarGraph& g, int k, const SolverOptions& options = {});

class TableCops : public CopStrategy {
 public:
  explicit TableCops(std::shared_ptr<const SolveResult> table) : table_(std::move(table)) {}
  std::string name() const override { return "solver"; }
  std::vector<int> place(const Board& board, int cop_count) override;
  std::vector<int> move(const Board& board, const GameState& s) override;

 private:
  std::shared_ptr<const SolveResult> table_;
};

class TableRobber : public RobberStrategy {
 public:
  explicit TableRobber(std::shared_ptr<const SolveResult> table) : table_(std::move(table)) {}
  std::string name() const override { return "solver"; }
  RobberMove place(const Board& board, const GameState& s) override;
  RobberMove move(const Board& board, const GameState& s) override;

 private:
  std::shared_ptr<const SolveResult> table_;
};

}  // namespace pdcr
