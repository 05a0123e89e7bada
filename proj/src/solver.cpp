#include "pdcr/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace pdcr {

long long SolverOptions::default_state_budget() {
  if (const char* env = std::getenv("PDCR_STATE_BUDGET")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 200'000'000;
}

MultisetIndex::MultisetIndex(int positions, int k) : n_(positions), k_(k) {
  if (positions < 1 || k < 1) throw std::invalid_argument("multiset index needs positions and k >= 1");
  const int top = n_ + k_;
  table_.assign(top + 1, std::vector<long long>(k_ + 2, 0));
  for (int a = 0; a <= top; ++a) {
    table_[a][0] = 1;
    for (int b = 1; b <= std::min(a, k_ + 1); ++b) {
      const long long x = table_[a - 1][b - 1], y = table_[a - 1][b];
      table_[a][b] = (x > std::numeric_limits<long long>::max() / 2 || y > std::numeric_limits<long long>::max() / 2)
                         ? std::numeric_limits<long long>::max() / 2
                         : x + y;
    }
  }
  count_ = binom(n_ + k_ - 1, k_);
}

long long MultisetIndex::binom(int n, int r) const {
  if (r < 0 || n < r) return 0;
  return table_[n][r];
}

long long MultisetIndex::rank(const std::vector<int>& sorted) const {
  long long r = 0;
  for (int i = 0; i < k_; ++i) r += binom(sorted[i] + i, i + 1);
  return r;
}

std::vector<int> MultisetIndex::unrank(long long r) const {
  std::vector<int> out(k_);
  int d = n_ + k_ - 2;
  for (int i = k_ - 1; i >= 0; --i) {
    while (binom(d, i + 1) > r) --d;
    r -= binom(d, i + 1);
    out[i] = d - i;
    --d;
  }
  return out;
}

SolveResult::SolveResult(const Board& board, int k)
    : board_(board), k_(k), index_(board.cop_positions(), k) {
  const int nr = board.robber_positions();
  slot_base_.resize(nr);
  for (int v = 0; v < nr; ++v) {
    slot_base_[v] = slot_count_;
    slot_vertex_.push_back(v);
    slot_announce_.push_back(-1);
    ++slot_count_;
    if (board.announces_at(v)) {
      auto nb = board.graph().neighbors(v);
      std::sort(nb.begin(), nb.end());
      for (int a : nb) {
        slot_vertex_.push_back(v);
        slot_announce_.push_back(a);
        ++slot_count_;
      }
    }
  }
  slot_next_.resize(slot_count_);
  for (long long s = 0; s < slot_count_; ++s) {
    GameState g;
    g.robber = slot_vertex_[s];
    g.announced = slot_announce_[s];
    g.turn = Turn::robber_move;
    for (const RobberMove& m : board.robber_moves(g)) slot_next_[s].push_back(slot_of(m.vertex, m.announce));
    std::sort(slot_next_[s].begin(), slot_next_[s].end());
    slot_next_[s].erase(std::unique(slot_next_[s].begin(), slot_next_[s].end()), slot_next_[s].end());
  }
  if (board.cop_positions() <= 4000) cop_dist_ = all_pairs_distances(board.cop_arena());
}

long long SolveResult::slot_of(int vertex, int announced) const {
  const long long base = slot_base_.at(vertex);
  if (announced < 0) return base;
  long long s = base + 1;
  while (s < slot_count_ && slot_vertex_[s] == vertex) {
    if (slot_announce_[s] == announced) return s;
    ++s;
  }
  throw std::invalid_argument("announcement is not a neighbor of the robber");
}

std::vector<long long> SolveResult::cop_successors(long long multiset) const {
  const std::vector<int> cops = index_.unrank(multiset);
  std::vector<long long> out;
  std::vector<std::size_t> idx(k_, 0);
  std::vector<int> pick(k_);
  while (true) {
    for (int i = 0; i < k_; ++i) pick[i] = board_.cop_ball(cops[i])[idx[i]];
    std::vector<int> sorted = pick;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(index_.rank(sorted));
    int i = k_ - 1;
    while (i >= 0 && ++idx[i] == board_.cop_ball(cops[i]).size()) idx[i--] = 0;
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SolveResult solve(const Board& board, int k, const SolverOptions& options) {
  // Size check before any allocation.
  MultisetIndex probe(board.cop_positions(), k);
  SolveResult r(board, k);
  const long double total = static_cast<long double>(probe.count()) * r.slot_count_ * 2;
  if (total > static_cast<long double>(options.state_budget) || total >= 4.0e9L)
    throw BudgetExceeded("state space of " + std::to_string(static_cast<long long>(total)) +
                             " states exceeds the budget of " + std::to_string(options.state_budget),
                         static_cast<long long>(total));
  const long long M = probe.count(), S = r.slot_count_;
  r.dtc_.assign(static_cast<std::size_t>(M * S * 2), -1);

  std::vector<std::vector<long long>> slot_prev(S);
  for (long long s = 0; s < S; ++s)
    for (long long t : r.slot_next_[s]) slot_prev[t].push_back(s);

  for (const auto& next : r.slot_next_)
    if (next.size() > 65535) throw std::invalid_argument("robber has too many moves for the solver counters");
  std::vector<std::uint16_t> remaining(static_cast<std::size_t>(M * S));
  std::vector<std::uint32_t> queue;
  for (long long m = 0; m < M; ++m) {
    const auto cops = r.index_.unrank(m);
    for (long long s = 0; s < S; ++s) {
      remaining[m * S + s] = static_cast<std::uint16_t>(r.slot_next_[s].size());
      if (board.captured(cops, r.slot_vertex_[s])) {
        const long long id = r.state_id(m, s, 1);
        r.dtc_[id] = 0;
        queue.push_back(static_cast<std::uint32_t>(id));
      }
    }
  }

  // Successor lists are cached while they fit; combinations are counted
  // against the work budget each time they are enumerated.
  std::vector<std::vector<long long>> cache(static_cast<std::size_t>(M));
  std::vector<char> cached(static_cast<std::size_t>(M), 0);
  long long cache_entries = 0, work = 0;
  constexpr long long kCacheLimit = 40'000'000;
  std::vector<long long> scratch;
  auto successors = [&](long long m) -> const std::vector<long long>& {
    if (cached[m]) return cache[m];
    long long combos = 1;
    for (int c : r.index_.unrank(m)) combos *= static_cast<long long>(board.cop_ball(c).size());
    work += combos;
    if (options.work_budget > 0 && work > options.work_budget)
      throw BudgetExceeded("cop move enumeration exceeded the work budget of " + std::to_string(options.work_budget),
                           work);
    scratch = r.cop_successors(m);
    if (cache_entries + static_cast<long long>(scratch.size()) > kCacheLimit) return scratch;
    cache_entries += static_cast<long long>(scratch.size());
    cached[m] = 1;
    cache[m] = std::move(scratch);
    return cache[m];
  };

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const long long id = queue[head];
    const int d = r.dtc_[id];
    const long long ms = id >> 1;
    const long long m = ms / S, s = ms % S;
    if (id & 1) {
      // Robber to move and lost: every cop position one move away wins.
      for (long long m0 : successors(m)) {
        const long long cid = r.state_id(m0, s, 0);
        if (r.dtc_[cid] < 0) {
          r.dtc_[cid] = d + 1;
          queue.push_back(static_cast<std::uint32_t>(cid));
        }
      }
    } else {
      for (long long s0 : slot_prev[s]) {
        const long long rid = r.state_id(m, s0, 1);
        if (r.dtc_[rid] >= 0) continue;
        if (--remaining[m * S + s0] == 0) {
          r.dtc_[rid] = d + 1;
          queue.push_back(static_cast<std::uint32_t>(rid));
        }
      }
    }
  }
  r.finish_placement();
  return r;
}

void SolveResult::finish_placement() {
  placement_.clear();
  placement_distance_ = -1;
  const long long M = index_.count();
  int best = std::numeric_limits<int>::max();
  for (long long m = 0; m < M; ++m) {
    const auto cops = index_.unrank(m);
    int worst = 0;
    bool ok = true;
    for (int v = 0; v < board_.robber_positions() && ok; ++v) {
      if (board_.captured(cops, v)) continue;
      const int c = dtc_[state_id(m, slot_of(v, -1), 0)];
      if (c < 0)
        ok = false;
      else
        worst = std::max(worst, c);
    }
    if (ok && worst < best) {
      best = worst;
      placement_ = cops;
    }
  }
  if (!placement_.empty()) placement_distance_ = best;
}

int SolveResult::distance(const GameState& s) const {
  switch (s.turn) {
    case Turn::cop_placement:
      return placement_distance_;
    case Turn::robber_placement: {
      const long long m = index_.rank(s.cops);
      int worst = 0;
      for (int v = 0; v < board_.robber_positions(); ++v) {
        if (board_.captured(s.cops, v)) continue;
        const int c = dtc_[state_id(m, slot_of(v, -1), 0)];
        if (c < 0) return -1;
        worst = std::max(worst, c);
      }
      return worst;
    }
    case Turn::cop_move:
      return dtc_[state_id(index_.rank(s.cops), slot_of(s.robber, s.announced), 0)];
    case Turn::robber_move:
      return dtc_[state_id(index_.rank(s.cops), slot_of(s.robber, s.announced), 1)];
  }
  return -1;
}

std::vector<int> SolveResult::best_cop_move(const GameState& s) const {
  if (s.turn == Turn::cop_placement) {
    if (cops_win()) return placement_;
    // Losing side: cover as many robber placements as possible.
    std::vector<int> best;
    int best_count = -1;
    for (long long m = 0; m < index_.count(); ++m) {
      const auto cops = index_.unrank(m);
      int covered = 0;
      for (int v = 0; v < board_.robber_positions(); ++v)
        covered += board_.captured(cops, v) || dtc_[state_id(m, slot_of(v, -1), 0)] >= 0;
      if (covered > best_count) {
        best_count = covered;
        best = cops;
      }
    }
    return best;
  }
  if (s.turn != Turn::cop_move) throw std::invalid_argument("not the cops' turn");
  const long long m = index_.rank(s.cops);
  const long long slot = slot_of(s.robber, s.announced);
  const int here = dtc_[state_id(m, slot, 0)];
  const auto succ = cop_successors(m);
  if (here >= 0) {
    for (long long m1 : succ)
      if (dtc_[state_id(m1, slot, 1)] == here - 1) return index_.unrank(m1);
    throw std::logic_error("solver table inconsistent: no optimal cop move");
  }
  // Robber escapes anyway: close in on the faces (or vertex) that capture him.
  if (cop_dist_.empty()) return s.cops;
  const auto& target = board_.capture_set(s.robber);
  long long best = m;
  long long best_score = std::numeric_limits<long long>::max();
  for (long long m1 : succ) {
    long long score = 0;
    for (int c : index_.unrank(m1)) {
      int near = kInfinity;
      for (int t : target) near = std::min(near, cop_dist_[c][t]);
      score += near == kInfinity ? 1'000'000 : near;
    }
    if (score < best_score) {
      best_score = score;
      best = m1;
    }
  }
  return index_.unrank(best);
}

RobberMove SolveResult::best_robber_move(const GameState& s) const {
  const long long m = index_.rank(s.cops);
  std::vector<RobberMove> moves = board_.robber_moves(s);
  if (moves.empty()) throw std::invalid_argument("not the robber's turn");
  // Value of a robber choice: -1 escapes, else plies to capture.
  auto value = [&](const RobberMove& mv) {
    if (board_.captured(s.cops, mv.vertex)) return 0;
    return static_cast<int>(dtc_[state_id(m, slot_of(mv.vertex, mv.announce), 0)]);
  };
  const RobberMove* best = nullptr;
  int best_value = -2;
  for (const RobberMove& mv : moves) {
    const int v = value(mv);
    if (v < 0) {
      if (s.turn == Turn::robber_move && mv.vertex == s.robber) return mv;
      if (best_value != -1) {
        best = &mv;
        best_value = -1;
      }
    } else if (best_value != -1 && v > best_value) {
      best = &mv;
      best_value = v;
    }
  }
  return *best;
}

long long SolveResult::audit() const {
  long long bad = 0;
  const long long M = index_.count(), S = slot_count_;
  for (long long m = 0; m < M; ++m) {
    const auto cops = index_.unrank(m);
    const auto succ = cop_successors(m);
    for (long long s = 0; s < S; ++s) {
      // Robber to move.
      int expect;
      if (board_.captured(cops, slot_vertex_[s])) {
        expect = 0;
      } else {
        int worst = 0;
        bool all = true;
        for (long long t : slot_next_[s]) {
          const int c = dtc_[state_id(m, t, 0)];
          if (c < 0) all = false;
          worst = std::max(worst, c);
        }
        expect = all ? worst + 1 : -1;
      }
      bad += expect != dtc_[state_id(m, s, 1)];
      // Cops to move.
      int bestc = -1;
      for (long long m1 : succ) {
        const int c = dtc_[state_id(m1, s, 1)];
        if (c >= 0 && (bestc < 0 || c < bestc)) bestc = c;
      }
      bad += (bestc < 0 ? -1 : bestc + 1) != dtc_[state_id(m, s, 0)];
    }
  }
  return bad;
}

namespace {

constexpr char kMagic[8] = {'P', 'D', 'C', 'R', 'S', 'O', 'L', 'V'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("truncated solver table");
  return v;
}

}  // namespace

void SolveResult::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(kMagic, sizeof kMagic);
  put(out, kVersion);
  put<std::int32_t>(out, k_);
  put<std::int32_t>(out, board_.cop_positions());
  put<std::int32_t>(out, board_.robber_positions());
  put<std::int64_t>(out, slot_count_);
  const std::string& rules = board_.rules().name;
  put<std::uint32_t>(out, static_cast<std::uint32_t>(rules.size()));
  out.write(rules.data(), static_cast<std::streamsize>(rules.size()));
  put<std::int32_t>(out, placement_distance_);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(placement_.size()));
  for (int p : placement_) put<std::int32_t>(out, p);
  put<std::int64_t>(out, static_cast<std::int64_t>(dtc_.size()));
  out.write(reinterpret_cast<const char*>(dtc_.data()), static_cast<std::streamsize>(dtc_.size() * sizeof(std::int32_t)));
}

SolveResult SolveResult::load(const Board& board, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || !std::equal(magic, magic + 8, kMagic)) throw std::runtime_error("not a solver table");
  if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported solver table version");
  const int k = get<std::int32_t>(in);
  SolveResult r(board, k);
  if (get<std::int32_t>(in) != board.cop_positions() || get<std::int32_t>(in) != board.robber_positions() ||
      get<std::int64_t>(in) != r.slot_count_)
    throw std::runtime_error("solver table does not match the board");
  std::string rules(get<std::uint32_t>(in), '\0');
  in.read(rules.data(), static_cast<std::streamsize>(rules.size()));
  if (rules != board.rules().name) throw std::runtime_error("solver table was built for rules '" + rules + "'");
  r.placement_distance_ = get<std::int32_t>(in);
  r.placement_.resize(get<std::uint32_t>(in));
  for (int& p : r.placement_) p = get<std::int32_t>(in);
  r.dtc_.resize(static_cast<std::size_t>(get<std::int64_t>(in)));
  if (static_cast<long long>(r.dtc_.size()) != r.index_.count() * r.slot_count_ * 2)
    throw std::runtime_error("solver table size mismatch");
  in.read(reinterpret_cast<char*>(r.dtc_.data()), static_cast<std::streamsize>(r.dtc_.size() * sizeof(std::int32_t)));
  if (!in) throw std::runtime_error("truncated solver table");
  return r;
}

std::optional<int> cop_number(const Board& board, int k_max, const SolverOptions& options) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  for (int k = 1; k <= k_max; ++k)
    if (solve(board, k, options).cops_win()) return k;
  return std::nullopt;
}

SolveResult classical_dual_solver(const PlanarGraph& g, int k, const SolverOptions& options) {
  return solve(Board(g, rules_preset("dual-classical")), k, options);
}

std::vector<int> TableCops::place(const Board&, int) { return table_->best_cop_move(GameState::initial(table_->cop_count())); }

std::vector<int> TableCops::move(const Board&, const GameState& s) { return table_->best_cop_move(s); }

RobberMove TableRobber::place(const Board&, const GameState& s) { return table_->best_robber_move(s); }

RobberMove TableRobber::move(const Board&, const GameState& s) { return table_->best_robber_move(s); }

}  // namespace pdcr
