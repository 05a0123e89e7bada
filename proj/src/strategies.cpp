#include "pdcr/strategies.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

#include "pdcr/generators.hpp"

namespace pdcr {

namespace {

int ball_step(const Adjacency& adj, const std::vector<std::vector<int>>& dist, int from, int to) {
  int best = from;
  for (int n : adj[from])
    if (dist[n][to] < dist[best][to] || (dist[n][to] == dist[best][to] && n < best)) best = n;
  return best;
}

FaceId angle_face(const PlanarGraph& g, DartId d) { return d < 0 ? 0 : g.face_of(d); }

DartId dart_to(const PlanarGraph& g, VertexId u, VertexId v) {
  for (DartId d : g.darts_at(u))
    if (g.head(d) == v) return d;
  return -1;
}

int index_in(const std::vector<DartId>& v, DartId d) {
  return static_cast<int>(std::find(v.begin(), v.end(), d) - v.begin());
}

void check_synced(const std::vector<int>& pos, const GameState& s) {
  std::vector<int> sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != s.cops) throw StrategyError("cop memory does not match the game state");
}

void check_surround_board(const Board& board) {
  const RuleSet& r = board.rules();
  if (r.capture != CaptureKind::surround || r.cop_speed != 1 || r.robber_speed != 1)
    throw StrategyError("strategy needs surround capture with unit velocities");
}

// Multi-source BFS over a cop arena.
std::vector<int> arena_distances(const Board& board, const std::vector<int>& sources) {
  return bfs_distances(board.cop_arena(), sources);
}

// Greedy assignment of cops to distinct targets by increasing distance;
// surplus cops take their nearest target. Returns the target per cop.
std::vector<int> greedy_targets(const std::vector<int>& cops, const std::vector<int>& targets,
                                const std::vector<std::vector<int>>& dist_from_target) {
  const int k = static_cast<int>(cops.size()), t = static_cast<int>(targets.size());
  std::vector<std::tuple<int, int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < t; ++j) pairs.emplace_back(dist_from_target[j][cops[i]], i, j);
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> out(k, -1);
  std::vector<bool> used(t, false);
  for (auto [d, i, j] : pairs)
    if (out[i] < 0 && !used[j]) {
      out[i] = j;
      used[j] = true;
    }
  for (int i = 0; i < k; ++i)
    if (out[i] < 0)
      for (auto [d, ii, j] : pairs)
        if (ii == i) {
          out[i] = j;
          break;
        }
  return out;
}

int greedy_step(const Board& board, int from, const std::vector<int>& dist) {
  int best = from;
  for (int n : board.cop_ball(from))
    if (dist[n] < dist[best] || (dist[n] == dist[best] && n < best)) best = n;
  return best;
}

std::vector<int> greedy_moves(const Board& board, const GameState& s, const std::vector<int>& cops) {
  const auto& target = board.capture_set(s.robber);
  std::vector<std::vector<int>> dist;
  for (int f : target) dist.push_back(arena_distances(board, {f}));
  const auto which = greedy_targets(cops, target, dist);
  std::vector<int> out(cops.size());
  for (std::size_t i = 0; i < cops.size(); ++i) out[i] = greedy_step(board, cops[i], dist[which[i]]);
  return out;
}

}  // namespace

VertexId effective_vertex(const PlanarGraph& g, VertexId v) {
  if (g.degree(v) == 1) {
    const VertexId w = g.head(g.darts_at(v)[0]);
    if (g.degree(w) > 1) return w;
  }
  return v;
}

bool has_perfect_matching(const std::vector<int>& a, const std::vector<int>& b,
                          const std::function<bool(int, int)>& allowed) {
  if (a.size() != b.size()) return false;
  const int n = static_cast<int>(a.size());
  std::vector<int> owner(n, -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int i, std::vector<bool>& seen) {
    for (int j = 0; j < n; ++j) {
      if (seen[j] || !allowed(a[i], b[j])) continue;
      seen[j] = true;
      if (owner[j] < 0 || augment(owner[j], seen)) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return false;
  }
  return true;
}

std::vector<int> match_moves(const Board& board, const std::vector<int>& from, const std::vector<int>& to) {
  const int n = static_cast<int>(from.size());
  if (static_cast<int>(to.size()) != n) throw StrategyError("move multiset has the wrong size");
  std::vector<int> owner(n, -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int i, std::vector<bool>& seen) {
    // Prefer staying put, then any reachable slot.
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < n; ++j) {
        if (seen[j] || !board.cop_reaches(from[i], to[j])) continue;
        if (pass == 0 && to[j] != from[i]) continue;
        seen[j] = true;
        if (owner[j] < 0 || augment(owner[j], seen)) {
          owner[j] = i;
          return true;
        }
      }
    return false;
  };
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) throw StrategyError("no cop assignment realizes the move");
  }
  std::vector<int> out(n);
  for (int j = 0; j < n; ++j) out[owner[j]] = to[j];
  return out;
}

// --- Delta3Cops ---------------------------------------------------------------

Delta3Cops::Delta3Cops(const PlanarGraph& g) : g_(&g) {
  if (g.max_degree() > 1)
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.degree(v) != 1 && g.degree(v) != 3)
        throw StrategyError("delta3 needs every degree in {1, 3}; normalize the graph first");
  dual_dist_ = all_pairs_distances(g.dual_adjacency());
}

int Delta3Cops::step_toward(const Board&, FaceId from, FaceId to) const {
  return ball_step(g_->dual_adjacency(), dual_dist_, from, to);
}

int Delta3Cops::potential(const std::vector<DartId>& targets) const {
  int p = 0;
  for (std::size_t i = 0; i < pos_.size(); ++i) p += dist(pos_[i], angle_face(*g_, targets[i]));
  return p;
}

int Delta3Cops::turn_bound() const { return potentials_.empty() ? 0 : 2 * potentials_.front() + 2; }

std::vector<int> Delta3Cops::place(const Board& board, int cop_count) {
  if (cop_count != 3) throw StrategyError("delta3 plays with exactly three cops");
  check_surround_board(board);
  const int nf = g_->face_count();
  int center = 0, best = kInfinity;
  for (int f = 0; f < nf; ++f) {
    const int ecc = *std::max_element(dual_dist_[f].begin(), dual_dist_[f].end());
    if (ecc < best) {
      best = ecc;
      center = f;
    }
  }
  pos_.assign(3, center);
  target_.clear();
  at_ = -1;
  pending_.reset();
  potentials_.clear();
  stalls_ = 0;
  return pos_;
}

void Delta3Cops::assign_at(VertexId v, const std::vector<int>& who) {
  std::vector<DartId> angles(g_->darts_at(v).begin(), g_->darts_at(v).end());
  if (angles.empty()) angles.push_back(-1);
  std::vector<DartId> slots;
  for (std::size_t i = 0; slots.size() < who.size(); ++i) slots.push_back(angles[i % angles.size()]);
  std::sort(slots.begin(), slots.end());
  std::vector<DartId> best_slots;
  int best = kInfinity;
  do {
    int cost = 0;
    for (std::size_t i = 0; i < who.size(); ++i) cost += dist(pos_[who[i]], angle_face(*g_, slots[i]));
    if (cost < best) {
      best = cost;
      best_slots = slots;
    }
  } while (std::next_permutation(slots.begin(), slots.end()));
  for (std::size_t i = 0; i < who.size(); ++i) target_[who[i]] = best_slots[i];
}

void Delta3Cops::retarget(VertexId u, VertexId v) {
  const PlanarGraph& g = *g_;
  const DartId d = dart_to(g, u, v);
  if (d < 0) throw StrategyError("robber jumped between non-adjacent vertices");
  if (g.degree(u) != 3 || g.degree(v) != 3) {
    assign_at(v, {0, 1, 2});
    return;
  }
  // Angles at u: d (face X), next(d) (face Y), next(next(d)) (the far face).
  // Angles at v: e (face Y), next(e) (face X), next(next(e)) (the far face).
  const DartId e = g.twin(d);
  const DartId at_x = g.next(e), at_y = e, at_far = g.next(g.next(e));
  int cx = -1, cy = -1, ca = -1;
  for (int i = 0; i < 3; ++i) {
    if (target_[i] == d) cx = i;
    else if (target_[i] == g.next(d)) cy = i;
    else if (target_[i] == g.next(g.next(d))) ca = i;
  }
  if (cx < 0 || cy < 0 || ca < 0) throw StrategyError("targets are not the angles at the robber's vertex");
  auto arrived = [&](int i) { return pos_[i] == angle_face(g, target_[i]); };
  auto keep_x = [&] {
    std::vector<DartId> t(3);
    t[cx] = at_x;
    t[ca] = at_y;
    t[cy] = at_far;
    return t;
  };
  auto keep_y = [&] {
    std::vector<DartId> t(3);
    t[cy] = at_y;
    t[ca] = at_x;
    t[cx] = at_far;
    return t;
  };
  if (!arrived(cx)) {
    target_ = keep_x();
  } else if (!arrived(cy)) {
    target_ = keep_y();
  } else {
    auto after_move = [&](const std::vector<DartId>& t) {
      int p = 0;
      for (int i = 0; i < 3; ++i) p += std::max(0, dist(pos_[i], angle_face(g, t[i])) - 1);
      return p;
    };
    const int now = potential(target_);
    const auto tx = keep_x(), ty = keep_y();
    const int px = after_move(tx), py = after_move(ty);
    if (std::min(px, py) < now) {
      target_ = px <= py ? tx : ty;
    } else {
      // Stall: c1 keeps heading for the far face at u, the two arrived cops
      // step into the far face at v.
      target_[cx] = at_far;
      target_[cy] = at_far;
      pending_ = Pending{u, v, ca, g.face_of(d), g.face_of(g.next(d))};
      ++stalls_;
    }
  }
}

void Delta3Cops::resolve_stall(VertexId r) {
  const PlanarGraph& g = *g_;
  const Pending p = *pending_;
  pending_.reset();
  const DartId d = dart_to(g, p.u, p.v);
  const DartId e = g.twin(d);
  std::vector<int> others;
  for (int i = 0; i < 3; ++i)
    if (i != p.c1) others.push_back(i);
  // Try every way to give c1 one of `first` and the others the rest.
  auto choose = [&](const std::vector<DartId>& first, const std::vector<DartId>& rest_pool) {
    int best = kInfinity;
    std::vector<DartId> best_t;
    for (DartId c1t : first) {
      std::vector<DartId> rest;
      for (DartId x : rest_pool)
        if (x != c1t) rest.push_back(x);
      rest.resize(2, rest.empty() ? c1t : rest.back());
      for (int flip = 0; flip < 2; ++flip) {
        std::vector<DartId> t(3);
        t[p.c1] = c1t;
        t[others[0]] = rest[flip];
        t[others[1]] = rest[1 - flip];
        int cost = 0;
        for (int i = 0; i < 3; ++i) cost += std::max(0, dist(pos_[i], angle_face(g, t[i])) - 1);
        if (cost < best) {
          best = cost;
          best_t = t;
        }
      }
    }
    target_ = best_t;
  };
  if (r == p.v) {
    choose({g.next(e), e}, {g.next(e), e, g.next(g.next(e))});
  } else if (r == p.u) {
    choose({g.next(g.next(d))}, {d, g.next(d)});
  } else {
    const DartId h = dart_to(g, r, p.v);
    if (h < 0) throw StrategyError("robber left the stall position illegally");
    const DartId gv = g.twin(h);
    if (g.degree(r) != 3) {
      assign_at(r, {0, 1, 2});
    } else if (gv == g.next(e)) {
      choose({g.next(h)}, {h, g.next(g.next(h))});
    } else {
      choose({h}, {g.next(h), g.next(g.next(h))});
    }
  }
}

std::vector<int> Delta3Cops::move(const Board& board, const GameState& s) {
  check_synced(pos_, s);
  const VertexId r = effective_vertex(*g_, s.robber);
  if (target_.empty()) {
    target_.assign(3, -1);
    assign_at(r, {0, 1, 2});
  } else if (pending_) {
    resolve_stall(r);
  } else if (r != at_) {
    retarget(at_, r);
  }
  at_ = r;
  for (int i = 0; i < 3; ++i) pos_[i] = step_toward(board, pos_[i], angle_face(*g_, target_[i]));
  potentials_.push_back(potential(target_));
  return pos_;
}

std::string check_potential_sequence(const std::vector<int>& p) {
  for (std::size_t t = 1; t < p.size(); ++t) {
    if (p[t] > p[t - 1])
      return "potential increased from " + std::to_string(p[t - 1]) + " to " + std::to_string(p[t]) + " at move " +
             std::to_string(t);
    if (t >= 2 && p[t] >= p[t - 2])
      return "potential did not drop over two moves ending at move " + std::to_string(t);
  }
  return "";
}

// --- Delta4Cops ---------------------------------------------------------------

Delta4Cops::Delta4Cops(const PlanarGraph& g, std::shared_ptr<const SolveResult> dual_table) : g_(&g) {
  if (g.max_degree() > 1)
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.degree(v) != 1 && g.degree(v) != 4)
        throw StrategyError("delta4 needs every degree in {1, 4}; normalize the graph first");
  table_ = dual_table ? std::move(dual_table) : std::make_shared<SolveResult>(classical_dual_solver(g, 3));
  if (table_->cop_count() != 3 || !table_->cops_win()) throw StrategyError("need a winning three-cop dual table");
  dual_dist_ = all_pairs_distances(g.dual_adjacency());
}

int Delta4Cops::step_toward(FaceId from, FaceId to) const { return ball_step(g_->dual_adjacency(), dual_dist_, from, to); }

std::vector<FaceId> Delta4Cops::track_faces() const {
  std::vector<FaceId> out;
  for (DartId d : track_) out.push_back(angle_face(*g_, d));
  return out;
}

std::vector<int> Delta4Cops::place(const Board& board, int cop_count) {
  if (cop_count != 6) throw StrategyError("delta4 plays with exactly six cops");
  check_surround_board(board);
  const auto& x0 = table_->winning_placement();
  pos_ = {x0[0], x0[1], x0[2], x0[0], x0[0], x0[0]};
  hunters_ = {0, 1, 2};
  reserve_ = {3, 4, 5};
  escort_.assign(4, -1);
  catch_time_.assign(4, -1);
  track_.clear();
  at_ = -1;
  phase_ = 0;
  moves_ = 0;
  return pos_;
}

void Delta4Cops::advance_tracks(VertexId u, VertexId v) {
  const PlanarGraph& g = *g_;
  const DartId d0 = dart_to(g, u, v);
  if (d0 < 0) throw StrategyError("robber jumped between non-adjacent vertices");
  const auto& at_u = g.darts_at(u);
  const auto& at_v = g.darts_at(v);
  if (at_u.size() != 4 || at_v.size() != 4) throw StrategyError("tracks need degree-4 vertices");
  const int i0 = index_in(at_u, d0), j0 = index_in(at_v, g.twin(d0));
  for (DartId& t : track_) {
    const FaceId before = angle_face(g, t);
    const int j = (index_in(at_u, t) - i0 + 4) % 4;
    t = at_v[(j0 + (j + 2) % 4) % 4];
    if (dual_dist_[before][angle_face(g, t)] > 1) throw StrategyError("track jumped more than one dual edge");
  }
}

void Delta4Cops::hunt(const Board&) {
  const Board& dual = table_->board();
  while (phase_ < 4) {
    const FaceId tf = angle_face(*g_, track_[phase_]);
    auto caught = [&] {
      for (std::size_t i = 0; i < hunters_.size(); ++i)
        if (pos_[hunters_[i]] == tf) {
          escort_[phase_] = hunters_[i];
          catch_time_[phase_] = moves_;
          hunters_.erase(hunters_.begin() + static_cast<long>(i));
          if (!reserve_.empty()) {
            hunters_.push_back(reserve_.front());
            reserve_.erase(reserve_.begin());
          }
          ++phase_;
          return true;
        }
      return false;
    };
    if (caught()) continue;
    std::vector<int> from;
    for (int h : hunters_) from.push_back(pos_[h]);
    std::vector<int> sorted = from;
    std::sort(sorted.begin(), sorted.end());
    const GameState st{sorted, tf, Turn::cop_move, -1};
    std::vector<int> to;
    if (hunters_.size() == 3 && table_->cop_win(st)) {
      to = match_moves(dual, from, table_->best_cop_move(st));
    } else {
      // Not (yet) in a winning position: walk to the winning placement.
      std::vector<int> goal = table_->winning_placement();
      goal.resize(hunters_.size(), goal.front());
      std::sort(goal.begin(), goal.end());
      std::vector<int> best_goal = goal;
      int best = kInfinity;
      do {
        int cost = 0;
        for (std::size_t i = 0; i < from.size(); ++i) cost += dual_dist_[from[i]][goal[i]];
        if (cost < best) {
          best = cost;
          best_goal = goal;
        }
      } while (std::next_permutation(goal.begin(), goal.end()));
      for (std::size_t i = 0; i < from.size(); ++i) to.push_back(step_toward(from[i], best_goal[i]));
    }
    for (std::size_t i = 0; i < hunters_.size(); ++i) pos_[hunters_[i]] = to[i];
    caught();
    break;
  }
}

void Delta4Cops::check_lockstep() const {
  for (int i = 0; i < 4; ++i)
    if (escort_[i] >= 0 && pos_[escort_[i]] != angle_face(*g_, track_[i]))
      throw StrategyError("escort left its track " + std::to_string(i));
}

std::vector<int> Delta4Cops::move(const Board& board, const GameState& s) {
  check_synced(pos_, s);
  ++moves_;
  const VertexId r = effective_vertex(*g_, s.robber);
  if (track_.empty()) {
    std::vector<DartId> angles(g_->darts_at(r).begin(), g_->darts_at(r).end());
    if (angles.empty()) angles.push_back(-1);
    for (int i = 0; i < 4; ++i) track_.push_back(angles[i % angles.size()]);
  } else if (r != at_) {
    advance_tracks(at_, r);
  }
  at_ = r;
  for (int i = 0; i < 4; ++i) {
    if (escort_[i] < 0) continue;
    const FaceId tf = angle_face(*g_, track_[i]);
    if (!board.cop_reaches(pos_[escort_[i]], tf)) throw StrategyError("escort cannot follow its track");
    pos_[escort_[i]] = tf;
  }
  hunt(board);
  check_lockstep();
  return pos_;
}

// --- D5Evader -----------------------------------------------------------------

D5Evader::D5Evader(const PlanarGraph& d5) : g_(&d5) {
  dist_ = all_pairs_distances(d5.adjacency());
  for (int v = 0; v < d5.vertex_count(); ++v)
    if (d5.degree(v) == 3) v3_.push_back(v);
  if (v3_.size() != 20) throw StrategyError("the D5 robber needs the subdivided dodecahedron");
}

namespace {
constexpr int kFallbackLookahead = 3;

int min_dist(const std::vector<std::vector<int>>& dist, VertexId v, const std::vector<VertexId>& cops) {
  int m = kInfinity;
  for (VertexId c : cops) m = std::min(m, dist[c][v]);
  return m;
}
}  // namespace

bool D5Evader::has_safe_start(const std::vector<VertexId>& cops) const {
  for (VertexId v : v3_)
    if (min_dist(dist_, v, cops) >= 4) return true;
  return false;
}

VertexId D5Evader::start_neighbor(VertexId v, const std::vector<VertexId>& cops) const {
  VertexId best = -1;
  int best_d = -1;
  for (VertexId n : g_->adjacency()[v]) {
    const int d = min_dist(dist_, n, cops);
    if (d > best_d || (d == best_d && n < best)) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

VertexId D5Evader::place(const std::vector<VertexId>& cops) {
  VertexId home = -1;
  int best = -1;
  for (VertexId v : v3_) {
    const int d = min_dist(dist_, v, cops);
    if (d >= 4 && d > best) {
      best = d;
      home = v;
    }
  }
  if (home < 0) throw StrategyError("no degree-3 vertex at distance >= 4 from every cop");
  home_ = home;
  path_.clear();
  relocation_turns_ = 0;
  return start_neighbor(home, cops);
}

std::vector<VertexId> D5Evader::path_to_neighbor_of(VertexId from, VertexId w) const {
  const auto& adj = g_->adjacency();
  VertexId goal = -1;
  for (VertexId n : adj[w])
    if (goal < 0 || dist_[from][n] < dist_[from][goal] || (dist_[from][n] == dist_[from][goal] && n < goal)) goal = n;
  std::vector<VertexId> path;
  VertexId at = from;
  while (at != goal) {
    VertexId next = -1;
    for (VertexId n : adj[at])
      if (dist_[n][goal] == dist_[at][goal] - 1 && (next < 0 || n < next)) next = n;
    path.push_back(next);
    at = next;
  }
  return path;
}

// Smallest cop distance the robber can guarantee over the next `rounds`
// rounds, standing at `robber` with the cops to move (capped at 6).
int D5Evader::worst_case_distance(VertexId robber, const std::vector<VertexId>& cops, int rounds) const {
  const int now = std::min(min_dist(dist_, robber, cops), 6);
  if (rounds == 0 || now == 0 || cops.size() > 2) return now;
  const auto& adj = g_->adjacency();
  auto moves = [&](VertexId c) {
    std::vector<VertexId> m = adj[c];
    m.push_back(c);
    return m;
  };
  int worst = now;
  std::vector<VertexId> next(cops.size());
  const auto first = moves(cops[0]);
  const auto second = cops.size() > 1 ? moves(cops[1]) : std::vector<VertexId>{-1};
  for (VertexId a : first)
    for (VertexId b : second) {
      next[0] = a;
      if (b >= 0) next[1] = b;
      if (min_dist(dist_, robber, next) > 2 * rounds + 6) continue;  // too far to matter
      int reply = -1;
      for (VertexId r : moves(robber)) reply = std::max(reply, worst_case_distance(r, next, rounds - 1));
      worst = std::min(worst, reply);
      if (worst == 0) return 0;
    }
  return worst;
}

D5Evader::Step D5Evader::fallback_step(VertexId at, const std::vector<VertexId>& cops) {
  ++fallbacks_;
  path_.clear();
  std::vector<VertexId> options = g_->adjacency()[at];
  options.push_back(at);
  VertexId best = at;
  std::pair<int, int> best_d{-1, -1};
  for (VertexId v : options) {
    const std::pair<int, int> d{worst_case_distance(v, cops, kFallbackLookahead), min_dist(dist_, v, cops)};
    if (d > best_d || (d == best_d && v < best)) {
      best_d = d;
      best = v;
    }
  }
  Step st{best, -1, true};
  if (best != at && g_->degree(best) == 3) {
    int ad = -1;
    for (VertexId n : g_->adjacency()[best]) {
      const int d = min_dist(dist_, n, cops);
      if (d > ad) {
        ad = d;
        st.announce = n;
      }
    }
  }
  for (VertexId v : v3_)
    if (dist_[v][best] == 1) home_ = v;
  return st;
}

// Off track: walk to the degree-3 vertex with the largest lead over the cops,
// provided every cop stays at distance >= 3 along the way.
D5Evader::Step D5Evader::recover(VertexId at, const std::vector<VertexId>& cops) {
  VertexId best = -1;
  int best_lead = 2;
  for (VertexId w : v3_) {
    const int lead = min_dist(dist_, w, cops) - dist_[at][w];
    if (lead > best_lead || (lead == best_lead && best >= 0 && dist_[at][w] < dist_[at][best])) {
      best_lead = lead;
      best = w;
    }
  }
  if (best < 0 || dist_[at][best] <= 1) return fallback_step(at, cops);
  auto path = path_to_neighbor_of(at, best);
  if (min_dist(dist_, path.front(), cops) < 3) return fallback_step(at, cops);
  ++fallbacks_;
  home_ = best;
  path_ = std::move(path);
  recovering_ = true;
  relocation_turns_ = 0;
  Step st{path_.front(), -1, true};
  path_.erase(path_.begin());
  if (!path_.empty()) st.announce = path_.front();
  return st;
}

D5Evader::Step D5Evader::step(VertexId at, const std::vector<VertexId>& cops, const std::vector<VertexId>& prefer) {
  auto walk = [&]() {
    Step st;
    st.to = path_.front();
    path_.erase(path_.begin());
    ++relocation_turns_;
    if (!path_.empty()) st.announce = path_.front();
    if (path_.empty() && !recovering_) relocation_lengths_.push_back(relocation_turns_);
    return st;
  };
  // A cop that jumped (only possible in a lifted game) can make the planned
  // route unsafe; then replan from here.
  if (!path_.empty() && dist_[at][path_.front()] == 1 && min_dist(dist_, path_.front(), cops) >= 3) return walk();
  path_.clear();

  if (dist_[at][home_] != 1) {
    // Off the strategy's track (after a fallback): rest next to a safe v.
    for (VertexId v : v3_)
      if (dist_[at][v] == 1 && min_dist(dist_, v, cops) >= 4) home_ = v;
    if (dist_[at][home_] != 1 || min_dist(dist_, home_, cops) < 4) return recover(at, cops);
  }
  recovering_ = false;

  auto candidates = [&]() {
    std::vector<VertexId> out;
    for (VertexId w : v3_)
      if (dist_[home_][w] == 6 && min_dist(dist_, w, cops) >= 9) out.push_back(w);
    return out;
  };
  auto relocate = [&](VertexId w) {
    path_ = path_to_neighbor_of(at, w);
    home_ = w;
    relocation_turns_ = 0;
    return walk();
  };

  auto prefer_rank = [&](VertexId w) {
    int best = kInfinity;
    for (VertexId x : prefer) best = std::min(best, dist_[w][x]);
    return best;
  };

  const int threat = min_dist(dist_, home_, cops);
  if (threat <= 3) {
    trigger_distances_.push_back(threat);
    const auto ws = candidates();
    if (ws.empty()) return fallback_step(at, cops);
    VertexId w = ws.front();
    for (VertexId x : ws)
      if (prefer_rank(x) < prefer_rank(w)) w = x;
    return relocate(w);
  }
  if (!prefer.empty() && prefer_rank(home_) > 0) {
    VertexId w = -1;
    for (VertexId x : candidates())
      if (prefer_rank(x) < prefer_rank(home_) && (w < 0 || prefer_rank(x) < prefer_rank(w))) w = x;
    if (w >= 0) return relocate(w);
  }
  return {at, -1, false};
}

// --- D5Robber -----------------------------------------------------------------

RobberMove D5Robber::place(const Board&, const GameState& s) { return {evader_.place(s.cops), -1}; }

RobberMove D5Robber::move(const Board& board, const GameState& s) {
  D5Evader::Step st = evader_.step(s.robber, s.cops);
  RobberMove m{st.to, -1};
  if (s.announced >= 0 && m.vertex != s.announced) {
    // Only reachable after a fallback; the announcement binds.
    m.vertex = s.announced;
  }
  if (m.vertex != s.robber && board.announces_at(m.vertex)) {
    m.announce = st.announce;
    if (m.announce < 0 || evader_.dist()[m.vertex][m.announce] != 1) m.announce = board.graph().neighbors(m.vertex)[0];
  }
  return m;
}

// --- LiftedRobber -------------------------------------------------------------

// Distance from a degree-3 D5 vertex off a face to that face's boundary: one
// subdivided dodecahedron edge.
constexpr int kOffFace = 6;


LiftedRobber::LiftedRobber(const PlanarGraph& g)
    : g_(&g), d5_(std::make_shared<PlanarGraph>(build_D5())), evader_(*d5_) {
  const auto& V = g.labels().vertex;
  const auto& F = g.labels().face;
  if (!V.count(label::kD5Vertex) || !V.count(label::kInG0) || !F.count(label::kDFace))
    throw StrategyError("lift-g needs a graph from build_G_delta4");
  face_image_ = face_to_D5_vertex(g);
  vertex_image_ = V.at(label::kD5Vertex);
  const auto& in_g0 = V.at(label::kInG0);
  const auto& vclass = V.at(label::kVertexClass);
  touches_g0_.assign(g.face_count(), false);
  g0_of_b_.assign(d5_->vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!in_g0[v]) continue;
    for (FaceId f : g.incident_faces(v)) touches_g0_[f] = true;
    if (vclass[v] != static_cast<int>(VertexClass::split)) g0_of_b_[vertex_image_[v]] = v;
  }
  hole_dface_.assign(g.face_count(), -1);
  const auto& fclass = F.at(label::kFaceClass);
  for (int f = 0; f < g.face_count(); ++f)
    if (fclass[f] == static_cast<int>(FaceClass::hole)) hole_dface_[f] = F.at(label::kDFace)[f];
  const PlanarGraph& d5 = *d5_;
  dface_vertices_.assign(d5.face_count(), {});
  for (DartId d = 0; d < d5.dart_count(); ++d) dface_vertices_[d5.face_of(d)].push_back(d5.origin(d));
  for (auto& vs : dface_vertices_) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  }
}

void LiftedRobber::observe(const std::vector<FaceId>& cops) {
  if (tracked_.empty()) {
    for (std::size_t i = 0; i < cops.size() && i < 2; ++i) tracked_.push_back(cops[i]);
    episode_.assign(tracked_.size(), false);
    episode_hole_.assign(tracked_.size(), -1);
  } else {
    // Follow the tracked cops: each moved at most one dual edge.
    const auto& adj = g_->dual_adjacency();
    auto near = [&](FaceId a, FaceId b) {
      return a == b || std::binary_search(adj[a].begin(), adj[a].end(), b);
    };
    const int k = static_cast<int>(cops.size());
    std::vector<FaceId> next;
    bool found = false;
    for (int pass = 0; pass < 2 && !found; ++pass)
      for (int i = 0; i < k && !found; ++i) {
        if (!(pass == 0 ? cops[i] == tracked_[0] : near(tracked_[0], cops[i]))) continue;
        if (tracked_.size() == 1) {
          next = {cops[i]};
          found = true;
          break;
        }
        for (int pass2 = 0; pass2 < 2 && !found; ++pass2)
          for (int j = 0; j < k && !found; ++j)
            if (j != i && (pass2 == 0 ? cops[j] == tracked_[1] : near(tracked_[1], cops[j]))) {
              next = {cops[i], cops[j]};
              found = true;
            }
      }
    if (!found) throw StrategyError("tracked cops moved illegally");
    tracked_ = next;
  }
  for (std::size_t i = 0; i < tracked_.size(); ++i) {
    const FaceId f = tracked_[i];
    if (hole_dface_[f] >= 0) {
      if (!episode_[i]) ++episodes_started_;
      episode_[i] = true;
      episode_hole_[i] = hole_dface_[f];
    } else if (episode_[i] && touches_g0_[f]) {
      episode_[i] = false;
      episode_hole_[i] = -1;
    }
  }
}

std::vector<VertexId> LiftedRobber::relevant_images() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < tracked_.size(); ++i)
    if (!episode_[i] && face_image_[tracked_[i]] >= 0) out.push_back(face_image_[tracked_[i]]);
  return out;
}

// The image of every watched cop not inside a hole, including one still
// climbing back out of the rings (her image moves along the hole's boundary
// one step at a time).
std::vector<VertexId> LiftedRobber::threat_images() const {
  std::vector<VertexId> out;
  for (FaceId f : tracked_)
    if (face_image_[f] >= 0) out.push_back(face_image_[f]);
  return out;
}

// Degree-3 D5 vertices off the boundary of every hole a watched cop is inside
// (she can come out anywhere along it); failing that, the ones farthest from
// those boundaries. Empty when no cop is inside a hole.
std::vector<VertexId> LiftedRobber::hole_free_targets() const {
  std::vector<VertexId> best;
  int best_d = -1;
  for (VertexId x : evader_.degree3()) {
    int d = kInfinity;
    for (FaceId f : tracked_)
      if (hole_dface_[f] >= 0)
        for (VertexId y : dface_vertices_[hole_dface_[f]]) d = std::min(d, evader_.dist()[x][y]);
    if (d == kInfinity) return {};
    d = std::min(d, kOffFace);
    if (d > best_d) best.clear();
    if (d >= best_d) {
      best_d = d;
      best.push_back(x);
    }
  }
  return best;
}

void LiftedRobber::audit(VertexId robber) {
  for (VertexId c : relevant_images())
    if (evader_.dist()[c][vertex_image_[robber]] <= 1) ++violations_;
}

VertexId LiftedRobber::realize(VertexId at, VertexId d5_to, VertexId d5_after) const {
  if (d5_to == vertex_image_[at]) return at;
  if (g0_of_b_[d5_to] >= 0) return g0_of_b_[d5_to];
  VertexId pick = -1;
  for (VertexId n : g_->neighbors(at)) {
    if (vertex_image_[n] != d5_to || !g_->labels().vertex.at(label::kInG0)[n]) continue;
    const bool leads = d5_after >= 0 && g0_of_b_[d5_after] >= 0 &&
                       dart_to(*g_, n, g0_of_b_[d5_after]) >= 0;
    if (pick < 0 || leads) pick = n;
    if (leads) break;
  }
  return pick;
}

RobberMove LiftedRobber::place(const Board& board, const GameState& s) {
  check_surround_board(board);
  tracked_.clear();
  episodes_started_ = 0;
  violations_ = 0;
  observe(s.cops);
  const VertexId b = evader_.place(threat_images());
  audit(g0_of_b_[b]);
  return {g0_of_b_[b], -1};
}

RobberMove LiftedRobber::move(const Board&, const GameState& s) {
  observe(s.cops);
  audit(s.robber);
  const auto cops = threat_images();
  const D5Evader::Step st = evader_.step(vertex_image_[s.robber], cops, hole_free_targets());
  VertexId to = realize(s.robber, st.to, st.announce);
  const bool adjacent = to == s.robber || (to >= 0 && dart_to(*g_, s.robber, to) >= 0);
  if (!adjacent) {
    // Keep to G0 and stay as far from the tracked images as possible.
    const auto& in_g0 = g_->labels().vertex.at(label::kInG0);
    std::vector<VertexId> options = g_->neighbors(s.robber);
    options.push_back(s.robber);
    int best = -1;
    for (VertexId v : options) {
      if (!in_g0[v]) continue;
      const int d = min_dist(evader_.dist(), vertex_image_[v], cops);
      if (d > best) {
        best = d;
        to = v;
      }
    }
  }
  audit(to);
  return {to, -1};
}

// --- velocity translation -------------------------------------------------------

TableGridEvasion::TableGridEvasion(int n, int p, int q, int cop_count, const SolverOptions& options)
    : grid_(std::make_unique<PlanarGraph>(small_family("grid", n))) {
  Board b(*grid_, rules_preset("velocity:" + std::to_string(p) + "," + std::to_string(q)));
  table_ = std::make_unique<SolveResult>(solve(b, cop_count, options));
}

int TableGridEvasion::place(const std::vector<int>& cops) {
  std::vector<int> c = cops;
  std::sort(c.begin(), c.end());
  return table_->best_robber_move({c, kUnplaced, Turn::robber_placement, -1}).vertex;
}

int TableGridEvasion::move(const std::vector<int>& cops, int robber) {
  std::vector<int> c = cops;
  std::sort(c.begin(), c.end());
  const Board& b = table_->board();
  if (b.captured(c, robber)) {
    // The grid game is already lost; run as far as possible.
    ++fallbacks_;
    const auto dist = bfs_distances(b.robber_arena(), c);
    int best = robber;
    for (int v : b.robber_ball(robber))
      if (dist[v] > dist[best]) best = v;
    return best;
  }
  return table_->best_robber_move({c, robber, Turn::robber_move, -1}).vertex;
}

VelocityTranslationRobber::VelocityTranslationRobber(const PlanarGraph& g, std::shared_ptr<GridEvasion> evasion,
                                                     int p, int q)
    : g_(&g), evasion_(std::move(evasion)), p_(p), q_(q) {
  const GridLabels labels = grid_labels(g);
  n_ = labels.n;
  closest_grid_ = labels.closest_grid;
  on_route_.assign(g.vertex_count(), false);
  int subdivision = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const VertexClass c = labels.vertex_class[v];
    on_route_[v] = c == VertexClass::grid || c == VertexClass::subdivision;
    subdivision += c == VertexClass::subdivision;
  }
  s_ = subdivision / (4 * n_ * (n_ - 1));
}

int VelocityTranslationRobber::grid_distance(VertexId a, VertexId b) const {
  return std::abs(a % n_ - b % n_) + std::abs(a / n_ - b / n_);
}

std::vector<VertexId> VelocityTranslationRobber::route(VertexId from, VertexId to) const {
  std::vector<VertexId> parent(g_->vertex_count(), -1);
  std::deque<VertexId> queue{from};
  parent[from] = from;
  while (!queue.empty() && parent[to] < 0) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : g_->adjacency()[v])
      if (on_route_[w] && parent[w] < 0) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  std::vector<VertexId> path;
  for (VertexId v = to; v != from; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

RobberMove VelocityTranslationRobber::place(const Board&, const GameState& s) {
  std::vector<int> images;
  for (FaceId f : s.cops) images.push_back(closest_grid_[f]);
  steps_.clear();
  walk_.clear();
  turn_ = 0;
  macro_turn_ = 0;
  return {evasion_->place(images), -1};
}

void VelocityTranslationRobber::begin_macro(const GameState& s) {
  if (s.robber >= n_ * n_) throw StrategyError("macro-step must start on a grid vertex");
  MacroStep m;
  m.start_turn = turn_;
  m.from = s.robber;
  m.cop_faces = s.cops;
  for (FaceId f : s.cops) m.cop_images.push_back(closest_grid_[f]);
  m.to = evasion_->move(m.cop_images, s.robber);
  m.grid_distance = grid_distance(m.from, m.to);
  if (m.grid_distance > q_) throw StrategyError("grid evasion moved farther than its velocity");
  walk_ = route(m.from, m.to);
  m.walk_length = static_cast<int>(walk_.size());
  steps_.push_back(m);
}

RobberMove VelocityTranslationRobber::move(const Board&, const GameState& s) {
  if (macro_turn_ == 0) begin_macro(s);
  ++turn_;
  macro_turn_ = (macro_turn_ + 1) % macro_length();
  if (walk_.empty()) return {s.robber, -1};
  const VertexId next = walk_.front();
  walk_.erase(walk_.begin());
  return {next, -1};
}

std::string check_macro_steps(const PlanarGraph& g, const std::vector<MacroStep>& steps, int p, int q) {
  const GridLabels labels = grid_labels(g);
  const int n = labels.n;
  int subdivision = 0;
  for (VertexClass c : labels.vertex_class) subdivision += c == VertexClass::subdivision;
  const int s = subdivision / (4 * n * (n - 1));
  auto gd = [&](int a, int b) { return std::abs(a % n - b % n) + std::abs(a / n - b / n); };
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const MacroStep& m = steps[i];
    const std::string at = "macro-step " + std::to_string(i) + ": ";
    if (m.grid_distance > q) return at + "grid distance exceeds q";
    if (m.walk_length != (2 * s + 1) * m.grid_distance) return at + "walk length differs from (2s+1)d";
    if (m.walk_length > (2 * s + 1) * q) return at + "walk longer than the macro length";
    if (i + 1 == steps.size()) break;
    const MacroStep& next = steps[i + 1];
    if (!has_perfect_matching(m.cop_images, next.cop_images, [&](int a, int b) { return gd(a, b) <= p; }))
      return at + "some cop moved more than p grid steps";
    for (FaceId a : m.cop_faces) {
      if (labels.face_class[a] != FaceClass::shallow) continue;
      const auto dual = bfs_distances(g.dual_adjacency(), {a});
      for (FaceId b : next.cop_faces) {
        if (labels.face_class[b] != FaceClass::shallow) continue;
        const int d = gd(labels.closest_grid[a], labels.closest_grid[b]);
        if (dual[b] < 3 * s * (d - 2)) return at + "dual distance below 3s(d-2)";
      }
    }
  }
  return "";
}

// --- generic agents -------------------------------------------------------------

std::vector<int> GreedyCops::place(const Board& board, int cop_count) {
  std::vector<int> out;
  for (int i = 0; i < cop_count; ++i) out.push_back(static_cast<int>(1LL * i * board.cop_positions() / cop_count));
  return out;
}

std::vector<int> GreedyCops::move(const Board& board, const GameState& s) { return greedy_moves(board, s, s.cops); }

std::vector<int> RandomCops::place(const Board& board, int cop_count) {
  std::vector<int> out;
  for (int i = 0; i < cop_count; ++i) out.push_back(static_cast<int>(rng_() % board.cop_positions()));
  return out;
}

std::vector<int> RandomCops::move(const Board& board, const GameState& s) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<int> out = s.cops;
  std::vector<int> greedy;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (greed_ > 0 && coin(rng_) < greed_) {
      if (greedy.empty()) greedy = greedy_moves(board, s, s.cops);
      out[i] = greedy[i];
    } else {
      const auto& ball = board.cop_ball(out[i]);
      out[i] = ball[rng_() % ball.size()];
    }
  }
  return out;
}

std::vector<int> HoleDivingCops::place(const Board& board, int cop_count) {
  pos_.clear();
  mode_.clear();
  timer_.clear();
  for (int i = 0; i < cop_count; ++i) {
    pos_.push_back(static_cast<int>(rng_() % board.cop_positions()));
    mode_.push_back(i % 2 == 0 ? Mode::dive : Mode::chase);
    timer_.push_back(10 + static_cast<int>(rng_() % 30));
  }
  return pos_;
}

std::vector<int> HoleDivingCops::move(const Board& board, const GameState& s) {
  check_synced(pos_, s);
  const auto images = face_to_D5_vertex(board.graph());
  std::vector<int> holes;
  for (int f = 0; f < static_cast<int>(images.size()); ++f)
    if (images[f] < 0) holes.push_back(f);
  const auto to_hole = arena_distances(board, holes);
  const auto chase = greedy_moves(board, s, pos_);
  for (std::size_t i = 0; i < pos_.size(); ++i) {
    switch (mode_[i]) {
      case Mode::dive:
        if (to_hole[pos_[i]] == 0) {
          mode_[i] = Mode::wait;
          timer_[i] = 1 + static_cast<int>(rng_() % 5);
        } else {
          pos_[i] = greedy_step(board, pos_[i], to_hole);
        }
        break;
      case Mode::wait:
        if (--timer_[i] <= 0) {
          mode_[i] = Mode::chase;
          timer_[i] = 10 + static_cast<int>(rng_() % 30);
        }
        break;
      case Mode::chase:
        pos_[i] = chase[i];
        if (--timer_[i] <= 0) mode_[i] = Mode::dive;
        break;
    }
  }
  return pos_;
}

RobberMove RandomRobber::place(const Board& board, const GameState&) {
  return {static_cast<int>(rng_() % board.robber_positions()), -1};
}

RobberMove RandomRobber::move(const Board& board, const GameState& s) {
  const auto moves = board.robber_moves(s);
  return moves[rng_() % moves.size()];
}

RobberMove StationaryRobber::place(const Board& board, const GameState& s) {
  const auto dist = arena_distances(board, s.cops);
  int best = 0, best_score = -1;
  for (int v = 0; v < board.robber_positions(); ++v) {
    int score = kInfinity;
    for (int f : board.capture_set(v)) score = std::min(score, dist[f]);
    if (board.captured(s.cops, v)) score = -1;
    if (score > best_score) {
      best_score = score;
      best = v;
    }
  }
  return {best, -1};
}

RobberMove StationaryRobber::move(const Board& board, const GameState& s) {
  if (s.announced >= 0) {
    const auto moves = board.robber_moves(s);
    return moves.front();
  }
  return {s.robber, -1};
}

namespace {
constexpr long long kCaught = -1'000'000'000LL;

long long heuristic(const Board& board, const GameState& s) {
  const auto& need = board.capture_set(s.robber);
  const auto dist = arena_distances(board, s.cops);
  long long free = 0, spread = 0;
  for (int f : need) {
    free += !std::binary_search(s.cops.begin(), s.cops.end(), f);
    spread += dist[f] == kInfinity ? 100 : dist[f];
  }
  return free * 1000 + spread;
}
}  // namespace

long long SearchRobber::value(const Board& board, const GameState& s, const CopStrategy& cops, int plies_left) const {
  auto copy = cops.clone();
  if (!copy) throw StrategyError("search robber needs a cloneable cop strategy");
  const GameState after = board.after_cops(s, copy->move(board, s));
  if (board.captured(after.cops, after.robber)) return kCaught + 1000LL * (plies_ - plies_left);
  if (plies_left <= 2) return heuristic(board, after);
  long long best = kCaught - 1;
  std::set<int> seen;
  for (const RobberMove& m : board.robber_moves(after)) {
    if (!seen.insert(m.vertex).second) continue;
    best = std::max(best, value(board, board.after_robber(after, m), *copy, plies_left - 2));
  }
  return best;
}

RobberMove SearchRobber::place(const Board& board, const GameState& s) {
  RobberMove best{0, -1};
  long long best_v = kCaught - 1;
  for (int v = 0; v < board.robber_positions(); ++v) {
    const GameState after = board.after_robber(s, {v, -1});
    if (board.captured(after.cops, v)) continue;
    const long long val = value(board, after, *cops_, std::min(plies_, 4) - 1);
    if (val > best_v) {
      best_v = val;
      best = {v, -1};
    }
  }
  return best;
}

RobberMove SearchRobber::move(const Board& board, const GameState& s) {
  const auto moves = board.robber_moves(s);
  RobberMove best = moves.front();
  long long best_v = kCaught - 1;
  std::set<int> seen;
  for (const RobberMove& m : moves) {
    if (!seen.insert(m.vertex).second) continue;
    const long long val = value(board, board.after_robber(s, m), *cops_, plies_ - 1);
    if (val > best_v) {
      best_v = val;
      best = m;
    }
  }
  return best;
}

// --- registry -------------------------------------------------------------------

std::vector<std::string> cop_strategy_names() { return {"delta3", "delta4", "solver", "greedy", "random", "hole-diving"}; }

std::vector<std::string> robber_strategy_names() { return {"d5", "lift-g", "vtrans", "solver", "random", "stationary"}; }

namespace {
std::shared_ptr<const SolveResult> table_for(const Board& board, const AgentOptions& o) {
  if (o.table) return o.table;
  return std::make_shared<SolveResult>(solve(board, o.cop_count, o.solver));
}
}  // namespace

std::unique_ptr<CopStrategy> make_cops(const std::string& name, const Board& board, const AgentOptions& o) {
  if (name == "delta3") return std::make_unique<Delta3Cops>(board.graph());
  if (name == "delta4") return std::make_unique<Delta4Cops>(board.graph());
  if (name == "solver") return std::make_unique<TableCops>(table_for(board, o));
  if (name == "greedy") return std::make_unique<GreedyCops>();
  if (name == "random") return std::make_unique<RandomCops>(o.seed);
  if (name == "hole-diving") return std::make_unique<HoleDivingCops>(o.seed);
  throw std::invalid_argument("unknown cop strategy '" + name + "'");
}

std::unique_ptr<RobberStrategy> make_robber(const std::string& name, const Board& board, const AgentOptions& o) {
  if (name == "d5") return std::make_unique<D5Robber>(board.graph());
  if (name == "lift-g") return std::make_unique<LiftedRobber>(board.graph());
  if (name == "vtrans") {
    const int n = grid_labels(board.graph()).n;
    auto evasion = std::make_shared<TableGridEvasion>(n, 7, 8, o.cop_count, o.solver);
    return std::make_unique<VelocityTranslationRobber>(board.graph(), evasion);
  }
  if (name == "solver") return std::make_unique<TableRobber>(table_for(board, o));
  if (name == "random") return std::make_unique<RandomRobber>(o.seed);
  if (name == "stationary") return std::make_unique<StationaryRobber>();
  throw std::invalid_argument("unknown robber strategy '" + name + "'");
}

}  // namespace pdcr
