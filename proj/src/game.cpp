#include "pdcr/game.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pdcr {

namespace {

std::vector<std::vector<int>> balls(const Adjacency& adj, int radius) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> out(n);
  std::vector<int> dist(n, -1);
  for (int s = 0; s < n; ++s) {
    std::vector<int> seen{s};
    dist[s] = 0;
    for (std::size_t i = 0; i < seen.size(); ++i) {
      const int u = seen[i];
      if (dist[u] == radius) continue;
      for (int w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          seen.push_back(w);
        }
    }
    for (int v : seen) dist[v] = -1;
    std::sort(seen.begin(), seen.end());
    out[s] = std::move(seen);
  }
  return out;
}

std::pair<int, int> parse_pair(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("expected <p>,<q>");
  int a = 0, b = 0;
  auto r1 = std::from_chars(text.data(), text.data() + comma, a);
  auto r2 = std::from_chars(text.data() + comma + 1, text.data() + text.size(), b);
  if (r1.ec != std::errc() || r2.ec != std::errc() || r2.ptr != text.data() + text.size())
    throw std::invalid_argument("malformed velocity pair '" + std::string(text) + "'");
  return {a, b};
}

bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

}  // namespace

void RuleSet::validate() const {
  if (cop_speed < 1 || robber_speed < 1) throw std::invalid_argument("velocities must be positive");
  if (capture == CaptureKind::surround) {
    if (cop_arena != Arena::dual_faces || robber_arena != Arena::primal_vertices)
      throw std::invalid_argument("surround capture needs face cops and a vertex robber");
  } else if (cop_arena != robber_arena) {
    throw std::invalid_argument("distance captures need cops and robber in the same arena");
  }
  if (capture == CaptureKind::within_distance && capture_distance < 1)
    throw std::invalid_argument("capture distance must be at least 1");
  if (announcement && (robber_arena != Arena::primal_vertices || robber_speed != 1))
    throw std::invalid_argument("announcements need a vertex robber of speed 1");
}

RuleSet rules_preset(std::string_view name) {
  RuleSet r;
  r.name = std::string(name);
  if (name == "surround") return r;
  if (name == "single-face" || name == "no-flank")
    throw std::logic_error("rule variant '" + std::string(name) + "' is not implemented");
  r.cop_arena = Arena::primal_vertices;
  r.capture = CaptureKind::same_vertex;
  if (name == "classical") return r;
  if (name == "dual-classical") {
    r.cop_arena = r.robber_arena = Arena::dual_faces;
    return r;
  }
  if (name == "lemma2") {
    r.capture = CaptureKind::within_distance;
    r.capture_distance = 2;
    r.announcement = true;
    return r;
  }
  if (name.starts_with("within:")) {
    r.capture = CaptureKind::within_distance;
    auto text = name.substr(7);
    if (std::from_chars(text.data(), text.data() + text.size(), r.capture_distance).ec != std::errc())
      throw std::invalid_argument("malformed distance in '" + std::string(name) + "'");
    r.validate();
    return r;
  }
  if (name.starts_with("velocity:")) {
    std::tie(r.cop_speed, r.robber_speed) = parse_pair(name.substr(9));
    r.validate();
    return r;
  }
  if (name.starts_with("surround-velocity:")) {
    RuleSet s;
    s.name = r.name;
    std::tie(s.cop_speed, s.robber_speed) = parse_pair(name.substr(18));
    s.validate();
    return s;
  }
  throw std::invalid_argument("unknown rules preset '" + std::string(name) + "'");
}

std::string_view turn_name(Turn t) {
  switch (t) {
    case Turn::cop_placement: return "cop-placement";
    case Turn::robber_placement: return "robber-placement";
    case Turn::cop_move: return "cop-move";
    case Turn::robber_move: return "robber-move";
  }
  return "?";
}

GameState GameState::initial(int cop_count) {
  GameState s;
  s.cops.assign(cop_count, kUnplaced);
  return s;
}

Board::Board(const PlanarGraph& graph, RuleSet rules) : graph_(&graph), rules_(std::move(rules)) {
  rules_.validate();
  cop_adj_ = rules_.cop_arena == Arena::dual_faces ? &graph.dual_adjacency() : &graph.adjacency();
  robber_adj_ = rules_.robber_arena == Arena::dual_faces ? &graph.dual_adjacency() : &graph.adjacency();
  cop_ball_ = balls(*cop_adj_, rules_.cop_speed);
  robber_ball_ = rules_.robber_speed == rules_.cop_speed && cop_adj_ == robber_adj_ ? cop_ball_
                                                                                     : balls(*robber_adj_, rules_.robber_speed);
  const int nr = robber_positions();
  capture_set_.resize(nr);
  if (rules_.capture == CaptureKind::surround) {
    for (int v = 0; v < nr; ++v) capture_set_[v] = graph.incident_faces(v);
  } else if (rules_.capture == CaptureKind::same_vertex) {
    for (int v = 0; v < nr; ++v) capture_set_[v] = {v};
  } else {
    capture_set_ = balls(*robber_adj_, rules_.capture_distance - 1);
  }
}

bool Board::cop_reaches(int from, int to) const { return contains(cop_ball_[from], to); }

bool Board::captured(const std::vector<int>& cops, int robber) const {
  if (robber < 0) return false;
  const auto& need = capture_set_[robber];
  if (rules_.capture == CaptureKind::surround) {
    for (int f : need)
      if (!contains(cops, f)) return false;
    return true;
  }
  for (int c : cops)
    if (contains(need, c)) return true;
  return false;
}

bool Board::announces_at(int v) const {
  return rules_.announcement && rules_.robber_arena == Arena::primal_vertices && graph_->degree(v) == 3;
}

bool Board::cop_move_legal(const std::vector<int>& from, const std::vector<int>& to) const {
  const int k = static_cast<int>(from.size());
  if (static_cast<int>(to.size()) != k || k > 20) return false;
  for (int x : to)
    if (x < 0 || x >= cop_positions()) return false;
  // reachable[mask]: the first popcount(mask) cops can be matched onto `mask`.
  std::vector<char> reachable(std::size_t{1} << k, 0);
  reachable[0] = 1;
  for (std::size_t mask = 0; mask < reachable.size(); ++mask) {
    if (!reachable[mask]) continue;
    const int i = std::popcount(mask);
    if (i == k) return true;
    for (int j = 0; j < k; ++j)
      if (!(mask >> j & 1) && cop_reaches(from[i], to[j])) reachable[mask | (std::size_t{1} << j)] = 1;
  }
  return false;
}

std::vector<RobberMove> Board::robber_moves(const GameState& s) const {
  std::vector<RobberMove> out;
  auto push = [&](int w) {
    if (w != s.robber && announces_at(w)) {
      for (int a : graph_->neighbors(w)) out.push_back({w, a});
      std::sort(out.end() - graph_->degree(w), out.end(), [](auto& x, auto& y) { return x.announce < y.announce; });
    } else {
      out.push_back({w, -1});
    }
  };
  if (s.turn == Turn::robber_placement) {
    for (int v = 0; v < robber_positions(); ++v) out.push_back({v, -1});
    return out;
  }
  if (s.turn != Turn::robber_move) return out;
  if (s.announced >= 0) {
    push(s.announced);
    return out;
  }
  for (int w : robber_ball_[s.robber]) push(w);
  return out;
}

std::string Board::robber_move_error(const GameState& s, const RobberMove& m) const {
  if (s.turn != Turn::robber_move && s.turn != Turn::robber_placement) return "not the robber's turn";
  if (m.vertex < 0 || m.vertex >= robber_positions()) return "robber position out of range";
  if (s.turn == Turn::robber_placement) return m.announce == -1 ? "" : "no announcement at placement";
  if (s.announced >= 0 && m.vertex != s.announced) return "robber must move to the announced vertex";
  if (!contains(robber_ball_[s.robber], m.vertex)) return "robber target out of reach";
  if (m.vertex != s.robber && announces_at(m.vertex)) {
    const auto nb = graph_->neighbors(m.vertex);
    if (std::find(nb.begin(), nb.end(), m.announce) == nb.end()) return "announcement must name a neighbor";
  } else if (m.announce != -1) {
    return "unexpected announcement";
  }
  return "";
}

std::string Board::cop_move_error(const GameState& s, const std::vector<int>& to) const {
  if (s.turn != Turn::cop_move && s.turn != Turn::cop_placement) return "not the cops' turn";
  if (to.size() != s.cops.size()) return "wrong number of cops";
  for (int x : to)
    if (x < 0 || x >= cop_positions()) return "cop position out of range";
  if (s.turn == Turn::cop_placement) return "";
  std::vector<int> sorted = to;
  std::sort(sorted.begin(), sorted.end());
  return cop_move_legal(s.cops, sorted) ? "" : "cop moved farther than its velocity allows";
}

GameState Board::after_cops(const GameState& s, std::vector<int> to) const {
  GameState n = s;
  std::sort(to.begin(), to.end());
  n.cops = std::move(to);
  n.turn = s.turn == Turn::cop_placement ? Turn::robber_placement : Turn::robber_move;
  return n;
}

GameState Board::after_robber(const GameState& s, const RobberMove& m) const {
  GameState n = s;
  n.robber = m.vertex;
  n.announced = m.announce;
  n.turn = Turn::cop_move;
  return n;
}

std::vector<GameState> legal_moves(const Board& board, const GameState& s) {
  std::vector<GameState> out;
  if (s.turn == Turn::robber_move || s.turn == Turn::robber_placement) {
    for (const RobberMove& m : board.robber_moves(s)) out.push_back(board.after_robber(s, m));
    return out;
  }
  const int k = static_cast<int>(s.cops.size());
  std::set<std::vector<int>> seen;
  std::vector<int> pick(k);
  if (s.turn == Turn::cop_placement) {
    // Multisets as non-decreasing sequences.
    const int n = board.cop_positions();
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      out.push_back(board.after_cops(s, pick));
      int i = k - 1;
      while (i >= 0 && pick[i] == n - 1) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[i];
    }
    return out;
  }
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    for (int i = 0; i < k; ++i) pick[i] = board.cop_ball(s.cops[i])[idx[i]];
    std::vector<int> sorted = pick;
    std::sort(sorted.begin(), sorted.end());
    if (seen.insert(sorted).second) out.push_back(board.after_cops(s, sorted));
    int i = k - 1;
    while (i >= 0 && ++idx[i] == board.cop_ball(s.cops[i]).size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

bool is_captured(const Board& board, const GameState& s) { return board.captured(s.cops, s.robber); }

nlohmann::json state_to_json(const GameState& s) {
  nlohmann::json j;
  j["cops"] = s.cops;
  j["robber"] = s.robber;
  j["turn"] = std::string(turn_name(s.turn));
  j["announced"] = s.announced;
  return j;
}

GameState state_from_json(const nlohmann::json& j) {
  GameState s;
  s.cops = j.at("cops").get<std::vector<int>>();
  s.robber = j.at("robber").get<int>();
  s.announced = j.value("announced", -1);
  const std::string t = j.at("turn").get<std::string>();
  for (Turn x : {Turn::cop_placement, Turn::robber_placement, Turn::cop_move, Turn::robber_move})
    if (turn_name(x) == t) s.turn = x;
  return s;
}

std::string Transcript::to_jsonl() const {
  std::string out;
  nlohmann::json head{{"type", "header"}, {"rules", rules}, {"cops", cop_strategy},
                      {"robber", robber_strategy}, {"start", state_to_json(start)}};
  out += head.dump() + '\n';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    nlohmann::json rec{{"type", "move"}, {"index", i}, {"actor", e.actor}, {"state", state_to_json(e.state)}};
    if (e.actor == "cops")
      rec["move"] = e.cop_move;
    else
      rec["move"] = {{"vertex", e.robber_move.vertex}, {"announce", e.robber_move.announce}};
    out += rec.dump() + '\n';
  }
  nlohmann::json tail{{"type", "outcome"},
                      {"outcome", outcome == Outcome::cops_win ? "cops-win" : "robber-survives"},
                      {"reason", reason},
                      {"turns", turns}};
  if (!detail.empty()) tail["detail"] = detail;
  out += tail.dump() + '\n';
  return out;
}

namespace {

std::vector<int> state_key(const GameState& s) {
  std::vector<int> key = s.cops;
  key.push_back(s.robber);
  key.push_back(s.announced);
  key.push_back(static_cast<int>(s.turn));
  return key;
}

}  // namespace

Match::Match(const Board& board, int cop_count, std::string cop_strategy, std::string robber_strategy,
             MatchOptions options)
    : board_(&board), options_(options) {
  t_.rules = board.rules().name;
  t_.cop_strategy = std::move(cop_strategy);
  t_.robber_strategy = std::move(robber_strategy);
  t_.start = GameState::initial(cop_count);
  state_ = t_.start;
}

void Match::finish(Outcome o, std::string reason, std::string detail) {
  t_.outcome = o;
  t_.reason = std::move(reason);
  t_.detail = std::move(detail);
  over_ = true;
}

std::string Match::play_cops(const std::vector<int>& to) {
  if (over_) return "the match is over";
  std::string err = board_->cop_move_error(state_, to);
  if (!err.empty()) return err;
  const bool moving = state_.turn == Turn::cop_move;
  state_ = board_->after_cops(state_, to);
  t_.entries.push_back({"cops", state_.cops, {}, state_});
  if (observer_) observer_(*board_, t_);
  if (moving) {
    ++t_.turns;
    if (board_->captured(state_.cops, state_.robber)) {
      finish(Outcome::cops_win, "capture");
      return "";
    }
    after_move();
  }
  return "";
}

std::string Match::play_robber(const RobberMove& m) {
  if (over_) return "the match is over";
  std::string err = board_->robber_move_error(state_, m);
  if (!err.empty()) return err;
  const bool placing = state_.turn == Turn::robber_placement;
  state_ = board_->after_robber(state_, m);
  t_.entries.push_back({"robber", {}, m, state_});
  if (observer_) observer_(*board_, t_);
  if (placing) {
    if (board_->captured(state_.cops, state_.robber)) {
      finish(Outcome::cops_win, "capture");
      return "";
    }
    if (options_.detect_repetition) seen_.insert(state_key(state_));
    if (options_.turn_budget <= 0) finish(Outcome::robber_survives, "turn-budget");
    return "";
  }
  ++t_.turns;
  after_move();
  return "";
}

void Match::after_move() {
  if (options_.detect_repetition && !seen_.insert(state_key(state_)).second) {
    finish(Outcome::robber_survives, "repetition");
    return;
  }
  if (t_.turns >= options_.turn_budget) finish(Outcome::robber_survives, "turn-budget");
}

void Match::forfeit(const std::string& error) {
  if (over_) return;
  if (cops_to_move())
    finish(Outcome::robber_survives, "illegal-cop-move", error);
  else
    finish(Outcome::cops_win, "illegal-robber-move", error);
}

Transcript run_match(const Board& board, int cop_count, CopStrategy& cops, RobberStrategy& robber,
                     const MatchOptions& options, const MatchObserver& observer) {
  Match m(board, cop_count, cops.name(), robber.name(), options);
  m.set_observer(observer);
  while (!m.over()) {
    const GameState& s = m.state();
    std::string err;
    if (m.cops_to_move())
      err = m.play_cops(s.turn == Turn::cop_placement ? cops.place(board, cop_count) : cops.move(board, s));
    else
      err = m.play_robber(s.turn == Turn::robber_placement ? robber.place(board, s) : robber.move(board, s));
    if (!err.empty()) m.forfeit(err);
  }
  return m.transcript();
}

GameState replay(const Board& board, const Transcript& t) {
  GameState s = t.start;
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    std::string err;
    if (e.actor == "cops") {
      err = board.cop_move_error(s, e.cop_move);
      if (err.empty()) s = board.after_cops(s, e.cop_move);
    } else {
      err = board.robber_move_error(s, e.robber_move);
      if (err.empty()) s = board.after_robber(s, e.robber_move);
    }
    if (!err.empty()) throw std::runtime_error("replay: move " + std::to_string(i) + " illegal: " + err);
    if (!(s == e.state)) throw std::runtime_error("replay: state mismatch at move " + std::to_string(i));
  }
  return s;
}

Transcript transcript_from_jsonl(const std::string& text) {
  Transcript t;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      const std::string type = j.at("type");
      if (type == "header") {
        t.rules = j.at("rules");
        t.cop_strategy = j.at("cops");
        t.robber_strategy = j.at("robber");
        t.start = state_from_json(j.at("start"));
        header = true;
      } else if (type == "move") {
        TranscriptEntry e;
        e.actor = j.at("actor");
        e.state = state_from_json(j.at("state"));
        if (e.actor == "cops")
          e.cop_move = j.at("move").get<std::vector<int>>();
        else
          e.robber_move = {j.at("move").at("vertex"), j.at("move").at("announce")};
        t.entries.push_back(std::move(e));
      } else if (type == "outcome") {
        t.outcome = j.at("outcome") == "cops-win" ? Outcome::cops_win : Outcome::robber_survives;
        t.reason = j.at("reason");
        t.turns = j.at("turns");
        t.detail = j.value("detail", "");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("transcript: ") + e.what());
  }
  if (!header) throw std::runtime_error("transcript: missing header");
  return t;
}

}  // namespace pdcr
