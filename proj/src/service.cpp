#include "pdcr/service.hpp"

#include <httplib.h>

#include <stdexcept>

#include "pdcr/game.hpp"
#include "pdcr/generators.hpp"
#include "pdcr/graph_io.hpp"
#include "pdcr/presets.hpp"
#include "pdcr/solver.hpp"
#include "pdcr/strategies.hpp"

namespace pdcr {

namespace {

using nlohmann::json;

Reply error(int status, const std::string& reason) { return {status, json{{"error", reason}}}; }

std::string arena_name(Arena a) { return a == Arena::dual_faces ? "faces" : "vertices"; }

json outcome_json(const Transcript& t) {
  return {{"outcome", t.outcome == Outcome::cops_win ? "cops-win" : "robber-survives"},
          {"reason", t.reason},
          {"turns", t.turns},
          {"detail", t.detail}};
}

}  // namespace

class Session {
 public:
  Session(std::string id, const json& request) : id_(std::move(id)) {
    const json& graph = request.at("graph");
    if (graph.is_string()) {
      preset_ = graph.get<std::string>();
      graph_ = std::make_unique<PlanarGraph>(graph_preset(preset_));
    } else {
      graph_ = std::make_unique<PlanarGraph>(graph_from_json(graph));
    }
    rules_ = request.value("rules", std::string("surround"));
    board_ = std::make_unique<Board>(*graph_, rules_preset(rules_));
    human_ = request.value("human", std::string("robber"));
    if (human_ != "cops" && human_ != "robber") throw std::invalid_argument("human must be 'cops' or 'robber'");
    ai_name_ = request.value("ai", std::string("solver"));
    cop_count_ = request.value("cop_count", 2);
    if (cop_count_ < 1) throw std::invalid_argument("cop_count must be positive");

    AgentOptions o;
    o.seed = request.value("seed", std::uint64_t{1});
    o.cop_count = cop_count_;
    std::string cop_name = "human", robber_name = "human";
    if (human_ == "robber") {
      cops_ = make_cops(ai_name_, *board_, o);
      cop_name = cops_->name();
    } else {
      robber_ = make_robber(ai_name_, *board_, o);
      robber_name = robber_->name();
    }
    MatchOptions mo;
    mo.turn_budget = request.value("turn_budget", 1000);
    mo.detect_repetition = false;
    match_ = std::make_unique<Match>(*board_, cop_count_, cop_name, robber_name, mo);

    if (human_ == "robber" && preset_ == "d5" && board_->rules().name == "lemma2") hint_ = std::make_unique<D5Robber>(*graph_);
    ai_moves();
  }

  std::mutex& mutex() { return mutex_; }

  json created() {
    json j = snapshot();
    j["graph"] = graph_to_json(*graph_, false);
    j["layout"] = layout_to_json(*graph_, board_layout(*graph_));
    return j;
  }

  json snapshot() {
    const GameState& s = match_->state();
    json j{{"id", id_},
           {"schema", kSessionSchemaVersion},
           {"human", human_},
           {"ai", ai_name_},
           {"rules", rules_},
           {"preset", preset_},
           {"cop_count", cop_count_},
           {"cop_arena", arena_name(board_->rules().cop_arena)},
           {"robber_arena", arena_name(board_->rules().robber_arena)},
           {"state", state_to_json(s)},
           {"ply", match_->transcript().entries.size()},
           {"captured", s.robber >= 0 && board_->captured(s.cops, s.robber)},
           {"over", match_->over()},
           {"outcome", match_->over() ? outcome_json(match_->transcript()) : json(nullptr)},
           {"to_move", match_->over() ? json(nullptr) : json(match_->cops_to_move() ? "cops" : "robber")},
           {"legal", legal()}};
    if (hint_ && !match_->over() && !match_->cops_to_move()) j["hint"] = hint();
    return j;
  }

  Reply move(const json& request) {
    if (match_->over()) return error(409, "game over");
    if (request.contains("ply") && request.at("ply").get<long long>() != ply())
      return error(409, "stale ply: the session is at ply " + std::to_string(ply()));
    std::string err;
    if (human_ == "cops") {
      if (!request.contains("cops")) return error(400, "expected {\"cops\": [...]}");
      err = match_->play_cops(request.at("cops").get<std::vector<int>>());
    } else {
      if (!request.contains("vertex")) return error(400, "expected {\"vertex\": v}");
      err = match_->play_robber({request.at("vertex").get<int>(), request.value("announce", -1)});
    }
    if (!err.empty()) return error(400, err);
    ai_moves();
    return {200, snapshot()};
  }

  std::string transcript() const { return match_->transcript().to_jsonl(); }

 private:
  long long ply() const { return static_cast<long long>(match_->transcript().entries.size()); }

  void ai_moves() {
    while (!match_->over() && match_->cops_to_move() == (human_ == "robber")) {
      const GameState& s = match_->state();
      std::string err;
      if (cops_)
        err = match_->play_cops(s.turn == Turn::cop_placement ? cops_->place(*board_, cop_count_)
                                                              : cops_->move(*board_, s));
      else
        err = match_->play_robber(s.turn == Turn::robber_placement ? robber_->place(*board_, s)
                                                                    : robber_->move(*board_, s));
      if (!err.empty()) match_->forfeit(err);
    }
  }

  // Only the human's side is listed. Cop moves are given per cop: any choice
  // of one position from each list is legal.
  json legal() const {
    if (match_->over() || match_->cops_to_move() != (human_ == "cops")) return nullptr;
    const GameState& s = match_->state();
    if (human_ == "robber") {
      json moves = json::array();
      for (const RobberMove& m : board_->robber_moves(s)) moves.push_back({{"vertex", m.vertex}, {"announce", m.announce}});
      return {{"side", "robber"}, {"moves", moves}};
    }
    if (s.turn == Turn::cop_placement) return {{"side", "cops"}, {"placement", true}, {"count", cop_count_}, {"positions", board_->cop_positions()}};
    json reach = json::array();
    for (int c : s.cops) reach.push_back(board_->cop_ball(c));
    return {{"side", "cops"}, {"placement", false}, {"reach", reach}};
  }

  // The scripted distance-2 robber's move for this ply, computed once so the
  // strategy's memory follows the game.
  json hint() {
    if (hint_ply_ != ply()) {
      const GameState& s = match_->state();
      hint_move_ = s.turn == Turn::robber_placement ? hint_->place(*board_, s) : hint_->move(*board_, s);
      hint_ply_ = ply();
    }
    return {{"vertex", hint_move_.vertex}, {"announce", hint_move_.announce}};
  }

  std::string id_;
  std::string preset_;
  std::string rules_;
  std::string human_;
  std::string ai_name_;
  int cop_count_ = 2;
  std::unique_ptr<PlanarGraph> graph_;
  std::unique_ptr<Board> board_;
  std::unique_ptr<CopStrategy> cops_;
  std::unique_ptr<RobberStrategy> robber_;
  std::unique_ptr<Match> match_;
  std::unique_ptr<D5Robber> hint_;
  long long hint_ply_ = -1;
  RobberMove hint_move_;
  std::mutex mutex_;
};

SessionStore::SessionStore() = default;
SessionStore::~SessionStore() = default;

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Reply SessionStore::create(const json& request) {
  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = "s" + std::to_string(next_id_++);
  }
  std::shared_ptr<Session> session;
  try {
    session = std::make_shared<Session>(id, request);
  } catch (const BudgetExceeded& e) {
    return error(400, std::string("solver budget exceeded: ") + e.what());
  } catch (const json::exception& e) {
    return error(400, std::string("bad request: ") + e.what());
  } catch (const std::exception& e) {
    return error(400, e.what());
  }
  json body = session->created();
  std::lock_guard lock(mutex_);
  sessions_[id] = session;
  return {201, body};
}

Reply SessionStore::get(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(s->mutex());
  return {200, s->snapshot()};
}

Reply SessionStore::move(const std::string& id, const json& request) {
  auto s = find(id);
  if (!s) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(s->mutex());
  try {
    return s->move(request);
  } catch (const json::exception& e) {
    return error(400, std::string("bad move: ") + e.what());
  }
}

Reply SessionStore::transcript(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(s->mutex());
  return {200, s->transcript()};
}

Reply SessionStore::remove(const std::string& id) {
  std::lock_guard lock(mutex_);
  if (sessions_.erase(id) == 0) return error(404, "unknown session '" + id + "'");
  return {200, json{{"deleted", id}}};
}

Reply SessionStore::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
      if (path[i] == '/') {
        ++i;
        continue;
      }
      const auto j = path.find('/', i);
      parts.push_back(path.substr(i, j == std::string::npos ? std::string::npos : j - i));
      i = j == std::string::npos ? path.size() : j;
    }
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) return error(404, "no route for " + path);
    auto parse = [&]() { return body.empty() ? json::object() : json::parse(body); };
    if (parts.size() == 1) {
      if (method != "POST") return error(404, "no route for " + method + " " + path);
      return create(parse());
    }
    const std::string& id = parts[1];
    if (parts.size() == 2) {
      if (method == "GET") return get(id);
      if (method == "DELETE") return remove(id);
    } else if (parts[2] == "move" && method == "POST") {
      return move(id, parse());
    } else if (parts[2] == "transcript" && method == "GET") {
      return transcript(id);
    }
    return error(404, "no route for " + method + " " + path);
  } catch (const json::exception& e) {
    return error(400, std::string("bad request: ") + e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

HttpService::HttpService(SessionStore& store) : store_(store) {}

HttpService::~HttpService() { stop(); }

int HttpService::start(int port, const std::string& host) {
  server_ = std::make_unique<httplib::Server>();
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Reply r = store_.handle(req.method, req.path, req.body);
    res.status = r.status;
    if (r.body.is_string())
      res.set_content(r.body.get<std::string>(), "application/x-ndjson");
    else
      res.set_content(r.body.dump(), "application/json");
  };
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
  const char* pattern = R"(/sessions(/.*)?)";
  server_->Get(pattern, handler);
  server_->Post(pattern, handler);
  server_->Delete(pattern, handler);
  server_->Options(pattern, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpService::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

void HttpService::wait() {
  if (thread_.joinable()) thread_.join();
}

void serve(int port, const std::string& host) {
  SessionStore store;
  HttpService service(store);
  service.start(port, host);
  service.wait();
}

}  // namespace pdcr
