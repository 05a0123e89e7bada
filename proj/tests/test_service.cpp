#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <httplib.h>

#include <cmath>
#include <random>

#include "pdcr/generators.hpp"
#include "pdcr/graph_io.hpp"
#include "pdcr/presets.hpp"
#include "pdcr/service.hpp"
#include "pdcr/strategies.hpp"

using namespace pdcr;
using nlohmann::json;

namespace {

json create(SessionStore& store, const json& request) {
  Reply r = store.handle("POST", "/sessions", request.dump());
  INFO(r.body.dump());
  REQUIRE(r.status == 201);
  return r.body;
}

Reply post_move(SessionStore& store, const std::string& id, const json& move) {
  return store.handle("POST", "/sessions/" + id + "/move", move.dump());
}

// A client that only ever picks from the served legal-move set.
json pick(const json& legal, std::mt19937& rng) {
  if (legal["side"] == "robber") {
    const auto& moves = legal["moves"];
    return moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
  }
  std::vector<int> cops;
  if (legal["placement"]) {
    const int n = legal["positions"];
    const std::size_t k = legal["count"];
    for (std::size_t i = 0; i < k; ++i) cops.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
  } else {
    for (const auto& ball : legal["reach"]) cops.push_back(ball[std::uniform_int_distribution<std::size_t>(0, ball.size() - 1)(rng)]);
  }
  return {{"cops", cops}};
}

GameState replay_transcript(SessionStore& store, const std::string& id, const PlanarGraph& g, const std::string& rules) {
  Reply r = store.handle("GET", "/sessions/" + id + "/transcript", "");
  REQUIRE(r.status == 200);
  Transcript t = transcript_from_jsonl(r.body.get<std::string>());
  Board b(g, rules_preset(rules));
  return replay(b, t);
}

// Every legal human robber line against the session's AI ends in capture.
void expect_all_lines_captured(const json& request, std::vector<json> prefix, int depth, int& lines) {
  SessionStore store;
  json s = create(store, request);
  const std::string id = s["id"];
  for (const auto& m : prefix) {
    Reply r = post_move(store, id, m);
    REQUIRE(r.status == 200);
    s = r.body;
  }
  if (s["over"]) {
    ++lines;
    CHECK(s["outcome"]["outcome"] == "cops-win");
    CHECK(s["outcome"]["reason"] == "capture");
    CHECK(s["captured"] == true);
    return;
  }
  REQUIRE(depth > 0);
  for (const auto& m : s["legal"]["moves"]) {
    prefix.push_back(m);
    expect_all_lines_captured(request, prefix, depth - 1, lines);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("graph presets") {
  CHECK(graph_preset("cycle:6").vertex_count() == 6);
  CHECK(graph_preset("d5").vertex_count() == 170);
  CHECK(graph_preset("gnsr:3,1,7").vertex_count() == build_gnsr(3, 1, 7).vertex_count());
  CHECK(graph_preset("glayers:2").vertex_count() == 270 + 180 * 2);
  CHECK(graph_preset("grid:4/norm4").max_degree() <= 4);
  CHECK_THROWS_AS(graph_preset("nope"), GraphError);
  CHECK_THROWS_AS(graph_preset("gnsr:3,1"), GraphError);
  CHECK_THROWS_AS(graph_preset("cycle:x"), GraphError);
}

TEST_CASE("board layouts are finite and cover every face") {
  for (const char* spec : {"cycle:6", "k4", "cube", "dodecahedron", "d5", "glayers:2", "gnsr:3,1,7", "path:4"}) {
    CAPTURE(spec);
    PlanarGraph g = graph_preset(spec);
    BoardLayout layout = board_layout(g);
    REQUIRE(static_cast<int>(layout.positions.size()) == g.vertex_count());
    for (const Point& p : layout.positions) CHECK((std::isfinite(p.x) && std::isfinite(p.y)));
    CHECK(layout.outer >= 0);
    json j = layout_to_json(g, layout);
    CHECK(static_cast<int>(j["faces"].size()) == g.face_count());
  }
}

TEST_CASE("human robber on C6 against two solver cops is always captured") {
  json request{{"graph", "cycle:6"}, {"rules", "surround"}, {"human", "robber"}, {"ai", "solver"}, {"cop_count", 2}};
  int lines = 0;
  expect_all_lines_captured(request, {}, 12, lines);
  CHECK(lines >= 6);
}

TEST_CASE("human robber under classical rules on C6 is always captured") {
  json request{{"graph", "cycle:6"}, {"rules", "classical"}, {"human", "robber"}, {"ai", "solver"}, {"cop_count", 2}};
  int lines = 0;
  expect_all_lines_captured(request, {}, 20, lines);
  CHECK(lines >= 6);
}

TEST_CASE("illegal moves are rejected and leave the state unchanged") {
  SessionStore store;
  json s = create(store, {{"graph", "cube"}, {"human", "robber"}, {"ai", "greedy"}, {"cop_count", 1}});
  const std::string id = s["id"];
  REQUIRE(post_move(store, id, {{"vertex", 0}}).status == 200);
  const json before = store.get(id).body;
  REQUIRE(before["to_move"] == "robber");
  const int at = before["state"]["robber"];
  const PlanarGraph cube = small_family("cube");
  int far = -1;
  const auto nb = cube.neighbors(at);
  for (int v = 0; v < cube.vertex_count(); ++v)
    if (v != at && std::find(nb.begin(), nb.end(), v) == nb.end()) far = v;
  Reply r = post_move(store, id, {{"vertex", far}});
  CHECK(r.status == 400);
  CHECK(r.body["error"] == "robber target out of reach");
  CHECK(post_move(store, id, {{"vertex", 99}}).status == 400);
  CHECK(post_move(store, id, {{"cops", {0}}}).status == 400);
  CHECK(post_move(store, id, json::object()).status == 400);
  CHECK(store.handle("POST", "/sessions/" + id + "/move", "{not json").status == 400);
  CHECK(store.get(id).body == before);
}

TEST_CASE("status codes") {
  SessionStore store;
  CHECK(store.handle("GET", "/sessions/zzz", "").status == 404);
  CHECK(store.handle("POST", "/sessions/zzz/move", "{}").status == 404);
  CHECK(store.handle("GET", "/elsewhere", "").status == 404);
  CHECK(store.handle("POST", "/sessions", R"({"graph": "nope"})").status == 400);
  CHECK(store.handle("POST", "/sessions", R"({"graph": "cube", "ai": "nope"})").status == 400);
  CHECK(store.handle("POST", "/sessions", R"({"graph": "cube", "human": "both"})").status == 400);

  json s = create(store, {{"graph", "cube"}, {"human", "robber"}, {"ai", "greedy"}, {"cop_count", 1}});
  const std::string id = s["id"];
  CHECK(post_move(store, id, {{"vertex", 0}, {"ply", 7}}).status == 409);
  CHECK(post_move(store, id, {{"vertex", 0}, {"ply", s["ply"]}}).status == 200);

  // C6 ends at placement: every later move is out of turn.
  json c6 = create(store, {{"graph", "cycle:6"}, {"ai", "solver"}, {"cop_count", 2}});
  const std::string cid = c6["id"];
  REQUIRE(post_move(store, cid, {{"vertex", 0}}).status == 200);
  CHECK(store.get(cid).body["over"] == true);
  CHECK(post_move(store, cid, {{"vertex", 1}}).status == 409);

  CHECK(store.size() == 2);
  CHECK(store.handle("DELETE", "/sessions/" + id, "").status == 200);
  CHECK(store.handle("DELETE", "/sessions/" + id, "").status == 404);
  CHECK(store.handle("GET", "/sessions/" + id, "").status == 404);
  CHECK(store.size() == 1);
}

TEST_CASE("uploaded graphs are accepted") {
  SessionStore store;
  json s = create(store, {{"graph", graph_to_json(small_family("k4"))}, {"human", "robber"}, {"ai", "delta3"}, {"cop_count", 3}});
  CHECK(s["preset"] == "");
  CHECK(s["graph"]["vertex_count"] == 4);
  CHECK(s["layout"]["vertices"].size() == 4);
}

TEST_CASE("headless clients only submit served moves and transcripts replay") {
  struct Setup {
    json request;
    std::string graph;
  };
  const std::vector<Setup> setups = {
      {{{"graph", "cube"}, {"human", "robber"}, {"ai", "greedy"}, {"cop_count", 1}}, "cube"},
      {{{"graph", "dodecahedron"}, {"human", "robber"}, {"ai", "delta3"}, {"cop_count", 3}}, "dodecahedron"},
      {{{"graph", "octahedron"}, {"human", "cops"}, {"ai", "random"}, {"cop_count", 3}}, "octahedron"},
      {{{"graph", "d5"}, {"rules", "lemma2"}, {"human", "robber"}, {"ai", "random"}, {"cop_count", 2}}, "d5"},
      {{{"graph", "d5"}, {"rules", "lemma2"}, {"human", "cops"}, {"ai", "d5"}, {"cop_count", 2}}, "d5"},
      {{{"graph", "grid:4"}, {"rules", "velocity:2,1"}, {"human", "cops"}, {"ai", "random"}, {"cop_count", 2}}, "grid:4"},
  };
  std::mt19937 rng(7);
  for (const auto& setup : setups) {
    for (int round = 0; round < 5; ++round) {
      CAPTURE(setup.request.dump());
      SessionStore store;
      json request = setup.request;
      request["turn_budget"] = 60;
      request["seed"] = round;
      json s = create(store, request);
      const std::string id = s["id"];
      const PlanarGraph g = graph_preset(setup.graph);
      const std::string rules = s["rules"];
      Board b(g, rules_preset(rules));
      while (!s["over"]) {
        const json legal = s["legal"];
        REQUIRE(legal.is_object());
        CHECK(legal["side"] == s["human"]);
        if (legal["side"] == "robber") {
          // The served set is exactly the rules' set.
          const auto moves = b.robber_moves(state_from_json(s["state"]));
          CHECK(legal["moves"].size() == moves.size());
        }
        json m = pick(legal, rng);
        m["ply"] = s["ply"];
        Reply r = post_move(store, id, m);
        INFO(m.dump());
        INFO(r.body.dump());
        REQUIRE(r.status == 200);
        s = r.body;
      }
      CHECK(replay_transcript(store, id, g, rules) == state_from_json(s["state"]));
    }
  }
}

TEST_CASE("following the hint on D5 survives the solved cops") {
  SessionStore store;
  json s = create(store, {{"graph", "d5"}, {"rules", "lemma2"}, {"human", "robber"}, {"ai", "solver"}, {"cop_count", 2}, {"turn_budget", 300}});
  const std::string id = s["id"];
  const PlanarGraph d5 = build_D5();
  const auto dist = all_pairs_distances(d5.adjacency());
  while (!s["over"]) {
    REQUIRE(s.contains("hint"));
    Reply r = post_move(store, id, s["hint"]);
    REQUIRE(r.status == 200);
    s = r.body;
    const GameState st = state_from_json(s["state"]);
    for (int c : st.cops) CHECK(dist[c][st.robber] >= 2);
  }
  CHECK(s["outcome"]["reason"] == "turn-budget");
  CHECK(s["outcome"]["outcome"] == "robber-survives");
  CHECK(replay_transcript(store, id, d5, "lemma2") == state_from_json(s["state"]));

  json other = create(store, {{"graph", "cube"}, {"ai", "greedy"}, {"cop_count", 1}});
  CHECK_FALSE(other.contains("hint"));
}

TEST_CASE("loopback HTTP round trip") {
  SessionStore store;
  HttpService service(store);
  const int port = service.start(0);
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);

  auto created = client.Post("/sessions", R"({"graph": "cube", "ai": "greedy", "cop_count": 1})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const json s = json::parse(created->body);
  const std::string id = s["id"];
  CHECK(s["schema"] == kSessionSchemaVersion);
  CHECK(s["layout"]["vertices"].size() == 8);

  auto moved = client.Post(("/sessions/" + id + "/move").c_str(), R"({"vertex": 3})", "application/json");
  REQUIRE(moved);
  CHECK(moved->status == 200);
  CHECK(json::parse(moved->body)["state"]["robber"] == 3);

  auto bad = client.Post(("/sessions/" + id + "/move").c_str(), R"({"vertex": 3, "announce": 1})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  auto got = client.Get(("/sessions/" + id).c_str());
  REQUIRE(got);
  CHECK(got->status == 200);

  auto transcript = client.Get(("/sessions/" + id + "/transcript").c_str());
  REQUIRE(transcript);
  CHECK(transcript->status == 200);
  CHECK(transcript_from_jsonl(transcript->body).entries.size() >= 2);

  auto removed = client.Delete(("/sessions/" + id).c_str());
  REQUIRE(removed);
  CHECK(removed->status == 200);
  auto missing = client.Get(("/sessions/" + id).c_str());
  REQUIRE(missing);
  CHECK(missing->status == 404);
  service.stop();
}
