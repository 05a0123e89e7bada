// verify.hpp
//
// Machine-checked statements about the constructions, each returning a JSON
// report with "ok" and a list of "violations" that name the failed inequality.

#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

namespace pdcr {

/// Shortest cop routes between shallow faces of one G_{n,s} face stay on
/// shallow faces. `sample_count` < 0 checks every pair.
nlohmann::json verify_lemma3(int n, int s, int r, int sample_count = -1, std::uint64_t seed = 1);

/// Robber routes of (2s+1)d steps between grid vertices, cop routes of at
/// least 3s(d-2) steps between shallow faces. `pairs` < 0 checks every pair.
nlohmann::json verify_lemma4(int n, int s, int r, int pairs = -1, std::uint64_t seed = 1);

struct Lemma2Options {
  int match_turns = 2000;    // plies against the solved cops
  int rollouts = 10000;      // randomized cop teams
  int rollout_turns = 400;   // plies per rollout
  std::uint64_t seed = 1;
};

/// Solves the distance-2 announcement game on D5 with two cops, checks the
/// safe start for every cop placement and runs the scripted robber.
nlohmann::json verify_lemma2(const Lemma2Options& options = {});

/// Closed-form vertex/edge counts and face censuses of the generators.
nlohmann::json verify_counts();

}  // namespace pdcr
