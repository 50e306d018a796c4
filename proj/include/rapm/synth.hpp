#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rapm/qc.hpp"
#include "rapm/stint.hpp"

namespace rapm {

// Season simulator for the statistical model only: stint scoring rates are
// y ~ N(x'beta, sigma^2 / w). No shot clocks, no fouls, no substitution
// realism beyond lineup churn.
struct SynthConfig {
  int teams = 8;
  int players_per_team = 9;
  int games = 200;
  int stints_per_game = 30;
  double baseline = 101.0;       // true intercept, points per 100
  double effect_spread = 2.5;    // sd of true offense/defense effects
  double noise_sigma = 9.5;      // per-100 noise scale at unit weight
  double mean_stint_poss = 3.38; // shifted-geometric mean, right skewed
  double modal_lineup_prob = 0.35;  // chance a stint uses the team's top five
  double split_rate = 0.0;       // per-team chance of a split at a boundary
  bool discretize = true;        // round stint points to integers, floor 0
  std::uint64_t seed = 1;
};

struct TruePlayer {
  std::string name, team;
  double beta_off = 0.0, beta_def = 0.0;
  double orapm = 0.0, drapm = 0.0, rapm = 0.0;  // centered truth
};

struct SynthSeason {
  std::vector<StintRecord> records;  // mirrored pairs, splits apportioned 1/2
  std::vector<GameLog> game_logs;    // raw tallies with split events intact
  std::vector<TruePlayer> truth;
  double true_baseline = 0.0;
  // Independent possession recount per game, from the event bookkeeping.
  std::vector<double> true_poss_home, true_poss_away;
};

SynthSeason generate_season(const SynthConfig& cfg);

void write_truth_json(std::ostream& out, const SynthSeason& season);

}  // namespace rapm
