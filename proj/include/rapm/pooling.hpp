#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rapm/stint.hpp"

namespace rapm {

// Multi-season runs estimate one coefficient pair per player-season. The
// pooled roster keys are "player<US>season" with a unit-separator byte that
// cannot collide with real names; display code splits them back apart.
std::string player_season_key(const std::string& player,
                              const std::string& season);

// Returns (player, season); season is empty when the key is unpooled.
std::pair<std::string, std::string> split_player_season_key(
    const std::string& key);

// Concatenates the seasons' records in the order given, re-keying players to
// player-season identities, then rebuilds roster and accumulators. Every
// season must have an even row count so mirror parity survives, and labels
// must be unique.
SeasonDataset pool_seasons(
    const std::vector<std::pair<std::string, SeasonDataset>>& seasons);

struct SeasonValue {
  std::string player, season;
  double rapm = 0.0;
  double poss = 0.0;  // weight, usually the player-season possession total
};

struct AggregateResult {
  // Possession-weighted career ratings, sorted by player name.
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> skipped;  // zero total weight
};

AggregateResult aggregate_rapm(const std::vector<SeasonValue>& per_season);

}  // namespace rapm
