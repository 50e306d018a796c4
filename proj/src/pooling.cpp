#include "rapm/pooling.hpp"

#include <map>
#include <set>

#include "rapm/errors.hpp"

namespace rapm {

namespace {
constexpr char kUnitSep = '\x1f';
}

std::string player_season_key(const std::string& player,
                              const std::string& season) {
  return player + kUnitSep + season;
}

std::pair<std::string, std::string> split_player_season_key(
    const std::string& key) {
  auto pos = key.find(kUnitSep);
  if (pos == std::string::npos) return {key, ""};
  return {key.substr(0, pos), key.substr(pos + 1)};
}

SeasonDataset pool_seasons(
    const std::vector<std::pair<std::string, SeasonDataset>>& seasons) {
  if (seasons.empty()) throw ConfigError("nothing to pool");
  std::set<std::string> labels;
  for (const auto& [label, ds] : seasons) {
    if (label.empty()) throw ConfigError("empty season label");
    if (!labels.insert(label).second)
      throw ConfigError("duplicate season label: " + label);
    if (ds.records.size() % 2 != 0)
      throw IntegrityError("season " + label +
                           " has an odd row count; mirror parity would shift");
  }

  std::vector<StintRecord> pooled;
  for (const auto& [label, ds] : seasons) {
    for (const auto& rec : ds.records) {
      StintRecord r = rec;
      for (auto& p : r.o_players) p = player_season_key(p, label);
      for (auto& p : r.d_players) p = player_season_key(p, label);
      pooled.push_back(std::move(r));
    }
  }
  return dataset_from_records(std::move(pooled));
}

AggregateResult aggregate_rapm(const std::vector<SeasonValue>& per_season) {
  std::map<std::string, std::pair<double, double>> acc;  // wsum, weighted
  for (const auto& v : per_season) {
    if (v.poss < 0.0)
      throw ConfigError("negative possession weight for " + v.player);
    auto& a = acc[v.player];
    a.first += v.poss;
    a.second += v.poss * v.rapm;
  }
  AggregateResult out;
  for (const auto& [player, a] : acc) {
    if (a.first <= 0.0)
      out.skipped.push_back(player);
    else
      out.values.emplace_back(player, a.second / a.first);
  }
  return out;
}

}  // namespace rapm
