#include "rapm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "rapm/errors.hpp"
#include "rapm/rng.hpp"

namespace rapm {

using nlohmann::json;

namespace {

void check_config(const SynthConfig& cfg) {
  if (cfg.teams < 2) throw ConfigError("need at least two teams");
  if (cfg.players_per_team < 5)
    throw ConfigError("need at least five players per team");
  if (cfg.games < 1 || cfg.stints_per_game < 1)
    throw ConfigError("need at least one game and one stint");
  if (!(cfg.mean_stint_poss > 1.0))
    throw ConfigError("mean stint length must exceed one possession");
  if (cfg.modal_lineup_prob < 0.0 || cfg.modal_lineup_prob > 1.0)
    throw ConfigError("modal lineup probability outside [0, 1]");
  if (cfg.split_rate < 0.0 || cfg.split_rate >= 1.0)
    throw ConfigError("split rate outside [0, 1)");
  if (cfg.noise_sigma < 0.0 || cfg.effect_spread < 0.0)
    throw ConfigError("negative scale parameter");
}

std::string team_name(int t) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d", t + 1);
  return buf;
}

std::array<std::string, 5> pick_lineup(Rng& rng, const SynthConfig& cfg,
                                       int team,
                                       const std::vector<TruePlayer>& truth) {
  const int base = team * cfg.players_per_team;
  std::array<int, 5> chosen;
  if (rng.uniform() < cfg.modal_lineup_prob) {
    for (int i = 0; i < 5; ++i) chosen[static_cast<std::size_t>(i)] = i;
  } else {
    std::vector<int> idx(static_cast<std::size_t>(cfg.players_per_team));
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    std::sort(idx.begin(), idx.begin() + 5);
    for (int i = 0; i < 5; ++i)
      chosen[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)];
  }
  std::array<std::string, 5> names;
  for (int i = 0; i < 5; ++i)
    names[static_cast<std::size_t>(i)] =
        truth[static_cast<std::size_t>(base + chosen[static_cast<std::size_t>(i)])].name;
  return names;
}

}  // namespace

SynthSeason generate_season(const SynthConfig& cfg) {
  check_config(cfg);

  SynthSeason season;
  season.true_baseline = cfg.baseline;

  Rng master(splitmix64(cfg.seed));
  const int n_players = cfg.teams * cfg.players_per_team;
  season.truth.reserve(static_cast<std::size_t>(n_players));
  for (int t = 0; t < cfg.teams; ++t) {
    for (int p = 0; p < cfg.players_per_team; ++p) {
      TruePlayer tp;
      tp.team = team_name(t);
      tp.name = tp.team + "P" + std::to_string(p + 1);
      tp.beta_off = master.normal(0.0, cfg.effect_spread);
      tp.beta_def = master.normal(0.0, cfg.effect_spread);
      season.truth.push_back(std::move(tp));
    }
  }
  double mean_off = 0.0, mean_def = 0.0;
  for (const auto& tp : season.truth) {
    mean_off += tp.beta_off;
    mean_def += tp.beta_def;
  }
  mean_off /= n_players;
  mean_def /= n_players;
  std::map<std::string, const TruePlayer*> by_name;
  for (auto& tp : season.truth) {
    tp.orapm = tp.beta_off - mean_off;
    tp.drapm = tp.beta_def - mean_def;
    tp.rapm = tp.orapm + tp.drapm;
    by_name[tp.name] = &tp;
  }

  auto lineup_mu = [&](const std::array<std::string, 5>& off,
                       const std::array<std::string, 5>& def) {
    double mu = cfg.baseline;
    for (const auto& p : off) mu += by_name.at(p)->beta_off;
    for (const auto& p : def) mu -= by_name.at(p)->beta_def;
    return mu;
  };

  const int ns = cfg.stints_per_game;
  for (int g = 0; g < cfg.games; ++g) {
    const int home = static_cast<int>(master.below(
        static_cast<std::uint64_t>(cfg.teams)));
    int away = static_cast<int>(master.below(
        static_cast<std::uint64_t>(cfg.teams - 1)));
    if (away >= home) ++away;

    Rng rng(splitmix64(cfg.seed ^ (0xA0761D6478BD642Full * (g + 1))));

    GameLog log;
    log.home_team = team_name(home);
    log.away_team = team_name(away);
    log.stints.resize(static_cast<std::size_t>(ns));

    // Lineups and whole-possession counts. Sides share the stint count so
    // game totals stay within the alternation bound.
    std::vector<double> whole(static_cast<std::size_t>(ns));
    for (int s = 0; s < ns; ++s) {
      auto& st = log.stints[static_cast<std::size_t>(s)];
      st.home_players = pick_lineup(rng, cfg, home, season.truth);
      st.away_players = pick_lineup(rng, cfg, away, season.truth);
      whole[static_cast<std::size_t>(s)] = static_cast<double>(
          1 + rng.geometric(1.0 / cfg.mean_stint_poss));
    }
    std::vector<double> whole_home = whole, whole_away = whole;
    if (rng.uniform() < 0.5) {
      auto& tgt = rng.below(2) == 0 ? whole_home : whole_away;
      tgt[static_cast<std::size_t>(rng.below(
          static_cast<std::uint64_t>(ns)))] += 1.0;
    }

    // Split possessions straddling a boundary: counted raw in both stints,
    // scored where they conclude.
    std::vector<int> open_home(static_cast<std::size_t>(ns), 0),
        open_away(static_cast<std::size_t>(ns), 0);
    for (int b = 0; b + 1 < ns; ++b) {
      if (cfg.split_rate > 0.0 && rng.uniform() < cfg.split_rate) {
        log.split_events.push_back({TeamSide::home, b});
        ++log.split_count_home;
        ++open_home[static_cast<std::size_t>(b) + 1];
      }
      if (cfg.split_rate > 0.0 && rng.uniform() < cfg.split_rate) {
        log.split_events.push_back({TeamSide::away, b});
        ++log.split_count_away;
        ++open_away[static_cast<std::size_t>(b) + 1];
      }
    }

    double poss_home = 0.0, poss_away = 0.0;
    for (int s = 0; s < ns; ++s) {
      auto& st = log.stints[static_cast<std::size_t>(s)];
      const std::size_t us = static_cast<std::size_t>(s);
      const double score_home = whole_home[us] + open_home[us];
      const double score_away = whole_away[us] + open_away[us];
      const int close_home = (s + 1 < ns && std::any_of(
          log.split_events.begin(), log.split_events.end(),
          [&](const SplitEvent& e) {
            return e.team == TeamSide::home && e.boundary == s;
          })) ? 1 : 0;
      const int close_away = (s + 1 < ns && std::any_of(
          log.split_events.begin(), log.split_events.end(),
          [&](const SplitEvent& e) {
            return e.team == TeamSide::away && e.boundary == s;
          })) ? 1 : 0;
      st.home_poss_raw = score_home + close_home;
      st.away_poss_raw = score_away + close_away;
      poss_home += score_home;
      poss_away += score_away;

      const double mu_home = lineup_mu(st.home_players, st.away_players);
      const double mu_away = lineup_mu(st.away_players, st.home_players);
      const double y_home =
          rng.normal(mu_home, cfg.noise_sigma / std::sqrt(score_home));
      const double y_away =
          rng.normal(mu_away, cfg.noise_sigma / std::sqrt(score_away));
      st.home_pts = y_home * score_home / 100.0;
      st.away_pts = y_away * score_away / 100.0;
      if (cfg.discretize) {
        st.home_pts = std::max(0.0, static_cast<double>(std::llround(st.home_pts)));
        st.away_pts = std::max(0.0, static_cast<double>(std::llround(st.away_pts)));
      }
    }

    double total_home_pts = 0.0, total_away_pts = 0.0;
    for (const auto& st : log.stints) {
      total_home_pts += st.home_pts;
      total_away_pts += st.away_pts;
    }
    log.official_final = {total_home_pts, total_away_pts};

    season.true_poss_home.push_back(poss_home);
    season.true_poss_away.push_back(poss_away);
    season.game_logs.push_back(std::move(log));
  }

  std::vector<GameLog> settled;
  settled.reserve(season.game_logs.size());
  for (const auto& log : season.game_logs)
    settled.push_back(
        apportion_split_possessions(log, SplitConvention::half_half));
  season.records = export_stints(settled);
  return season;
}

void write_truth_json(std::ostream& out, const SynthSeason& season) {
  json j;
  j["baseline"] = season.true_baseline;
  j["players"] = json::array();
  for (const auto& tp : season.truth)
    j["players"].push_back({{"name", tp.name},
                            {"team", tp.team},
                            {"beta_off", tp.beta_off},
                            {"beta_def", tp.beta_def},
                            {"orapm", tp.orapm},
                            {"drapm", tp.drapm},
                            {"rapm", tp.rapm}});
  j["game_possessions"] = {{"home", season.true_poss_home},
                           {"away", season.true_poss_away}};
  out << j.dump(2) << "\n";
}

}  // namespace rapm
