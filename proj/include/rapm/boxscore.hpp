#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rapm {

struct TeamBox {
  std::string team;
  double fga = 0, oreb = 0, to = 0, fta = 0, stl = 0;
  // Live/dead turnover split when the source distinguishes them. Steals can
  // only come from live-ball turnovers, so the split powers the audit.
  std::optional<double> to_live, to_dead;
  std::map<std::string, double> player_steals;  // empty when unavailable
};

struct GameBox {
  std::string id;
  TeamBox home, away;
};

// Possessions used: FGA - OREB + TO + coeff * FTA.
double oliver_possessions(const TeamBox& box, double ft_coeff = 0.44);

struct StealAudit {
  bool violated = false;
  double excess = 0.0;  // steals beyond the live-turnover supply
  double steals = 0.0;
  double live_to_bound = 0.0;
  bool bound_is_total = false;  // no live split; total TO used as the bound
};

// Team steals cannot exceed the opponent's live-ball turnovers.
StealAudit audit_steal_constraint(double team_steals, double opp_live_to);

// Same bound applied to a per-player attribution summed over the team.
StealAudit audit_player_steals(const std::map<std::string, double>& steals,
                               double opp_live_to);

struct BiasResult {
  double unbiased = 0.0, biased = 0.0, delta = 0.0;
};

// Adds epsilon phantom turnovers and reports the possession estimate shift;
// the estimator is linear in TO, so delta equals epsilon exactly.
BiasResult bias_propagation(const TeamBox& box, double epsilon_to,
                            double ft_coeff = 0.44);

std::vector<GameBox> read_box_json(std::istream& in);
std::vector<GameBox> read_box_json(const std::string& path);

// Per-game audit verdicts (both directions) as JSON.
std::string audit_report_json(const std::vector<GameBox>& games,
                              double ft_coeff = 0.44);

}  // namespace rapm
