#include "rapm/boxscore.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rapm/errors.hpp"

namespace rapm {

using nlohmann::json;

namespace {

void check_box(const TeamBox& b) {
  for (double v : {b.fga, b.oreb, b.to, b.fta, b.stl})
    if (v < 0.0 || !std::isfinite(v))
      throw IntegrityError("negative box-score count for " + b.team);
  if (b.to_live || b.to_dead) {
    if (!b.to_live || !b.to_dead)
      throw IntegrityError("turnover split needs both live and dead counts (" +
                           b.team + ")");
    if (*b.to_live < 0.0 || *b.to_dead < 0.0)
      throw IntegrityError("negative turnover split for " + b.team);
    if (std::fabs(*b.to_live + *b.to_dead - b.to) > 1e-9)
      throw IntegrityError("live + dead turnovers do not sum to TO for " +
                           b.team);
  }
  for (const auto& [p, s] : b.player_steals)
    if (s < 0.0) throw IntegrityError("negative steals for " + p);
}

TeamBox box_from_json(const json& j) {
  TeamBox b;
  b.team = j.value("team", "");
  b.fga = j.value("fga", 0.0);
  b.oreb = j.value("oreb", 0.0);
  b.to = j.value("to", 0.0);
  b.fta = j.value("fta", 0.0);
  b.stl = j.value("stl", 0.0);
  if (j.contains("to_live")) b.to_live = j.at("to_live").get<double>();
  if (j.contains("to_dead")) b.to_dead = j.at("to_dead").get<double>();
  if (j.contains("player_steals"))
    for (const auto& [name, v] : j.at("player_steals").items())
      b.player_steals[name] = v.get<double>();
  check_box(b);
  return b;
}

}  // namespace

double oliver_possessions(const TeamBox& box, double ft_coeff) {
  if (ft_coeff < 0.0) throw ConfigError("free-throw coefficient is negative");
  check_box(box);
  return box.fga - box.oreb + box.to + ft_coeff * box.fta;
}

StealAudit audit_steal_constraint(double team_steals, double opp_live_to) {
  if (team_steals < 0.0 || opp_live_to < 0.0)
    throw IntegrityError("negative audit inputs");
  StealAudit a;
  a.steals = team_steals;
  a.live_to_bound = opp_live_to;
  if (team_steals > opp_live_to) {
    a.violated = true;
    a.excess = team_steals - opp_live_to;
  }
  return a;
}

StealAudit audit_player_steals(const std::map<std::string, double>& steals,
                               double opp_live_to) {
  double total = 0.0;
  for (const auto& [p, s] : steals) {
    if (s < 0.0) throw IntegrityError("negative steals for " + p);
    total += s;
  }
  return audit_steal_constraint(total, opp_live_to);
}

BiasResult bias_propagation(const TeamBox& box, double epsilon_to,
                            double ft_coeff) {
  BiasResult r;
  r.unbiased = oliver_possessions(box, ft_coeff);
  TeamBox inflated = box;
  inflated.to += epsilon_to;
  inflated.to_live.reset();  // the phantom turnovers have no split
  inflated.to_dead.reset();
  r.biased = oliver_possessions(inflated, ft_coeff);
  r.delta = r.biased - r.unbiased;
  return r;
}

std::vector<GameBox> read_box_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bad box-score JSON: ") + e.what());
  }
  const json& games = doc.contains("games") ? doc.at("games") : doc;
  if (!games.is_array()) throw ParseError("box-score JSON needs a game array");
  std::vector<GameBox> out;
  for (const auto& g : games) {
    GameBox gb;
    gb.id = g.value("id", "");
    if (!g.contains("home") || !g.contains("away"))
      throw ParseError("game " + gb.id + " lacks home/away boxes");
    gb.home = box_from_json(g.at("home"));
    gb.away = box_from_json(g.at("away"));
    out.push_back(std::move(gb));
  }
  return out;
}

std::vector<GameBox> read_box_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open box-score file: " + path);
  return read_box_json(in);
}

namespace {

json audit_side_json(const TeamBox& us, const TeamBox& them, double ft_coeff) {
  StealAudit a;
  bool bound_total = !them.to_live.has_value();
  a = audit_steal_constraint(us.stl, bound_total ? them.to : *them.to_live);
  a.bound_is_total = bound_total;
  json j;
  j["team"] = us.team;
  j["steals"] = a.steals;
  j["opp_live_to"] = a.live_to_bound;
  j["bound"] = bound_total ? "total_to" : "live_to";
  j["verdict"] = a.violated ? "violated" : "satisfied";
  if (a.violated) j["excess"] = a.excess;
  if (!us.player_steals.empty()) {
    StealAudit pa = audit_player_steals(
        us.player_steals, bound_total ? them.to : *them.to_live);
    json players;
    for (const auto& [p, s] : us.player_steals) players[p] = s;
    j["player_steals"] = players;
    j["player_total"] = pa.steals;
    j["player_verdict"] = pa.violated ? "violated" : "satisfied";
    if (pa.violated) j["player_excess"] = pa.excess;
  }
  j["oliver_possessions"] = oliver_possessions(us, ft_coeff);
  return j;
}

}  // namespace

std::string audit_report_json(const std::vector<GameBox>& games,
                              double ft_coeff) {
  json out;
  out["ft_coeff"] = ft_coeff;
  out["games"] = json::array();
  for (const auto& g : games) {
    json jg;
    jg["id"] = g.id;
    jg["home"] = audit_side_json(g.home, g.away, ft_coeff);
    jg["away"] = audit_side_json(g.away, g.home, ft_coeff);
    out["games"].push_back(std::move(jg));
  }
  return out.dump(2) + "\n";
}

}  // namespace rapm
