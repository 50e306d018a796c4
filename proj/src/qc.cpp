#include "rapm/qc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "rapm/errors.hpp"

namespace rapm {

using nlohmann::json;

namespace {

void check_split_tags(const GameLog& log) {
  int tagged_home = 0, tagged_away = 0;
  const int last_boundary = static_cast<int>(log.stints.size()) - 2;
  for (const auto& ev : log.split_events) {
    if (ev.boundary < 0 || ev.boundary > last_boundary)
      throw IntegrityError("split event at impossible boundary " +
                           std::to_string(ev.boundary));
    (ev.team == TeamSide::home ? tagged_home : tagged_away)++;
  }
  if (tagged_home != log.split_count_home ||
      tagged_away != log.split_count_away)
    throw IntegrityError("untagged split possessions: declared " +
                         std::to_string(log.split_count_home) + "/" +
                         std::to_string(log.split_count_away) + ", tagged " +
                         std::to_string(tagged_home) + "/" +
                         std::to_string(tagged_away));
}

}  // namespace

std::pair<double, double> corrected_possession_totals(const GameLog& log) {
  if (!log.split_events.empty() || log.split_count_home > 0 ||
      log.split_count_away > 0)
    check_split_tags(log);
  double home = 0.0, away = 0.0;
  for (const auto& s : log.stints) {
    home += s.home_poss_raw;
    away += s.away_poss_raw;
  }
  return {home - log.split_count_home, away - log.split_count_away};
}

GameLog apportion_split_possessions(const GameLog& log, SplitConvention conv) {
  check_split_tags(log);
  GameLog out = log;
  for (const auto& ev : log.split_events) {
    double close_cut = 0.0, open_cut = 0.0;  // subtracted from the raw tally
    switch (conv) {
      case SplitConvention::half_half: close_cut = open_cut = 0.5; break;
      case SplitConvention::close_full: close_cut = 0.0; open_cut = 1.0; break;
      case SplitConvention::open_full: close_cut = 1.0; open_cut = 0.0; break;
    }
    auto& closing = out.stints[static_cast<std::size_t>(ev.boundary)];
    auto& opening = out.stints[static_cast<std::size_t>(ev.boundary) + 1];
    double& c = ev.team == TeamSide::home ? closing.home_poss_raw
                                          : closing.away_poss_raw;
    double& o = ev.team == TeamSide::home ? opening.home_poss_raw
                                          : opening.away_poss_raw;
    c -= close_cut;
    o -= open_cut;
    if (c < 0.0 || o < 0.0)
      throw IntegrityError("apportionment drove a stint tally negative at "
                           "boundary " +
                           std::to_string(ev.boundary));
  }
  out.split_count_home = 0;
  out.split_count_away = 0;
  out.split_events.clear();
  return out;
}

BalanceVerdict check_possession_balance(double w_home, double w_away,
                                        bool ended_live) {
  const double bound = ended_live ? 2.0 : 1.0;
  return std::fabs(w_home - w_away) <= bound ? BalanceVerdict::pass
                                             : BalanceVerdict::review;
}

namespace {

bool five_distinct(const std::array<std::string, 5>& a) {
  std::set<std::string> s(a.begin(), a.end());
  if (s.size() != 5) return false;
  for (const auto& p : a)
    if (p.empty()) return false;
  return true;
}

bool disjoint(const std::array<std::string, 5>& a,
              const std::array<std::string, 5>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x == y) return false;
  return true;
}

// Replays logged substitutions from the opening lineup and compares the
// resulting five to each stint.
bool replay_side(const GameLog& log, TeamSide side) {
  std::set<std::string> active;
  const auto& first = side == TeamSide::home ? log.stints[0].home_players
                                             : log.stints[0].away_players;
  active.insert(first.begin(), first.end());
  for (std::size_t b = 0; b + 1 < log.stints.size(); ++b) {
    for (const auto& sub : log.substitutions) {
      if (sub.team != side || sub.boundary != static_cast<int>(b)) continue;
      if (!active.erase(sub.out_player)) return false;
      if (!active.insert(sub.in_player).second) return false;
    }
    const auto& next = side == TeamSide::home
                           ? log.stints[b + 1].home_players
                           : log.stints[b + 1].away_players;
    std::set<std::string> want(next.begin(), next.end());
    if (want != active) return false;
  }
  return true;
}

}  // namespace

QcReport run_qc(const GameLog& log, const GameBox* box, double ft_coeff,
                double minutes_tolerance, double possession_tolerance) {
  if (log.stints.empty()) throw ConfigError("game log has no stints");
  if (!log.official_final)
    throw ConfigError("game log lacks the official final score");

  QcReport rep;

  // Score reconciliation is exact; a point unaccounted for is a point wrong.
  double home_pts = 0.0, away_pts = 0.0;
  for (const auto& s : log.stints) {
    home_pts += s.home_pts;
    away_pts += s.away_pts;
  }
  rep.score_ok = home_pts == log.official_final->first &&
                 away_pts == log.official_final->second;

  // Lineup consistency. Full replay when substitution events exist;
  // otherwise structural checks plus a flag on total lineup turnover
  // between adjacent stints, which film logs should never produce
  // mid-period.
  rep.lineup_ok = true;
  for (const auto& s : log.stints) {
    if (!five_distinct(s.home_players) || !five_distinct(s.away_players) ||
        !disjoint(s.home_players, s.away_players)) {
      rep.lineup_ok = false;
      break;
    }
  }
  rep.lineup_replayed = log.has_substitutions;
  if (rep.lineup_ok && log.has_substitutions) {
    rep.lineup_ok =
        replay_side(log, TeamSide::home) && replay_side(log, TeamSide::away);
  } else if (rep.lineup_ok) {
    for (std::size_t i = 0; i + 1 < log.stints.size(); ++i) {
      const auto& a = log.stints[i];
      const auto& b = log.stints[i + 1];
      if (disjoint(a.home_players, b.home_players) ||
          disjoint(a.away_players, b.away_players))
        rep.lineup_gaps.push_back(static_cast<int>(i));
    }
  }

  // Minutes need per-stint durations and an official minutes table.
  bool have_durations = !log.stints.empty();
  for (const auto& s : log.stints)
    if (!s.duration_min) have_durations = false;
  if (have_durations && !log.official_minutes.empty()) {
    rep.minutes_evaluated = true;
    std::map<std::string, double> implied;
    for (const auto& s : log.stints) {
      for (const auto& p : s.home_players) implied[p] += *s.duration_min;
      for (const auto& p : s.away_players) implied[p] += *s.duration_min;
    }
    std::set<std::string> names;
    for (const auto& [p, m] : implied) names.insert(p);
    for (const auto& [p, m] : log.official_minutes) names.insert(p);
    for (const auto& p : names) {
      const double imp = implied.count(p) ? implied.at(p) : 0.0;
      const double off =
          log.official_minutes.count(p) ? log.official_minutes.at(p) : 0.0;
      if (std::fabs(imp - off) > minutes_tolerance)
        rep.minutes_flags.push_back({p, imp, off});
    }
  }

  auto [w_home, w_away] = corrected_possession_totals(log);
  rep.w_home = w_home;
  rep.w_away = w_away;
  rep.balance = check_possession_balance(w_home, w_away, log.ended_live);

  // Plausibility flags only; a disagreement with a derived estimate is
  // never grounds for exclusion.
  if (box) {
    rep.possession_evaluated = true;
    const double est_home = oliver_possessions(box->home, ft_coeff);
    const double est_away = oliver_possessions(box->away, ft_coeff);
    char buf[160];
    if (std::fabs(w_home - est_home) > possession_tolerance) {
      std::snprintf(buf, sizeof buf,
                    "home counted %.1f vs estimate %.2f", w_home, est_home);
      rep.possession_flags.push_back(buf);
    }
    if (std::fabs(w_away - est_away) > possession_tolerance) {
      std::snprintf(buf, sizeof buf,
                    "away counted %.1f vs estimate %.2f", w_away, est_away);
      rep.possession_flags.push_back(buf);
    }
  }

  const bool exclude = log.footage_insufficient ||
                       (!rep.score_ok && log.score_irreconcilable) ||
                       (!rep.lineup_ok && log.lineup_irresolvable);
  const bool review = !rep.score_ok || !rep.lineup_ok ||
                      !rep.lineup_gaps.empty() || !rep.minutes_flags.empty() ||
                      !rep.possession_flags.empty() ||
                      rep.balance == BalanceVerdict::review;
  rep.verdict = exclude ? QcVerdict::exclude
                        : (review ? QcVerdict::review : QcVerdict::pass);
  return rep;
}

std::vector<StintRecord> export_stints(const std::vector<GameLog>& logs) {
  std::vector<StintRecord> out;
  for (const auto& log : logs) {
    if (log.split_count_home != 0 || log.split_count_away != 0 ||
        !log.split_events.empty())
      throw IntegrityError("apportion split possessions before export");
    for (std::size_t s = 0; s < log.stints.size(); ++s) {
      const auto& st = log.stints[s];
      StintRecord a, b;
      a.o_team = log.home_team;
      a.d_team = log.away_team;
      a.o_players = st.home_players;
      a.d_players = st.away_players;
      a.o_poss = st.home_poss_raw;
      a.d_poss = st.away_poss_raw;
      a.o_score = st.home_pts;
      a.d_score = st.away_pts;
      b.o_team = a.d_team;
      b.d_team = a.o_team;
      b.o_players = a.d_players;
      b.d_players = a.o_players;
      b.o_poss = a.d_poss;
      b.d_poss = a.o_poss;
      b.o_score = a.d_score;
      b.d_score = a.o_score;
      if (s % 2 == 0) {
        out.push_back(std::move(a));
        out.push_back(std::move(b));
      } else {
        out.push_back(std::move(b));
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

namespace {

TeamSide side_from_string(const std::string& s) {
  if (s == "home") return TeamSide::home;
  if (s == "away") return TeamSide::away;
  throw ParseError("team side must be 'home' or 'away', got '" + s + "'");
}

}  // namespace

GameLog game_log_from_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bad game log JSON: ") + e.what());
  }
  GameLog log;
  log.home_team = doc.value("home_team", "");
  log.away_team = doc.value("away_team", "");
  if (doc.contains("official_final")) {
    const auto& f = doc.at("official_final");
    log.official_final = {f.at("home").get<double>(),
                          f.at("away").get<double>()};
  }
  if (doc.contains("official_minutes"))
    for (const auto& [name, v] : doc.at("official_minutes").items())
      log.official_minutes[name] = v.get<double>();
  if (doc.contains("split_counts")) {
    log.split_count_home = doc.at("split_counts").value("home", 0);
    log.split_count_away = doc.at("split_counts").value("away", 0);
  }
  if (doc.contains("split_events"))
    for (const auto& ev : doc.at("split_events"))
      log.split_events.push_back({side_from_string(ev.at("team")),
                                  ev.at("boundary").get<int>()});
  if (doc.contains("substitutions")) {
    log.has_substitutions = true;
    for (const auto& ev : doc.at("substitutions"))
      log.substitutions.push_back({ev.at("boundary").get<int>(),
                                   side_from_string(ev.at("team")),
                                   ev.at("out").get<std::string>(),
                                   ev.at("in").get<std::string>()});
  }
  log.ended_live = doc.value("ended_live", false);
  if (doc.contains("flags")) {
    const auto& f = doc.at("flags");
    log.footage_insufficient = f.value("footage_insufficient", false);
    log.score_irreconcilable = f.value("score_irreconcilable", false);
    log.lineup_irresolvable = f.value("lineup_irresolvable", false);
  }
  if (!doc.contains("stints")) throw ParseError("game log lacks stints");
  for (const auto& js : doc.at("stints")) {
    GameStint st;
    const auto& hp = js.at("home_players");
    const auto& ap = js.at("away_players");
    if (hp.size() != 5 || ap.size() != 5)
      throw IntegrityError("stint lineups must list exactly five players");
    for (std::size_t i = 0; i < 5; ++i) {
      st.home_players[i] = hp[i].get<std::string>();
      st.away_players[i] = ap[i].get<std::string>();
    }
    st.home_poss_raw = js.at("home_poss").get<double>();
    st.away_poss_raw = js.at("away_poss").get<double>();
    st.home_pts = js.at("home_pts").get<double>();
    st.away_pts = js.at("away_pts").get<double>();
    if (js.contains("duration_min"))
      st.duration_min = js.at("duration_min").get<double>();
    log.stints.push_back(std::move(st));
  }
  return log;
}

GameLog game_log_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open game log: " + path);
  return game_log_from_json(in);
}

namespace {

const char* verdict_name(QcVerdict v) {
  switch (v) {
    case QcVerdict::pass: return "pass";
    case QcVerdict::review: return "review";
    case QcVerdict::exclude: return "exclude";
  }
  return "?";
}

}  // namespace

std::string qc_report_json(const GameLog& log, const QcReport& rep) {
  json j;
  j["home_team"] = log.home_team;
  j["away_team"] = log.away_team;
  j["score_ok"] = rep.score_ok;
  j["lineup_ok"] = rep.lineup_ok;
  j["lineup_replayed"] = rep.lineup_replayed;
  j["lineup_gaps"] = rep.lineup_gaps;
  j["minutes_evaluated"] = rep.minutes_evaluated;
  j["minutes_flags"] = json::array();
  for (const auto& f : rep.minutes_flags)
    j["minutes_flags"].push_back(
        {{"player", f.player}, {"implied", f.implied}, {"official", f.official}});
  j["possession_evaluated"] = rep.possession_evaluated;
  j["possession_flags"] = rep.possession_flags;
  j["w_home"] = rep.w_home;
  j["w_away"] = rep.w_away;
  j["balance"] = rep.balance == BalanceVerdict::pass ? "pass" : "review";
  j["verdict"] = verdict_name(rep.verdict);
  return j.dump(2) + "\n";
}

void write_qc_report_text(std::ostream& out, const GameLog& log,
                          const QcReport& rep) {
  out << log.home_team << " vs " << log.away_team << "\n";
  out << "score:      " << (rep.score_ok ? "ok" : "MISMATCH") << "\n";
  out << "lineups:    " << (rep.lineup_ok ? "ok" : "INCONSISTENT")
      << (rep.lineup_replayed ? " (replayed)" : " (structural only)") << "\n";
  for (int g : rep.lineup_gaps)
    out << "  full-five swap after stint " << g << "\n";
  if (rep.minutes_evaluated) {
    out << "minutes:    "
        << (rep.minutes_flags.empty() ? "ok" : "FLAGS") << "\n";
    for (const auto& f : rep.minutes_flags) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "  %s implied %.1f official %.1f\n",
                    f.player.c_str(), f.implied, f.official);
      out << buf;
    }
  } else {
    out << "minutes:    not evaluated\n";
  }
  {
    char buf[128];
    std::snprintf(buf, sizeof buf, "possessions: home %.1f away %.1f (%s)\n",
                  rep.w_home, rep.w_away,
                  rep.balance == BalanceVerdict::pass ? "balanced" : "REVIEW");
    out << buf;
  }
  if (rep.possession_evaluated)
    for (const auto& f : rep.possession_flags) out << "  " << f << "\n";
  out << "verdict:    " << verdict_name(rep.verdict) << "\n";
}

}  // namespace rapm
