#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "rapm/errors.hpp"
#include "rapm/qc.hpp"

using namespace rapm;

namespace {

GameStint make_stint(int shift, double hp, double ap, double hpts,
                     double apts) {
  GameStint s;
  for (int i = 0; i < 5; ++i) {
    s.home_players[static_cast<std::size_t>(i)] =
        "h" + std::to_string(1 + (i + shift) % 7);
    s.away_players[static_cast<std::size_t>(i)] =
        "v" + std::to_string(1 + (i + shift) % 7);
  }
  s.home_poss_raw = hp;
  s.away_poss_raw = ap;
  s.home_pts = hpts;
  s.away_pts = apts;
  return s;
}

// Three stints with two home splits (boundaries 0 and 1) and one away split
// (boundary 1). Raw tallies double-count each straddler once.
GameLog split_log() {
  GameLog log;
  log.home_team = "CHI";
  log.away_team = "ATL";
  log.stints = {make_stint(0, 10, 9, 8, 7), make_stint(1, 8, 9, 6, 9),
                make_stint(2, 7, 8, 9, 4)};
  log.split_count_home = 2;
  log.split_count_away = 1;
  log.split_events = {{TeamSide::home, 0},
                      {TeamSide::home, 1},
                      {TeamSide::away, 1}};
  log.official_final = {{23.0, 20.0}};
  return log;
}

GameLog clean_log() {
  GameLog log;
  log.home_team = "CHI";
  log.away_team = "ATL";
  log.stints = {make_stint(0, 10, 9, 8, 7), make_stint(1, 9, 10, 6, 9)};
  log.official_final = {{14.0, 16.0}};
  return log;
}

}  // namespace

TEST_CASE("corrected totals subtract the double counts") {
  GameLog log = split_log();
  auto [wh, wa] = corrected_possession_totals(log);
  CHECK(wh == 23.0);  // 25 raw - 2 splits
  CHECK(wa == 25.0);  // 26 raw - 1 split

  // Declared splits without boundary tags cannot be corrected.
  GameLog untagged = log;
  untagged.split_events.clear();
  CHECK_THROWS_AS(corrected_possession_totals(untagged), IntegrityError);

  GameLog out_of_range = log;
  out_of_range.split_events[0].boundary = 2;  // only boundaries 0 and 1 exist
  CHECK_THROWS_AS(corrected_possession_totals(out_of_range), IntegrityError);
}

TEST_CASE("every apportionment convention conserves the corrected totals") {
  GameLog log = split_log();
  for (auto conv : {SplitConvention::half_half, SplitConvention::close_full,
                    SplitConvention::open_full}) {
    GameLog fixed = apportion_split_possessions(log, conv);
    CHECK(fixed.split_count_home == 0);
    CHECK(fixed.split_events.empty());
    double wh = 0.0, wa = 0.0;
    for (const auto& s : fixed.stints) {
      wh += s.home_poss_raw;
      wa += s.away_poss_raw;
    }
    CHECK(wh == 23.0);
    CHECK(wa == 25.0);
  }

  GameLog half = apportion_split_possessions(log, SplitConvention::half_half);
  CHECK(half.stints[0].home_poss_raw == 9.5);
  CHECK(half.stints[1].home_poss_raw == 7.0);  // loses half on each side
  CHECK(half.stints[2].home_poss_raw == 6.5);
  CHECK(half.stints[1].away_poss_raw == 8.5);

  GameLog close = apportion_split_possessions(log, SplitConvention::close_full);
  CHECK(close.stints[0].home_poss_raw == 10.0);
  CHECK(close.stints[1].home_poss_raw == 7.0);
  CHECK(close.stints[2].home_poss_raw == 6.0);

  GameLog open = apportion_split_possessions(log, SplitConvention::open_full);
  CHECK(open.stints[0].home_poss_raw == 9.0);
  CHECK(open.stints[1].home_poss_raw == 7.0);
  CHECK(open.stints[2].home_poss_raw == 7.0);

  // A zero tally in the opening stint cannot give up a whole possession.
  GameLog broke = split_log();
  broke.stints[1].home_poss_raw = 0.0;
  CHECK_THROWS_AS(
      apportion_split_possessions(broke, SplitConvention::close_full),
      IntegrityError);
}

TEST_CASE("alternation bound widens when the game ends live") {
  CHECK(check_possession_balance(23, 24, false) == BalanceVerdict::pass);
  CHECK(check_possession_balance(23, 25, false) == BalanceVerdict::review);
  CHECK(check_possession_balance(23, 25, true) == BalanceVerdict::pass);
  CHECK(check_possession_balance(23, 26, true) == BalanceVerdict::review);
}

TEST_CASE("clean logs pass and structural profiles are reported") {
  GameLog log = clean_log();
  QcReport rep = run_qc(log);
  CHECK(rep.score_ok);
  CHECK(rep.lineup_ok);
  CHECK_FALSE(rep.lineup_replayed);
  CHECK(rep.lineup_gaps.empty());
  CHECK_FALSE(rep.minutes_evaluated);
  CHECK_FALSE(rep.possession_evaluated);
  CHECK(rep.w_home == 19.0);
  CHECK(rep.w_away == 19.0);
  CHECK(rep.balance == BalanceVerdict::pass);
  CHECK(rep.verdict == QcVerdict::pass);
}

TEST_CASE("score mismatches demand review, exclusion only with sign-off") {
  GameLog log = clean_log();
  log.official_final = {{15.0, 16.0}};
  CHECK(run_qc(log).verdict == QcVerdict::review);
  CHECK_FALSE(run_qc(log).score_ok);

  log.score_irreconcilable = true;  // human reviewed the film and gave up
  CHECK(run_qc(log).verdict == QcVerdict::exclude);

  // The sign-off alone never excludes a reconciled game.
  GameLog fine = clean_log();
  fine.score_irreconcilable = true;
  CHECK(run_qc(fine).verdict == QcVerdict::pass);
}

TEST_CASE("unusable footage excludes outright") {
  GameLog log = clean_log();
  log.footage_insufficient = true;
  CHECK(run_qc(log).verdict == QcVerdict::exclude);
}

TEST_CASE("lineup problems follow the same review-then-exclude ladder") {
  GameLog dup = clean_log();
  dup.stints[0].home_players[1] = dup.stints[0].home_players[0];
  QcReport rep = run_qc(dup);
  CHECK_FALSE(rep.lineup_ok);
  CHECK(rep.verdict == QcVerdict::review);
  dup.lineup_irresolvable = true;
  CHECK(run_qc(dup).verdict == QcVerdict::exclude);

  GameLog overlap = clean_log();
  overlap.stints[0].away_players[0] = overlap.stints[0].home_players[0];
  CHECK_FALSE(run_qc(overlap).lineup_ok);

  // Wholesale lineup turnover between adjacent stints is flagged when no
  // substitution log is available to confirm it.
  GameLog gap = clean_log();
  for (int i = 0; i < 5; ++i)
    gap.stints[1].home_players[static_cast<std::size_t>(i)] =
        "x" + std::to_string(i + 1);
  QcReport gap_rep = run_qc(gap);
  CHECK(gap_rep.lineup_ok);
  REQUIRE(gap_rep.lineup_gaps.size() == 1);
  CHECK(gap_rep.lineup_gaps[0] == 0);
  CHECK(gap_rep.verdict == QcVerdict::review);
}

TEST_CASE("substitution logs enable a full replay") {
  GameLog log = clean_log();
  // Stint 1 swaps h6 in: adjust the lineup to match make_stint(1, ...).
  log.has_substitutions = true;
  log.substitutions = {{0, TeamSide::home, "h1", "h6"},
                       {0, TeamSide::away, "v1", "v6"}};
  QcReport rep = run_qc(log);
  CHECK(rep.lineup_replayed);
  CHECK(rep.lineup_ok);
  CHECK(rep.verdict == QcVerdict::pass);

  // A swap that removes a player who was never on the floor fails replay.
  log.substitutions[0].out_player = "h9";
  CHECK_FALSE(run_qc(log).lineup_ok);

  // Missing events fail replay too: the lineups changed on their own.
  log.substitutions.clear();
  CHECK_FALSE(run_qc(log).lineup_ok);
}

TEST_CASE("minutes reconcile only when both sources exist") {
  GameLog log = clean_log();
  log.stints[0].duration_min = 6.0;
  CHECK_FALSE(run_qc(log).minutes_evaluated);  // second stint has no duration

  log.stints[1].duration_min = 6.0;
  for (const auto& s : log.stints)
    for (const auto& p : s.home_players) log.official_minutes[p] += 6.0;
  for (const auto& s : log.stints)
    for (const auto& p : s.away_players) log.official_minutes[p] += 6.0;

  QcReport ok = run_qc(log);
  CHECK(ok.minutes_evaluated);
  CHECK(ok.minutes_flags.empty());
  CHECK(ok.verdict == QcVerdict::pass);

  log.official_minutes["h1"] = 2.0;  // implied 6, off by 4 > tolerance 2
  QcReport flagged = run_qc(log);
  REQUIRE(flagged.minutes_flags.size() == 1);
  CHECK(flagged.minutes_flags[0].player == "h1");
  CHECK(flagged.minutes_flags[0].implied == 6.0);
  CHECK(flagged.minutes_flags[0].official == 2.0);
  CHECK(flagged.verdict == QcVerdict::review);
}

TEST_CASE("possession plausibility flags but never excludes") {
  GameLog log = clean_log();
  GameBox box;
  box.home.team = "CHI";
  box.home.fga = 20;
  box.home.oreb = 1;
  box.home.to = 0;
  box.home.fta = 0;   // estimate 19 == counted 19
  box.away = box.home;
  box.away.team = "ATL";
  QcReport ok = run_qc(log, &box);
  CHECK(ok.possession_evaluated);
  CHECK(ok.possession_flags.empty());
  CHECK(ok.verdict == QcVerdict::pass);

  box.home.fga = 45;  // estimate 44, counted 19
  QcReport flagged = run_qc(log, &box);
  REQUIRE(flagged.possession_flags.size() == 1);
  CHECK(flagged.possession_flags[0].find("home counted 19.0") !=
        std::string::npos);
  CHECK(flagged.verdict == QcVerdict::review);  // never exclude on this alone
}

TEST_CASE("qc runs demand stints and an official score") {
  GameLog log = clean_log();
  log.stints.clear();
  CHECK_THROWS_AS(run_qc(log), ConfigError);

  GameLog noscore = clean_log();
  noscore.official_final.reset();
  CHECK_THROWS_AS(run_qc(noscore), ConfigError);
}

TEST_CASE("export alternates the leading side and demands settled splits") {
  GameLog log = split_log();
  CHECK_THROWS_AS(export_stints({log}), IntegrityError);

  GameLog fixed = apportion_split_possessions(log, SplitConvention::half_half);
  auto recs = export_stints({fixed});
  REQUIRE(recs.size() == 6);

  // Stint 0 leads with the home offense, stint 1 with the away offense.
  CHECK(recs[0].o_team == "CHI");
  CHECK(recs[1].o_team == "ATL");
  CHECK(recs[2].o_team == "ATL");
  CHECK(recs[3].o_team == "CHI");
  CHECK(recs[4].o_team == "CHI");

  CHECK(recs[0].o_poss == 9.5);
  CHECK(recs[0].o_score == 8.0);
  CHECK(recs[2].o_poss == 8.5);  // away tally of stint 1
  CHECK(recs[2].o_score == 9.0);

  // Every pair is an exact mirror.
  for (std::size_t i = 0; i < recs.size(); i += 2) {
    CHECK(recs[i].o_team == recs[i + 1].d_team);
    CHECK(recs[i].o_players == recs[i + 1].d_players);
    CHECK(recs[i].o_poss == recs[i + 1].d_poss);
    CHECK(recs[i].o_score == recs[i + 1].d_score);
  }
}

TEST_CASE("game log JSON round-trips structure and flags") {
  const char* doc = R"({
    "home_team": "CHI", "away_team": "ATL",
    "official_final": {"home": 14, "away": 16},
    "official_minutes": {"h1": 12},
    "split_counts": {"home": 1, "away": 0},
    "split_events": [{"team": "home", "boundary": 0}],
    "substitutions": [{"boundary": 0, "team": "home", "out": "h1", "in": "h6"},
                      {"boundary": 0, "team": "away", "out": "v1", "in": "v6"}],
    "ended_live": true,
    "flags": {"footage_insufficient": false, "score_irreconcilable": true},
    "stints": [
      {"home_players": ["h1","h2","h3","h4","h5"],
       "away_players": ["v1","v2","v3","v4","v5"],
       "home_poss": 10, "away_poss": 9, "home_pts": 8, "away_pts": 7,
       "duration_min": 24.0},
      {"home_players": ["h2","h3","h4","h5","h6"],
       "away_players": ["v2","v3","v4","v5","v6"],
       "home_poss": 10, "away_poss": 10, "home_pts": 6, "away_pts": 9}
    ]})";
  std::istringstream in(doc);
  GameLog log = game_log_from_json(in);
  CHECK(log.home_team == "CHI");
  CHECK(log.official_final->second == 16.0);
  CHECK(log.official_minutes.at("h1") == 12.0);
  CHECK(log.split_count_home == 1);
  REQUIRE(log.split_events.size() == 1);
  CHECK(log.split_events[0].team == TeamSide::home);
  CHECK(log.has_substitutions);
  CHECK(log.substitutions.size() == 2);
  CHECK(log.ended_live);
  CHECK(log.score_irreconcilable);
  CHECK_FALSE(log.footage_insufficient);
  REQUIRE(log.stints.size() == 2);
  CHECK(log.stints[0].duration_min == 24.0);
  CHECK_FALSE(log.stints[1].duration_min.has_value());

  QcReport rep = run_qc(log);
  CHECK(rep.score_ok);
  CHECK(rep.lineup_ok);
  CHECK(rep.w_home == 19.0);

  std::istringstream bad_side(R"({"stints": [], "split_events":
    [{"team": "middle", "boundary": 0}]})");
  CHECK_THROWS_AS(game_log_from_json(bad_side), ParseError);
  std::istringstream no_stints(R"({"home_team": "x"})");
  CHECK_THROWS_AS(game_log_from_json(no_stints), ParseError);
  std::istringstream four(R"({"stints": [{"home_players": ["a","b","c","d"],
    "away_players": ["v","w","x","y","z"],
    "home_poss": 1, "away_poss": 1, "home_pts": 0, "away_pts": 0}]})");
  CHECK_THROWS_AS(game_log_from_json(four), IntegrityError);
}

TEST_CASE("reports render both formats") {
  GameLog log = clean_log();
  QcReport rep = run_qc(log);

  std::string j = qc_report_json(log, rep);
  CHECK(j.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(j.find("\"w_home\": 19.0") != std::string::npos);

  std::ostringstream out;
  write_qc_report_text(out, log, rep);
  const std::string text = out.str();
  CHECK(text.find("CHI vs ATL") != std::string::npos);
  CHECK(text.find("score:      ok") != std::string::npos);
  CHECK(text.find("minutes:    not evaluated") != std::string::npos);
  CHECK(text.find("balanced") != std::string::npos);
  CHECK(text.find("verdict:    pass") != std::string::npos);
}
