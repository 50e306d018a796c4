#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "rapm/boxscore.hpp"
#include "rapm/errors.hpp"

using namespace rapm;

namespace {
const std::string kFixture =
    std::string(RAPM_FIXTURES_DIR) + "/steal_audit_1988-02-15.json";
}

TEST_CASE("possession estimate is the standard box formula") {
  TeamBox b;
  b.fga = 92;
  b.oreb = 11;
  b.to = 10;
  b.fta = 28;
  CHECK(oliver_possessions(b) == doctest::Approx(103.32).epsilon(1e-12));
  CHECK(oliver_possessions(b, 0.5) == doctest::Approx(105.0).epsilon(1e-12));
}

TEST_CASE("steal audit flags totals beyond the live-ball supply") {
  StealAudit bad = audit_steal_constraint(10, 7);
  CHECK(bad.violated);
  CHECK(bad.excess == 3.0);
  CHECK(bad.steals == 10.0);
  CHECK(bad.live_to_bound == 7.0);

  StealAudit ok = audit_steal_constraint(7, 7);
  CHECK_FALSE(ok.violated);
  CHECK(ok.excess == 0.0);
}

TEST_CASE("per-player attribution is audited through its sum") {
  std::map<std::string, double> reported = {
      {"Michael Jordan", 5}, {"Charles Oakley", 3}, {"Scottie Pippen", 2}};
  StealAudit audit = audit_player_steals(reported, 7);
  CHECK(audit.violated);
  CHECK(audit.steals == 10.0);
  CHECK(audit.excess == 3.0);

  std::map<std::string, double> film = {
      {"Michael Jordan", 2}, {"Charles Oakley", 4}, {"Scottie Pippen", 1}};
  CHECK_FALSE(audit_player_steals(film, 7).violated);
}

TEST_CASE("phantom turnovers shift the estimate by exactly their count") {
  TeamBox b;
  b.fga = 95;
  b.oreb = 14;
  b.to = 13;
  b.fta = 31;
  BiasResult r = bias_propagation(b, 3.7);
  CHECK(r.biased - r.unbiased == r.delta);
  CHECK(r.delta == doctest::Approx(3.7).epsilon(1e-12));
  CHECK(r.unbiased == doctest::Approx(107.64).epsilon(1e-12));

  // Binary-clean arithmetic keeps the identity exact.
  BiasResult exact = bias_propagation(b, 3.0, 0.5);
  CHECK(exact.delta == 3.0);
}

TEST_CASE("box JSON loads the reference game") {
  auto games = read_box_json(kFixture);
  REQUIRE(games.size() == 1);
  const GameBox& g = games[0];
  CHECK(g.id == "1988-02-15-ATL@CHI");
  CHECK(g.home.team == "Chicago");
  CHECK(g.home.stl == 10.0);
  REQUIRE(g.home.player_steals.size() == 3);
  CHECK(g.home.player_steals.at("Michael Jordan") == 5.0);
  CHECK(g.away.to == 10.0);
  REQUIRE(g.away.to_live.has_value());
  CHECK(*g.away.to_live == 7.0);
  CHECK(*g.away.to_dead == 3.0);
  CHECK(g.away.player_steals.empty());
}

TEST_CASE("box JSON validates its accounting") {
  auto parse = [](const std::string& body) {
    std::istringstream in(body);
    return read_box_json(in);
  };
  const char* base = R"({"games":[{"id":"g","home":{"team":"H"},"away":%s}]})";
  auto game_with_away = [&](const char* away) {
    char buf[512];
    std::snprintf(buf, sizeof buf, base, away);
    return std::string(buf);
  };

  // Bare array form works too.
  CHECK(parse(R"([{"id":"g","home":{"team":"H"},"away":{"team":"A"}}])")
            .size() == 1);

  CHECK_THROWS_AS(parse("{nope"), ParseError);
  CHECK_THROWS_AS(parse(R"({"games":[{"id":"g","home":{"team":"H"}}]})"),
                  ParseError);  // away side missing
  CHECK_THROWS_AS(parse(game_with_away(R"({"team":"A","to":-1})")),
                  IntegrityError);
  CHECK_THROWS_AS(parse(game_with_away(R"({"team":"A","to":10,"to_live":7})")),
                  IntegrityError);  // split needs both halves
  CHECK_THROWS_AS(
      parse(game_with_away(R"({"team":"A","to":10,"to_live":7,"to_dead":4})")),
      IntegrityError);  // 7 + 4 != 10
  CHECK_THROWS_AS(
      parse(game_with_away(R"({"team":"A","player_steals":{"x":-1}})")),
      IntegrityError);
}

TEST_CASE("audit report covers both directions with the right bounds") {
  auto games = read_box_json(kFixture);
  nlohmann::json rep = nlohmann::json::parse(audit_report_json(games));
  REQUIRE(rep.at("games").size() == 1);
  const auto& g = rep.at("games").at(0);

  const auto& home = g.at("home");
  CHECK(home.at("verdict") == "violated");
  CHECK(home.at("excess") == 3.0);
  CHECK(home.at("bound") == "live_to");
  CHECK(home.at("opp_live_to") == 7.0);
  CHECK(home.at("player_verdict") == "violated");
  CHECK(home.at("player_total") == 10.0);

  // Chicago's own turnovers carry no split, so the away direction can only
  // be bounded by the total.
  const auto& away = g.at("away");
  CHECK(away.at("verdict") == "satisfied");
  CHECK(away.at("bound") == "total_to");
  CHECK(away.at("opp_live_to") == 13.0);
}
