#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rapm/errors.hpp"
#include "rapm/stint.hpp"

using namespace rapm;

namespace {

// Three stints, mirrored pairs, one zero-possession offense row, two players
// (b6, a6) that only ever appear past the first pair.
const char* kGolden =
    "Oteam,Dteam,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oscore,Dscore\n"
    "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b5,4,3,8,5\n"
    "BBB,AAA,b1,b2,b3,b4,b5,a1,a2,a3,a4,a5,3,4,5,8\n"
    "BBB,AAA,b1,b2,b3,b4,b6,a1,a2,a3,a4,a5,0,2,0,4\n"
    "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b6,2,0,4,0\n"
    "AAA,BBB,a1,a2,a3,a4,a6,b1,b2,b3,b4,b5,6,5,14,9\n"
    "BBB,AAA,b1,b2,b3,b4,b5,a1,a2,a3,a4,a6,5,6,9,14\n";

SeasonDataset parse_golden(bool strict = true) {
  std::istringstream in(kGolden);
  ParseOptions opt;
  opt.strict_mirror = strict;
  return parse_stint_file(in, opt);
}

}  // namespace

TEST_CASE("golden file parses with the expected roster and counters") {
  SeasonDataset ds = parse_golden();
  CHECK(ds.n_total_rows == 6);
  CHECK(ds.records.size() == 6);
  CHECK(ds.n_zero_poss == 1);
  CHECK(ds.n_zero_poss_even == 1);
  CHECK(ds.max_stint_poss == 6.0);

  // First-encounter order: offense columns of row one, then its defense,
  // then the two late arrivals.
  REQUIRE(ds.roster.size() == 12);
  CHECK(ds.roster.names[0] == "a1");
  CHECK(ds.roster.names[4] == "a5");
  CHECK(ds.roster.names[5] == "b1");
  CHECK(ds.roster.names[9] == "b5");
  CHECK(ds.roster.names[10] == "b6");
  CHECK(ds.roster.names[11] == "a6");
  CHECK(ds.roster.team[0] == "AAA");
  CHECK(ds.roster.team[5] == "BBB");
  CHECK(ds.roster.require("b6") == 10);
  CHECK_THROWS_AS(ds.roster.require("nobody"), IntegrityError);
}

TEST_CASE("exposure accumulators come from even rows only") {
  SeasonDataset ds = parse_golden();
  const Roster& r = ds.roster;

  const int a1 = r.index.at("a1");
  CHECK(r.off_poss[a1] == 12.0);  // 4 + 2 + 6
  CHECK(r.off_pts[a1] == 26.0);   // 8 + 4 + 14
  CHECK(r.def_poss[a1] == 8.0);   // 3 + 0 + 5
  CHECK(r.def_pts[a1] == 14.0);

  const int a5 = r.index.at("a5");
  CHECK(r.off_poss[a5] == 6.0);
  CHECK(r.def_poss[a5] == 3.0);

  const int b5 = r.index.at("b5");
  CHECK(r.off_poss[b5] == 8.0);
  CHECK(r.off_pts[b5] == 14.0);
  CHECK(r.def_poss[b5] == 10.0);
  CHECK(r.def_pts[b5] == 22.0);

  const int b6 = r.index.at("b6");
  CHECK(r.off_poss[b6] == 0.0);
  CHECK(r.def_poss[b6] == 2.0);

  // Every possession carries exactly five players per side.
  double sum_off = 0.0, sum_def = 0.0, sum_stint = 0.0;
  for (int j = 0; j < r.size(); ++j) {
    sum_off += r.off_poss[static_cast<std::size_t>(j)];
    sum_def += r.def_poss[static_cast<std::size_t>(j)];
  }
  for (std::size_t i = 0; i < ds.records.size(); i += 2)
    sum_stint += ds.records[i].o_poss + ds.records[i].d_poss;
  CHECK(sum_off == 5.0 * sum_stint);
  CHECK(sum_def == 5.0 * sum_stint);
}

TEST_CASE("header mapping is name driven and warns on extras") {
  std::ostringstream warnings;
  // Same first stint, columns shuffled, one unknown column.
  std::istringstream in(
      "Dteam,Oscore,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oteam,Dscore,"
      "Note\n"
      "BBB,8,a1,a2,a3,a4,a5,b1,b2,b3,b4,b5,4,3,AAA,5,x\n");
  ParseOptions opt;
  opt.warnings = &warnings;
  SeasonDataset ds = parse_stint_file(in, opt);
  REQUIRE(ds.records.size() == 1);
  const StintRecord& r = ds.records[0];
  CHECK(r.o_team == "AAA");
  CHECK(r.d_team == "BBB");
  CHECK(r.o_players[0] == "a1");
  CHECK(r.d_players[4] == "b5");
  CHECK(r.o_poss == 4.0);
  CHECK(r.o_score == 8.0);
  CHECK(warnings.str() == "ignoring column: Note\n");
}

TEST_CASE("quoted names survive parsing") {
  std::istringstream in(
      "Oteam,Dteam,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oscore,Dscore\n"
      "AAA,BBB,\"Smith, Jr\",a2,a3,a4,a5,b1,b2,b3,b4,b5,3.5,3,7,6\n");
  SeasonDataset ds = parse_stint_file(in);
  CHECK(ds.records[0].o_players[0] == "Smith, Jr");
  CHECK(ds.records[0].o_poss == 3.5);
}

TEST_CASE("malformed input is rejected with the right category") {
  auto parse = [](const char* text, bool strict = false) {
    std::istringstream in(text);
    ParseOptions opt;
    opt.strict_mirror = strict;
    return parse_stint_file(in, opt);
  };
  const char* head =
      "Oteam,Dteam,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oscore,Dscore\n";

  CHECK_THROWS_AS(parse(""), ParseError);  // no header at all
  CHECK_THROWS_AS(  // missing required column
      parse("Oteam,Dteam,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oscore\n"),
      ParseError);
  CHECK_THROWS_AS(  // field count mismatch
      parse((std::string(head) + "AAA,BBB,a1,a2,a3\n").c_str()), ParseError);
  CHECK_THROWS_AS(  // player on both sides of one stint
      parse((std::string(head) +
             "AAA,BBB,a1,a2,a3,a4,a5,a1,b2,b3,b4,b5,4,3,8,5\n")
                .c_str()),
      IntegrityError);
  CHECK_THROWS_AS(  // empty player cell
      parse((std::string(head) +
             "AAA,BBB,a1,a2,a3,a4,,b1,b2,b3,b4,b5,4,3,8,5\n")
                .c_str()),
      IntegrityError);
  CHECK_THROWS_AS(  // negative possessions
      parse((std::string(head) +
             "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b5,-4,3,8,5\n")
                .c_str()),
      ParseError);
  CHECK_THROWS_AS(  // numeric garbage
      parse((std::string(head) +
             "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b5,four,3,8,5\n")
                .c_str()),
      ParseError);
}

TEST_CASE("strict mirror mode enforces row pairing") {
  const std::string head =
      "Oteam,Dteam,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oscore,Dscore\n";
  const std::string even = "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b5,4,3,8,5\n";
  const std::string good = "BBB,AAA,b1,b2,b3,b4,b5,a1,a2,a3,a4,a5,3,4,5,8\n";
  const std::string bad = "BBB,AAA,b1,b2,b3,b4,b5,a1,a2,a3,a4,a5,3,4,5,9\n";

  auto parse = [&](const std::string& rows) {
    std::istringstream in(head + rows);
    ParseOptions opt;
    opt.strict_mirror = true;
    return parse_stint_file(in, opt);
  };
  CHECK_NOTHROW(parse(even + good));
  CHECK_THROWS_AS(parse(even), IntegrityError);        // odd row count
  CHECK_THROWS_AS(parse(even + bad), IntegrityError);  // score not mirrored

  // Non-strict mode takes the same rows without complaint.
  std::istringstream in(head + even + bad);
  CHECK_NOTHROW(parse_stint_file(in));
}

TEST_CASE("write then parse round-trips every field") {
  SeasonDataset ds = parse_golden();
  // Stress the writer with characters that need quoting and a split weight.
  ds.records[0].o_players[0] = "Smith, Jr";
  ds.records[1].d_players[0] = "Smith, Jr";
  ds.records[0].o_poss = 3.5;
  ds.records[1].d_poss = 3.5;

  std::ostringstream out;
  write_stint_file(out, ds.records);
  std::istringstream in(out.str());
  SeasonDataset back = parse_stint_file(in);

  REQUIRE(back.records.size() == ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const StintRecord& a = ds.records[i];
    const StintRecord& b = back.records[i];
    CHECK(a.o_team == b.o_team);
    CHECK(a.d_team == b.d_team);
    CHECK(a.o_players == b.o_players);
    CHECK(a.d_players == b.d_players);
    CHECK(a.o_poss == b.o_poss);
    CHECK(a.d_poss == b.d_poss);
    CHECK(a.o_score == b.o_score);
    CHECK(a.d_score == b.d_score);
  }
}
