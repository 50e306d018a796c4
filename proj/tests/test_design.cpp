#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rapm/design.hpp"
#include "rapm/errors.hpp"
#include "rapm/stint.hpp"

using namespace rapm;

namespace {

SeasonDataset golden() {
  std::istringstream in(
      "Oteam,Dteam,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oscore,Dscore\n"
      "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b5,4,3,8,5\n"
      "BBB,AAA,b1,b2,b3,b4,b5,a1,a2,a3,a4,a5,3,4,5,8\n"
      "BBB,AAA,b1,b2,b3,b4,b6,a1,a2,a3,a4,a5,0,2,0,4\n"
      "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b6,2,0,4,0\n"
      "AAA,BBB,a1,a2,a3,a4,a6,b1,b2,b3,b4,b5,6,5,14,9\n"
      "BBB,AAA,b1,b2,b3,b4,b5,a1,a2,a3,a4,a6,5,6,9,14\n");
  return parse_stint_file(in);
}

}  // namespace

TEST_CASE("system keeps even rows with at least one possession") {
  SeasonDataset ds = golden();
  RidgeSystem sys = build_system(ds);

  const int p = ds.roster.size();
  CHECK(sys.n_players == p);
  CHECK(sys.n_total_rows == 6);
  CHECK(sys.cols() == 2 * p + 1);
  // Rows 0 and 4 survive; the zero-possession even row does not.
  CHECK(sys.rows() == ds.n_total_rows / 2 - ds.n_zero_poss_even);
  REQUIRE(sys.rows() == 2);

  CHECK(sys.y(0) == 100.0 * 8.0 / 4.0);
  CHECK(sys.w(0) == 4.0);
  CHECK(sys.y(1) == doctest::Approx(100.0 * 14.0 / 6.0));
  CHECK(sys.w(1) == 6.0);
}

TEST_CASE("encoding places offense, defense and baseline columns") {
  SeasonDataset ds = golden();
  RidgeSystem sys = build_system(ds);
  const int p = ds.roster.size();

  for (Eigen::Index r = 0; r < sys.rows(); ++r) {
    CHECK(sys.X(r, 0) == 1.0);
    double off = 0.0, def = 0.0;
    for (int j = 1; j <= p; ++j) off += sys.X(r, j);
    for (int j = p + 1; j <= 2 * p; ++j) def += sys.X(r, j);
    CHECK(off == 5.0);
    CHECK(def == -5.0);
  }

  // First kept row: offense a1..a5, defense b1..b5.
  for (const char* name : {"a1", "a2", "a3", "a4", "a5"})
    CHECK(sys.X(0, 1 + ds.roster.require(name)) == 1.0);
  for (const char* name : {"b1", "b2", "b3", "b4", "b5"})
    CHECK(sys.X(0, 1 + p + ds.roster.require(name)) == -1.0);
  CHECK(sys.X(0, 1 + ds.roster.require("a6")) == 0.0);
  CHECK(sys.X(0, 1 + p + ds.roster.require("b6")) == 0.0);

  // Second kept row swaps a5 out for a6 on offense.
  CHECK(sys.X(1, 1 + ds.roster.require("a6")) == 1.0);
  CHECK(sys.X(1, 1 + ds.roster.require("a5")) == 0.0);
}

TEST_CASE("unusable datasets are refused") {
  SeasonDataset empty;
  CHECK_THROWS_AS(build_system(empty), ConfigError);

  std::istringstream in(
      "Oteam,Dteam,O1,O2,O3,O4,O5,D1,D2,D3,D4,D5,Oposs,Dposs,Oscore,Dscore\n"
      "AAA,BBB,a1,a2,a3,a4,a5,b1,b2,b3,b4,b5,0.5,3,1,5\n"
      "BBB,AAA,b1,b2,b3,b4,b5,a1,a2,a3,a4,a5,3,0.5,5,1\n");
  SeasonDataset tiny = parse_stint_file(in);
  CHECK_THROWS_AS(build_system(tiny), ConfigError);
}
