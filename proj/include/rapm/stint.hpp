#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rapm {

// One stint row: five offensive players against five defensive players with
// possession and point totals for both sides of the same interval. Files
// carry two rows per stint; the odd row (0-based) restates its even partner
// with the sides swapped. Even rows drive everything downstream, odd rows
// only widen roster discovery.
struct StintRecord {
  std::string o_team, d_team;
  std::array<std::string, 5> o_players, d_players;
  double o_poss = 0.0;  // may be fractional after split-possession handling
  double d_poss = 0.0;
  double o_score = 0.0;
  double d_score = 0.0;
};

// Player identities are exact strings; no alias resolution happens here.
// Exposure accumulators come from even rows only: offensive players gain
// (o_poss, o_score) on offense and (d_poss, d_score) on defense, defensive
// players the reverse.
struct Roster {
  std::vector<std::string> names;  // index -> name, first-encounter order
  std::vector<std::string> team;   // team seen at first encounter
  std::unordered_map<std::string, int> index;
  std::vector<double> off_poss, def_poss, off_pts, def_pts;

  int size() const { return static_cast<int>(names.size()); }
  int add_or_get(const std::string& name, const std::string& team_code);
  int require(const std::string& name) const;  // throws IntegrityError
};

struct SeasonDataset {
  std::vector<StintRecord> records;
  Roster roster;
  std::int64_t n_total_rows = 0;
  std::int64_t n_zero_poss = 0;       // rows with o_poss < 1, over all rows
  std::int64_t n_zero_poss_even = 0;  // same count over even rows only
  double max_stint_poss = 0.0;        // max(o_poss, d_poss) over even rows
};

struct ColumnMapping {
  std::string o_team = "Oteam", d_team = "Dteam";
  std::array<std::string, 5> o_players = {"O1", "O2", "O3", "O4", "O5"};
  std::array<std::string, 5> d_players = {"D1", "D2", "D3", "D4", "D5"};
  std::string o_poss = "Oposs", d_poss = "Dposs";
  std::string o_score = "Oscore", d_score = "Dscore";
};

struct ParseOptions {
  ColumnMapping columns;
  // When set, every odd row must restate the preceding even row with the
  // sides swapped, and the row count must be even.
  bool strict_mirror = false;
  // Unrecognized header columns are reported here (one warning per column);
  // null means std::cerr.
  std::ostream* warnings = nullptr;
};

// Builds roster and exposure accumulators from an in-memory record list.
// Shared by the parser, the pooler and the synthetic generator.
SeasonDataset dataset_from_records(std::vector<StintRecord> records);

SeasonDataset parse_stint_file(std::istream& in, const ParseOptions& opt = {});
SeasonDataset parse_stint_file(const std::string& path,
                               const ParseOptions& opt = {});

void write_stint_file(std::ostream& out, const std::vector<StintRecord>& recs,
                      const ColumnMapping& cols = {});

}  // namespace rapm
