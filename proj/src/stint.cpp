#include "rapm/stint.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "rapm/csv.hpp"
#include "rapm/errors.hpp"

namespace rapm {

int Roster::add_or_get(const std::string& name, const std::string& team_code) {
  auto it = index.find(name);
  if (it != index.end()) return it->second;
  int id = static_cast<int>(names.size());
  index.emplace(name, id);
  names.push_back(name);
  team.push_back(team_code);
  off_poss.push_back(0.0);
  def_poss.push_back(0.0);
  off_pts.push_back(0.0);
  def_pts.push_back(0.0);
  return id;
}

int Roster::require(const std::string& name) const {
  auto it = index.find(name);
  if (it == index.end()) throw IntegrityError("unknown player: " + name);
  return it->second;
}

namespace {

void check_record(const StintRecord& r, std::int64_t row_no) {
  auto where = [&] { return " (row " + std::to_string(row_no) + ")"; };
  std::set<std::string> seen;
  for (const auto* side : {&r.o_players, &r.d_players}) {
    for (const auto& p : *side) {
      if (p.empty()) throw IntegrityError("empty player name" + where());
      if (!seen.insert(p).second)
        throw IntegrityError("player listed twice in one stint: " + p +
                             where());
    }
  }
  if (r.o_poss < 0 || r.d_poss < 0)
    throw ParseError("negative possession count" + where());
  if (r.o_score < 0 || r.d_score < 0)
    throw ParseError("negative score" + where());
}

bool mirrors(const StintRecord& even, const StintRecord& odd) {
  return odd.o_team == even.d_team && odd.d_team == even.o_team &&
         odd.o_players == even.d_players && odd.d_players == even.o_players &&
         odd.o_poss == even.d_poss && odd.d_poss == even.o_poss &&
         odd.o_score == even.d_score && odd.d_score == even.o_score;
}

}  // namespace

SeasonDataset dataset_from_records(std::vector<StintRecord> records) {
  SeasonDataset ds;
  ds.records = std::move(records);
  ds.n_total_rows = static_cast<std::int64_t>(ds.records.size());

  // Roster order comes from scanning every row, offense columns first.
  for (const auto& r : ds.records) {
    for (const auto& p : r.o_players) ds.roster.add_or_get(p, r.o_team);
    for (const auto& p : r.d_players) ds.roster.add_or_get(p, r.d_team);
  }

  for (std::int64_t i = 0; i < ds.n_total_rows; ++i) {
    const auto& r = ds.records[static_cast<std::size_t>(i)];
    bool zero = r.o_poss < 1.0;
    if (zero) ++ds.n_zero_poss;
    if (i % 2 != 0) continue;
    if (zero) ++ds.n_zero_poss_even;
    ds.max_stint_poss = std::max({ds.max_stint_poss, r.o_poss, r.d_poss});
    for (const auto& p : r.o_players) {
      int j = ds.roster.index.at(p);
      ds.roster.off_poss[j] += r.o_poss;
      ds.roster.off_pts[j] += r.o_score;
      ds.roster.def_poss[j] += r.d_poss;
      ds.roster.def_pts[j] += r.d_score;
    }
    for (const auto& p : r.d_players) {
      int j = ds.roster.index.at(p);
      ds.roster.def_poss[j] += r.o_poss;
      ds.roster.def_pts[j] += r.o_score;
      ds.roster.off_poss[j] += r.d_poss;
      ds.roster.off_pts[j] += r.d_score;
    }
  }
  return ds;
}

SeasonDataset parse_stint_file(std::istream& in, const ParseOptions& opt) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty stint file");
  auto header = csv::split_line(line);

  const auto& cm = opt.columns;
  std::vector<std::string> wanted;
  wanted.push_back(cm.o_team);
  wanted.push_back(cm.d_team);
  for (const auto& c : cm.o_players) wanted.push_back(c);
  for (const auto& c : cm.d_players) wanted.push_back(c);
  wanted.push_back(cm.o_poss);
  wanted.push_back(cm.d_poss);
  wanted.push_back(cm.o_score);
  wanted.push_back(cm.d_score);

  std::unordered_map<std::string, int> pos;
  for (std::size_t i = 0; i < header.size(); ++i)
    pos.emplace(header[i], static_cast<int>(i));

  std::ostream& warn = opt.warnings ? *opt.warnings : std::cerr;
  std::set<std::string> wanted_set(wanted.begin(), wanted.end());
  for (const auto& h : header)
    if (!wanted_set.count(h)) warn << "ignoring column: " << h << "\n";

  std::vector<int> col;
  std::string missing;
  for (const auto& w : wanted) {
    auto it = pos.find(w);
    if (it == pos.end()) {
      if (!missing.empty()) missing += ", ";
      missing += w;
      col.push_back(-1);
    } else {
      col.push_back(it->second);
    }
  }
  if (!missing.empty()) throw ParseError("missing columns: " + missing);

  std::vector<StintRecord> records;
  std::int64_t row_no = 1;  // header was line 1
  while (std::getline(in, line)) {
    ++row_no;
    if (csv::trim(line).empty()) continue;
    auto f = csv::split_line(line);
    if (f.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(f.size()) + " (row " +
                       std::to_string(row_no) + ")");
    auto fld = [&](int k) -> const std::string& {
      return f[static_cast<std::size_t>(col[static_cast<std::size_t>(k)])];
    };
    StintRecord r;
    r.o_team = fld(0);
    r.d_team = fld(1);
    for (int i = 0; i < 5; ++i) r.o_players[static_cast<std::size_t>(i)] = fld(2 + i);
    for (int i = 0; i < 5; ++i) r.d_players[static_cast<std::size_t>(i)] = fld(7 + i);
    std::string where = "row " + std::to_string(row_no);
    r.o_poss = csv::parse_number(fld(12), cm.o_poss + ", " + where);
    r.d_poss = csv::parse_number(fld(13), cm.d_poss + ", " + where);
    r.o_score = csv::parse_number(fld(14), cm.o_score + ", " + where);
    r.d_score = csv::parse_number(fld(15), cm.d_score + ", " + where);
    check_record(r, row_no);
    records.push_back(std::move(r));
  }

  if (opt.strict_mirror) {
    if (records.size() % 2 != 0)
      throw IntegrityError("odd row count: every stint needs a mirror row");
    for (std::size_t i = 0; i + 1 < records.size(); i += 2)
      if (!mirrors(records[i], records[i + 1]))
        throw IntegrityError("row " + std::to_string(i + 3) +
                             " does not mirror its even partner");
  }

  return dataset_from_records(std::move(records));
}

SeasonDataset parse_stint_file(const std::string& path,
                               const ParseOptions& opt) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stint file: " + path);
  return parse_stint_file(in, opt);
}

void write_stint_file(std::ostream& out, const std::vector<StintRecord>& recs,
                      const ColumnMapping& cols) {
  out << cols.o_team << ',' << cols.d_team;
  for (const auto& c : cols.o_players) out << ',' << c;
  for (const auto& c : cols.d_players) out << ',' << c;
  out << ',' << cols.o_poss << ',' << cols.d_poss << ',' << cols.o_score << ','
      << cols.d_score << '\n';
  for (const auto& r : recs) {
    out << csv::escape_field(r.o_team) << ',' << csv::escape_field(r.d_team);
    for (const auto& p : r.o_players) out << ',' << csv::escape_field(p);
    for (const auto& p : r.d_players) out << ',' << csv::escape_field(p);
    out << ',' << csv::format_number(r.o_poss) << ','
        << csv::format_number(r.d_poss) << ',' << csv::format_number(r.o_score)
        << ',' << csv::format_number(r.d_score) << '\n';
  }
}

}  // namespace rapm
