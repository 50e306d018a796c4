#include "rapm/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>

#include "rapm/pooling.hpp"

namespace rapm {

using nlohmann::json;

namespace {

std::string display_name(const std::string& key) {
  auto [player, season] = split_player_season_key(key);
  if (season.empty()) return player;
  return player + " [" + season + "]";
}

}  // namespace

void write_rapm_table_text(std::ostream& out, const RapmTable& table) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%5s %-25s %-5s|%7s %7s|%7s %7s |%7s %7s |%7s %7s %7s\n",
                "Rank", "Player", "Team", "OPoss", "O PTS", "DPoss", "D PTS",
                "ORAPM", "DRAPM", "TOTAL", "LOW", "HIGH");
  out << buf;
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf,
                  "%5d %-25s %-5s|%7.1f %7.0f|%7.1f %7.0f |%7.2f %7.2f "
                  "|%7.2f %7.2f %7.2f\n",
                  r.rank, display_name(r.player).c_str(), r.team.c_str(),
                  r.off_poss, r.off_pts, r.def_poss, r.def_pts, r.orapm,
                  r.drapm, r.rapm, r.ci_low, r.ci_high);
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "lambda %.6g  sigma2 %.6g  intercept %+.3f  "
                "centers %+.3f/%+.3f  ci %s\n",
                table.lambda, table.sigma2, table.intercept, table.center_off,
                table.center_def,
                table.ci_mode == CiMode::full ? "full" : "diag");
  out << buf;
}

std::string rapm_table_json(const RapmTable& table) {
  json j;
  j["lambda"] = table.lambda;
  j["sigma2"] = table.sigma2;
  j["intercept"] = table.intercept;
  j["center_off"] = table.center_off;
  j["center_def"] = table.center_def;
  j["ci_mode"] = table.ci_mode == CiMode::full ? "full" : "diag";
  j["players"] = json::array();
  for (const auto& r : table.rows) {
    auto [player, season] = split_player_season_key(r.player);
    json row{{"rank", r.rank},       {"player", player},
             {"team", r.team},       {"off_poss", r.off_poss},
             {"off_pts", r.off_pts}, {"def_poss", r.def_poss},
             {"def_pts", r.def_pts}, {"orapm", r.orapm},
             {"drapm", r.drapm},     {"rapm", r.rapm},
             {"ci_low", r.ci_low},   {"ci_high", r.ci_high}};
    if (!season.empty()) row["season"] = season;
    j["players"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

void write_lambda_report_text(std::ostream& out, const LambdaReport& rep,
                              const CvResult* cv) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "coverage-scaled lambda: %.6g\n",
                rep.lambda_cs);
  out << buf;
  std::snprintf(buf, sizeof buf, "cross-validated lambda: %.6g\n",
                rep.lambda_cv);
  out << buf;
  std::snprintf(buf, sizeof buf, "ratio (cs/cv):          %.6g\n", rep.ratio);
  out << buf;
  std::snprintf(buf, sizeof buf, "verdict:                %s (band [%g, %g])\n",
                rep.agreement ? "agreement" : "flagged", rep.band_lo,
                rep.band_hi);
  out << buf;
  if (cv) {
    std::snprintf(buf, sizeof buf,
                  "cv error at optimum:    %.6g (holdout %.6g, %d skipped "
                  "folds)\n",
                  cv->cv_error, cv->holdout_error, cv->skipped_folds);
    out << buf;
  }
}

std::string lambda_report_json(const LambdaReport& rep, const CvResult* cv) {
  json j;
  j["lambda_cs"] = rep.lambda_cs;
  j["lambda_cv"] = rep.lambda_cv;
  j["ratio"] = rep.ratio;
  j["agreement"] = rep.agreement;
  j["band"] = {rep.band_lo, rep.band_hi};
  if (cv) {
    j["cv_error"] = cv->cv_error;
    j["holdout_error"] = cv->holdout_error;
    j["skipped_folds"] = cv->skipped_folds;
  }
  return j.dump(2) + "\n";
}

}  // namespace rapm
