#include "rapm/validation.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rapm/csv.hpp"
#include "rapm/errors.hpp"

namespace rapm {

double mle_wins(double w, double n, double games_season) {
  if (!(n >= 1.0)) throw ConfigError("need at least one sampled game");
  if (w < 0.0 || w > n) throw ConfigError("wins outside [0, n]");
  if (!(games_season > 0.0)) throw ConfigError("bad season length");
  return w / n * games_season;
}

double bayes_wins(double w, double n, double prior_a, double prior_b,
                  double games_season) {
  if (n < 0.0 || w < 0.0 || w > n) throw ConfigError("bad sampled record");
  if (!(prior_a > 0.0) || !(prior_b > 0.0))
    throw ConfigError("prior counts must be positive");
  if (!(games_season > 0.0)) throw ConfigError("bad season length");
  return (w + prior_a) / (n + prior_a + prior_b) * games_season;
}

EstimatorScores score_estimators(const std::vector<TeamSeasonRecord>& rows) {
  EstimatorScores s;
  double se_mle = 0.0, se_bayes = 0.0;
  for (const auto& r : rows) {
    if (!r.truth_wins) continue;
    const double n = r.sampled_w + r.sampled_l;
    const double mle = mle_wins(r.sampled_w, n, r.games_season);
    const double bayes = bayes_wins(r.sampled_w, n, 5.0, 5.0, r.games_season);
    const double em = mle - *r.truth_wins;
    const double eb = bayes - *r.truth_wins;
    s.mae_mle += std::fabs(em);
    s.mae_bayes += std::fabs(eb);
    se_mle += em * em;
    se_bayes += eb * eb;
    ++s.n_scored;
  }
  if (s.n_scored == 0)
    throw ConfigError("no rows carry a true win total to score against");
  s.mae_mle /= s.n_scored;
  s.mae_bayes /= s.n_scored;
  s.rmse_mle = std::sqrt(se_mle / s.n_scored);
  s.rmse_bayes = std::sqrt(se_bayes / s.n_scored);
  return s;
}

std::map<std::string, double> team_rating_prediction(const RapmTable& table) {
  std::map<std::string, std::pair<double, double>> acc;
  for (const auto& row : table.rows) {
    const double poss = row.off_poss + row.def_poss;
    auto& a = acc[row.team];
    a.first += poss;
    a.second += poss * row.rapm;
  }
  std::map<std::string, double> out;
  for (const auto& [team, a] : acc)
    if (a.first > 0.0) out[team] = a.second / a.first;
  return out;
}

Calibration calibration_regression(
    const std::vector<std::pair<double, double>>& predicted_actual) {
  const std::size_t n = predicted_actual.size();
  if (n < 3) throw ConfigError("need at least 3 points to calibrate");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : predicted_actual) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : predicted_actual) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx <= 0.0)
    throw NumericError("constant predictions; slope is undefined");
  Calibration c;
  c.gamma = sxy / sxx;
  c.alpha = my - c.gamma * mx;
  if (syy <= 0.0) {
    c.r2 = 1.0;  // flat truth fitted exactly by alpha
  } else {
    double ssres = 0.0;
    for (const auto& [x, y] : predicted_actual) {
      const double r = y - (c.alpha + c.gamma * x);
      ssres += r * r;
    }
    c.r2 = 1.0 - ssres / syy;
  }
  return c;
}

std::vector<TeamSeasonRecord> read_team_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty team record file");
  auto header = csv::split_line(line);
  int c_fr = -1, c_w = -1, c_l = -1, c_truth = -1, c_pct = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const int k = static_cast<int>(i);
    if (header[i] == "franchise") c_fr = k;
    else if (header[i] == "sampled_w") c_w = k;
    else if (header[i] == "sampled_l") c_l = k;
    else if (header[i] == "truth_wins") c_truth = k;
    else if (header[i] == "pct_sampled") c_pct = k;
  }
  if (c_fr < 0 || c_w < 0 || c_l < 0)
    throw ParseError("need franchise, sampled_w, sampled_l columns");

  std::vector<TeamSeasonRecord> rows;
  std::int64_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (csv::trim(line).empty()) continue;
    auto f = csv::split_line(line);
    if (f.size() != header.size())
      throw ParseError("ragged team record row " + std::to_string(row_no));
    auto where = "row " + std::to_string(row_no);
    TeamSeasonRecord r;
    r.franchise = f[static_cast<std::size_t>(c_fr)];
    r.sampled_w = csv::parse_number(f[static_cast<std::size_t>(c_w)], where);
    r.sampled_l = csv::parse_number(f[static_cast<std::size_t>(c_l)], where);
    if (c_truth >= 0 && !f[static_cast<std::size_t>(c_truth)].empty())
      r.truth_wins =
          csv::parse_number(f[static_cast<std::size_t>(c_truth)], where);
    if (c_pct >= 0 && !f[static_cast<std::size_t>(c_pct)].empty())
      r.pct_sampled =
          csv::parse_number(f[static_cast<std::size_t>(c_pct)], where);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TeamSeasonRecord> read_team_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open team record file: " + path);
  return read_team_records_csv(in);
}

void write_validation_report(std::ostream& out,
                             const std::vector<TeamSeasonRecord>& rows,
                             const std::string& label) {
  char buf[160];
  if (!label.empty()) out << label << "\n";
  std::snprintf(buf, sizeof buf, "%-16s %9s %6s %6s %6s %7s %7s\n",
                "Franchise", "Sampled", "MLE", "Bayes", "Truth", "Error",
                "%Samp");
  out << buf;
  bool any_truth = false;
  for (const auto& r : rows) {
    const double n = r.sampled_w + r.sampled_l;
    const double mle = mle_wins(r.sampled_w, n, r.games_season);
    const double bayes = bayes_wins(r.sampled_w, n, 5.0, 5.0, r.games_season);
    std::string rec = csv::format_number(r.sampled_w) + "-" +
                      csv::format_number(r.sampled_l);
    std::snprintf(buf, sizeof buf, "%-16s %9s %6.1f %6.1f", r.franchise.c_str(),
                  rec.c_str(), mle, bayes);
    out << buf;
    if (r.truth_wins) {
      any_truth = true;
      std::snprintf(buf, sizeof buf, " %6.0f %+7.1f", *r.truth_wins,
                    mle - *r.truth_wins);
      out << buf;
    } else {
      out << "      -       -";
    }
    if (r.pct_sampled) {
      std::snprintf(buf, sizeof buf, " %6.1f%%", *r.pct_sampled);
      out << buf;
    } else {
      std::snprintf(buf, sizeof buf, " %6.1f%%", n / r.games_season * 100.0);
      out << buf;
    }
    out << "\n";
  }
  if (any_truth) {
    const auto s = score_estimators(rows);
    std::snprintf(buf, sizeof buf, "%-16s %9s %6.1f %6.1f\n", "League MAE", "",
                  s.mae_mle, s.mae_bayes);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-16s %9s %6.1f %6.1f\n", "League RMSE",
                  "", s.rmse_mle, s.rmse_bayes);
    out << buf;
  }
}

}  // namespace rapm
