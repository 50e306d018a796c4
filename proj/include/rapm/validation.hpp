#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rapm/ridge.hpp"

namespace rapm {

struct TeamSeasonRecord {
  std::string franchise;
  double sampled_w = 0.0, sampled_l = 0.0;
  double games_season = 82.0;
  std::optional<double> truth_wins;
  std::optional<double> pct_sampled;
};

// Straight frequency scaled to the season: (w / n) * games.
double mle_wins(double w, double n, double games_season = 82.0);

// Beta(5,5)-shrunk rate scaled to the season: ((w+5)/(n+10)) * games. Always
// strictly between the MLE and the all-even midpoint when w/n != 1/2.
double bayes_wins(double w, double n, double prior_a = 5.0,
                  double prior_b = 5.0, double games_season = 82.0);

struct EstimatorScores {
  double mae_mle = 0.0, mae_bayes = 0.0;
  double rmse_mle = 0.0, rmse_bayes = 0.0;
  int n_scored = 0;  // rows carrying a truth value
};

EstimatorScores score_estimators(const std::vector<TeamSeasonRecord>& rows);

// Possession-weighted roster rating per team, weight = off_poss + def_poss.
std::map<std::string, double> team_rating_prediction(const RapmTable& table);

struct Calibration {
  double alpha = 0.0, gamma = 0.0, r2 = 0.0;
};

// OLS of actual on predicted: actual ~ alpha + gamma * predicted.
Calibration calibration_regression(
    const std::vector<std::pair<double, double>>& predicted_actual);

// CSV with columns franchise, sampled_w, sampled_l and optionally
// truth_wins, pct_sampled; unknown columns are ignored.
std::vector<TeamSeasonRecord> read_team_records_csv(std::istream& in);
std::vector<TeamSeasonRecord> read_team_records_csv(const std::string& path);

// Season table with per-franchise estimates and a league MAE/RMSE footer.
void write_validation_report(std::ostream& out,
                             const std::vector<TeamSeasonRecord>& rows,
                             const std::string& label = "");

}  // namespace rapm
