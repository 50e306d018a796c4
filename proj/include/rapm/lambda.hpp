#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rapm/design.hpp"

namespace rapm {

// Season-coverage heuristic: lambda = (games_logged / games_season) * scale.
// Fully logged seasons land at the scale itself.
double coverage_scaled_lambda(double games_logged, double games_season,
                              double scale = 5000.0);

struct CvConfig {
  int folds = 5;
  int grid_points = 101;
  double grid_lo = 1e-10;
  double grid_hi = 1e10;
  double train_fraction = 0.8;  // remainder is a held-out check set
  std::uint64_t seed = 0;
  bool weighted = false;  // possession weights in both fit and fold error
  std::ostream* warnings = nullptr;
};

struct CvResult {
  double lambda_star = 0.0;
  double cv_error = 0.0;                // mean fold MSE at lambda_star
  double holdout_error = 0.0;           // refit on full train, scored on 20%
  std::vector<double> grid;             // evaluated penalties, ascending
  std::vector<double> mean_fold_error;  // aligned with grid
  int skipped_folds = 0;
};

// K-fold grid search on a shuffled train split. Folds are dealt round-robin
// from the shuffled order; ties prefer the smaller penalty. Every draw comes
// from the seed, so reruns are bit-identical.
CvResult cross_validated_lambda(const RidgeSystem& sys,
                                const CvConfig& cfg = {});

struct LambdaReport {
  double lambda_cs = 0.0;
  double lambda_cv = 0.0;
  double ratio = 0.0;  // cs / cv
  bool agreement = false;
  double band_lo = 0.99, band_hi = 1.01;
};

LambdaReport compare_lambdas(double lambda_cs, double lambda_cv);

}  // namespace rapm
