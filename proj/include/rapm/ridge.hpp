#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rapm/design.hpp"
#include "rapm/stint.hpp"

namespace rapm {

// How interval half-widths use the posterior covariance. diag ignores the
// offense/defense cross covariance; full includes it.
enum class CiMode { diag, full };

struct RidgeFit {
  Eigen::VectorXd beta;
  Eigen::MatrixXd cov;  // sigma2 * (X'WX + lambda I)^-1
  double lambda = 0.0;
  double sigma2 = 0.0;
  double dof = 0.0;
  int n_players = 0;
};

// Penalized weighted least squares, beta = (X'WX + lambda I)^-1 X'Wy.
// The baseline column is penalized like every other column.
Eigen::VectorXd solve_ridge(const RidgeSystem& sys, double lambda);

// Weighted residual variance with the file-level dof rule
//   dof = n_total_rows / 2 - 2P - 1,
// where n_total_rows counts every row of the source file, including the
// mirror rows and the sub-possession stints dropped before fitting.
double residual_variance(const RidgeSystem& sys, const Eigen::VectorXd& beta);

// Full posterior covariance, materialized dense. max_dim caps the explicit
// inverse; oversize requests fail rather than thrash.
Eigen::MatrixXd posterior_covariance(const RidgeSystem& sys, double sigma2,
                                     double lambda, int max_dim = 8192);

RidgeFit fit_ridge(const RidgeSystem& sys, double lambda, int max_dim = 8192);

struct RapmRow {
  std::string player, team;
  double off_poss = 0, off_pts = 0, def_poss = 0, def_pts = 0;
  double orapm = 0, drapm = 0, rapm = 0;
  double ci_low = 0, ci_high = 0;
  int rank = 0;
};

struct RapmTable {
  std::vector<RapmRow> rows;  // descending rapm, ties by name
  double intercept = 0;
  double center_off = 0, center_def = 0;  // subtracted block means
  double lambda = 0, sigma2 = 0;
  CiMode ci_mode = CiMode::diag;
};

// Centers each block on its mean so the published convention holds:
// ORAPM_j = beta_off_j - mean(beta_off), DRAPM_j = beta_def_j -
// mean(beta_def), total = sum. Intervals are 95% normal bands around the
// total using the summed block variances (plus cross term in full mode).
RapmTable extract_rapm(const RidgeFit& fit, const Roster& roster,
                       CiMode ci_mode = CiMode::diag);

}  // namespace rapm
