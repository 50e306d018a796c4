#include "rapm/ridge.hpp"

#include <algorithm>
#include <cmath>

#include "rapm/errors.hpp"

namespace rapm {

namespace {

constexpr double kZ95 = 1.96;

Eigen::MatrixXd normal_matrix(const RidgeSystem& sys, double lambda) {
  Eigen::MatrixXd a = sys.X.transpose() * sys.w.asDiagonal() * sys.X;
  a.diagonal().array() += lambda;
  return a;
}

}  // namespace

Eigen::VectorXd solve_ridge(const RidgeSystem& sys, double lambda) {
  if (!(lambda > 0.0))
    throw ConfigError("ridge penalty must be positive (got " +
                      std::to_string(lambda) + ")");
  Eigen::MatrixXd a = normal_matrix(sys, lambda);
  Eigen::VectorXd b = sys.X.transpose() * sys.w.cwiseProduct(sys.y);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw NumericError("ridge normal equations failed to factorize");
  Eigen::VectorXd beta = ldlt.solve(b);
  if (!beta.allFinite()) throw NumericError("non-finite ridge solution");
  return beta;
}

double residual_variance(const RidgeSystem& sys, const Eigen::VectorXd& beta) {
  const double dof =
      static_cast<double>(sys.n_total_rows) / 2.0 - 2.0 * sys.n_players - 1.0;
  if (dof <= 0.0)
    throw NumericError("non-positive degrees of freedom: " +
                       std::to_string(dof));
  Eigen::VectorXd r = sys.y - sys.X * beta;
  return r.cwiseProduct(sys.w).dot(r) / dof;
}

Eigen::MatrixXd posterior_covariance(const RidgeSystem& sys, double sigma2,
                                     double lambda, int max_dim) {
  if (!(lambda > 0.0)) throw ConfigError("ridge penalty must be positive");
  if (sigma2 < 0.0) throw ConfigError("negative residual variance");
  if (sys.cols() > max_dim)
    throw NumericError("covariance dimension " + std::to_string(sys.cols()) +
                       " exceeds the ceiling of " + std::to_string(max_dim));
  Eigen::MatrixXd a = normal_matrix(sys, lambda);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success)
    throw NumericError("posterior covariance failed to factorize");
  Eigen::MatrixXd inv =
      ldlt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  Eigen::MatrixXd cov = sigma2 * 0.5 * (inv + inv.transpose());
  for (Eigen::Index i = 0; i < cov.rows(); ++i)
    if (!(cov(i, i) > 0.0) && sigma2 > 0.0)
      throw NumericError("posterior covariance lost positive definiteness");
  return cov;
}

RidgeFit fit_ridge(const RidgeSystem& sys, double lambda, int max_dim) {
  RidgeFit fit;
  fit.lambda = lambda;
  fit.n_players = sys.n_players;
  fit.beta = solve_ridge(sys, lambda);
  fit.dof =
      static_cast<double>(sys.n_total_rows) / 2.0 - 2.0 * sys.n_players - 1.0;
  fit.sigma2 = residual_variance(sys, fit.beta);
  fit.cov = posterior_covariance(sys, fit.sigma2, lambda, max_dim);
  return fit;
}

RapmTable extract_rapm(const RidgeFit& fit, const Roster& roster,
                       CiMode ci_mode) {
  const int p = fit.n_players;
  if (p != roster.size())
    throw ConfigError("fit and roster disagree on player count");
  if (fit.beta.size() != 2 * p + 1)
    throw ConfigError("fit has the wrong coefficient count");

  RapmTable table;
  table.lambda = fit.lambda;
  table.sigma2 = fit.sigma2;
  table.ci_mode = ci_mode;
  table.intercept = fit.beta(0);
  table.center_off = fit.beta.segment(1, p).mean();
  table.center_def = fit.beta.segment(1 + p, p).mean();

  table.rows.reserve(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    const int k1 = 1 + j;
    const int k2 = 1 + p + j;
    RapmRow row;
    row.player = roster.names[static_cast<std::size_t>(j)];
    row.team = roster.team[static_cast<std::size_t>(j)];
    row.off_poss = roster.off_poss[static_cast<std::size_t>(j)];
    row.off_pts = roster.off_pts[static_cast<std::size_t>(j)];
    row.def_poss = roster.def_poss[static_cast<std::size_t>(j)];
    row.def_pts = roster.def_pts[static_cast<std::size_t>(j)];
    row.orapm = fit.beta(k1) - table.center_off;
    row.drapm = fit.beta(k2) - table.center_def;
    row.rapm = row.orapm + row.drapm;
    double var = fit.cov(k1, k1) + fit.cov(k2, k2);
    if (ci_mode == CiMode::full) var += 2.0 * fit.cov(k1, k2);
    const double hw = kZ95 * std::sqrt(std::max(0.0, var));
    row.ci_low = row.rapm - hw;
    row.ci_high = row.rapm + hw;
    table.rows.push_back(std::move(row));
  }

  std::sort(table.rows.begin(), table.rows.end(),
            [](const RapmRow& a, const RapmRow& b) {
              if (a.rapm != b.rapm) return a.rapm > b.rapm;
              return a.player < b.player;
            });
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    table.rows[i].rank = static_cast<int>(i) + 1;
  return table;
}

}  // namespace rapm
