#include "rapm/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

#include "rapm/errors.hpp"
#include "rapm/rng.hpp"

namespace rapm {

double coverage_scaled_lambda(double games_logged, double games_season,
                              double scale) {
  if (!(games_logged > 0.0))
    throw ConfigError("logged game count must be positive");
  if (!(games_season > 0.0))
    throw ConfigError("season game count must be positive");
  if (games_logged > games_season)
    throw ConfigError("logged games exceed the season length");
  if (!(scale > 0.0)) throw ConfigError("lambda scale must be positive");
  return games_logged / games_season * scale;
}

namespace {

struct FoldEval {
  // Spectral form of the fold-train normal matrix: solutions for any lambda
  // are beta = V diag(1/(eval+lambda)) V' b.
  Eigen::VectorXd evals;
  Eigen::VectorXd vtb;       // V' X'Wy
  Eigen::MatrixXd hold_xv;   // X_fold V
  Eigen::VectorXd hold_y;
  Eigen::VectorXd hold_w;
  bool usable = false;
};

FoldEval prepare_fold(const RidgeSystem& sys, const std::vector<int>& train,
                      const std::vector<int>& hold, bool weighted) {
  FoldEval f;
  const Eigen::Index p = sys.cols();
  if (train.empty() || hold.empty()) return f;

  double y0 = sys.y(train[0]);
  bool constant = true;
  for (int i : train)
    if (sys.y(i) != y0) {
      constant = false;
      break;
    }
  if (constant) return f;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  for (int i : train) {
    const double wi = weighted ? sys.w(i) : 1.0;
    a.selfadjointView<Eigen::Lower>().rankUpdate(sys.X.row(i).transpose(), wi);
    b += wi * sys.y(i) * sys.X.row(i).transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw NumericError("fold eigendecomposition failed");
  f.evals = es.eigenvalues();
  f.vtb = es.eigenvectors().transpose() * b;

  f.hold_xv.resize(static_cast<Eigen::Index>(hold.size()), p);
  f.hold_y.resize(static_cast<Eigen::Index>(hold.size()));
  f.hold_w.resize(static_cast<Eigen::Index>(hold.size()));
  for (std::size_t r = 0; r < hold.size(); ++r) {
    f.hold_xv.row(static_cast<Eigen::Index>(r)) =
        sys.X.row(hold[r]) * es.eigenvectors();
    f.hold_y(static_cast<Eigen::Index>(r)) = sys.y(hold[r]);
    f.hold_w(static_cast<Eigen::Index>(r)) = sys.w(hold[r]);
  }
  f.usable = true;
  return f;
}

double fold_error(const FoldEval& f, double lambda, bool weighted) {
  Eigen::VectorXd scaled =
      f.vtb.array() / (f.evals.array() + lambda);
  Eigen::VectorXd resid = f.hold_y - f.hold_xv * scaled;
  if (weighted) {
    double sw = f.hold_w.sum();
    return resid.cwiseProduct(f.hold_w).dot(resid) / sw;
  }
  return resid.squaredNorm() / static_cast<double>(resid.size());
}

}  // namespace

CvResult cross_validated_lambda(const RidgeSystem& sys, const CvConfig& cfg) {
  if (cfg.folds < 2) throw ConfigError("need at least 2 folds");
  if (cfg.grid_points < 1) throw ConfigError("empty penalty grid");
  if (!(cfg.grid_lo > 0.0)) throw ConfigError("grid must stay positive");
  if (cfg.grid_hi < cfg.grid_lo) throw ConfigError("inverted penalty grid");
  if (!(cfg.train_fraction > 0.0) || cfg.train_fraction > 1.0)
    throw ConfigError("train fraction must be in (0, 1]");

  const int n = static_cast<int>(sys.rows());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed);
  rng.shuffle(order);

  int n_train = static_cast<int>(std::floor(
      cfg.train_fraction * static_cast<double>(n) + 1e-12));
  n_train = std::min(n_train, n);
  if (n_train < cfg.folds)
    throw ConfigError("train split smaller than the fold count");
  std::vector<int> train(order.begin(), order.begin() + n_train);
  std::vector<int> check(order.begin() + n_train, order.end());

  CvResult res;
  res.grid.resize(static_cast<std::size_t>(cfg.grid_points));
  if (cfg.grid_points == 1) {
    res.grid[0] = cfg.grid_lo;
  } else {
    const double llo = std::log10(cfg.grid_lo);
    const double lhi = std::log10(cfg.grid_hi);
    for (int k = 0; k < cfg.grid_points; ++k)
      res.grid[static_cast<std::size_t>(k)] =
          std::pow(10.0, llo + (lhi - llo) * k / (cfg.grid_points - 1));
  }

  std::ostream& warn = cfg.warnings ? *cfg.warnings : std::cerr;
  std::vector<FoldEval> folds;
  for (int fidx = 0; fidx < cfg.folds; ++fidx) {
    std::vector<int> hold, rest;
    for (int pos = 0; pos < n_train; ++pos)
      (pos % cfg.folds == fidx ? hold : rest)
          .push_back(train[static_cast<std::size_t>(pos)]);
    FoldEval f = prepare_fold(sys, rest, hold, cfg.weighted);
    if (!f.usable) {
      warn << "skipping degenerate fold " << fidx << "\n";
      ++res.skipped_folds;
      continue;
    }
    folds.push_back(std::move(f));
  }
  if (folds.empty()) throw NumericError("every fold was degenerate");

  res.mean_fold_error.resize(res.grid.size());
  std::size_t best = 0;
  for (std::size_t k = 0; k < res.grid.size(); ++k) {
    double total = 0.0;
    for (const auto& f : folds)
      total += fold_error(f, res.grid[k], cfg.weighted);
    res.mean_fold_error[k] = total / static_cast<double>(folds.size());
    if (res.mean_fold_error[k] < res.mean_fold_error[best]) best = k;
  }
  res.lambda_star = res.grid[best];
  res.cv_error = res.mean_fold_error[best];

  // Informational: refit on the whole train split, score the held-out 20%.
  if (!check.empty()) {
    FoldEval whole = prepare_fold(sys, train, check, cfg.weighted);
    res.holdout_error = whole.usable
                            ? fold_error(whole, res.lambda_star, cfg.weighted)
                            : std::numeric_limits<double>::quiet_NaN();
  } else {
    res.holdout_error = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

LambdaReport compare_lambdas(double lambda_cs, double lambda_cv) {
  if (!(lambda_cs > 0.0) || !(lambda_cv > 0.0))
    throw ConfigError("penalties must be positive to compare");
  LambdaReport rep;
  rep.lambda_cs = lambda_cs;
  rep.lambda_cv = lambda_cv;
  rep.ratio = lambda_cs / lambda_cv;
  rep.agreement = rep.ratio >= rep.band_lo && rep.ratio <= rep.band_hi;
  return rep;
}

}  // namespace rapm
