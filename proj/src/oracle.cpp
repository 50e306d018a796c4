#include "rapm/oracle.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "rapm/errors.hpp"

namespace rapm {

namespace {
constexpr double kZ95 = 1.96;
}

NaiveMatrix naive_inverse(const NaiveMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw ConfigError("cannot invert an empty matrix");
  for (const auto& row : a)
    if (row.size() != n) throw ConfigError("matrix is not square");

  // Augment [A | I] and eliminate to [I | A^-1].
  NaiveMatrix m(n, std::vector<double>(2 * n, 0.0));
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = a[i][j];
      scale = std::max(scale, std::fabs(a[i][j]));
    }
    m[i][n + i] = 1.0;
  }
  if (scale == 0.0) throw NumericError("singular matrix (all zero)");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) < 1e-13 * scale)
      throw NumericError("singular matrix at column " + std::to_string(col));
    std::swap(m[col], m[piv]);
    const double d = m[col][col];
    for (std::size_t j = 0; j < 2 * n; ++j) m[col][j] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
    }
  }

  NaiveMatrix inv(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

std::vector<double> brute_force_ridge(const NaiveMatrix& x,
                                      const std::vector<double>& w,
                                      const std::vector<double>& y,
                                      double lambda, int max_cols) {
  const std::size_t n = x.size();
  if (n == 0) throw ConfigError("empty design");
  const std::size_t p = x[0].size();
  if (p > static_cast<std::size_t>(max_cols))
    throw ConfigError("brute-force path is capped at " +
                      std::to_string(max_cols) + " columns");
  if (w.size() != n || y.size() != n)
    throw ConfigError("mismatched design/weight/response sizes");
  for (const auto& row : x)
    if (row.size() != p) throw ConfigError("ragged design matrix");
  if (lambda <= 0.0) throw ConfigError("lambda must be positive");

  NaiveMatrix m(p, std::vector<double>(p, 0.0));
  std::vector<double> v(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      const double wx = w[i] * x[i][a];
      v[a] += wx * y[i];
      for (std::size_t b = 0; b < p; ++b) m[a][b] += wx * x[i][b];
    }
  }
  for (std::size_t a = 0; a < p; ++a) m[a][a] += lambda;

  NaiveMatrix inv = naive_inverse(m);
  std::vector<double> beta(p, 0.0);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) beta[a] += inv[a][b] * v[b];
  return beta;
}

double approx_half_width(double n_poss, double sigma_hat, double lambda) {
  if (lambda <= 0.0) throw ConfigError("lambda must be positive");
  if (n_poss < 0.0) throw ConfigError("possession count must be nonnegative");
  if (sigma_hat < 0.0) throw ConfigError("sigma must be nonnegative");
  return kZ95 * sigma_hat * std::sqrt(2.0) / std::sqrt(n_poss + lambda);
}

double required_possessions(double target_half_width, double sigma_hat,
                            double lambda) {
  if (target_half_width <= 0.0)
    throw ConfigError("target half-width must be positive");
  if (lambda < 0.0) throw ConfigError("lambda must be nonnegative");
  if (sigma_hat < 0.0) throw ConfigError("sigma must be nonnegative");
  const double need = 2.0 * kZ95 * kZ95 * sigma_hat * sigma_hat /
                          (target_half_width * target_half_width) -
                      lambda;
  return need > 0.0 ? need : 0.0;
}

}  // namespace rapm
