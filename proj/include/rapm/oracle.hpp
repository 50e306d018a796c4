#pragma once

#include <vector>

namespace rapm {

// Reference-path linear algebra used to cross-check the production solver.
// Everything here is plain nested vectors and naive elimination on purpose:
// the two implementations must not share code or shortcuts.
using NaiveMatrix = std::vector<std::vector<double>>;

// Gauss-Jordan inverse with partial pivoting. Throws NumericError on a
// (near-)singular input.
NaiveMatrix naive_inverse(const NaiveMatrix& a);

// Literal (X'WX + lambda I)^-1 X'Wy with triple-loop products and naive
// elimination. Guarded to 50 columns; it exists for verification, not speed.
std::vector<double> brute_force_ridge(const NaiveMatrix& x,
                                      const std::vector<double>& w,
                                      const std::vector<double>& y,
                                      double lambda, int max_cols = 50);

// Large-sample interval half-width for a player's combined rating after
// n_poss weighted possessions at ridge penalty lambda:
//   h = 1.96 * sigma_hat * sqrt(2) / sqrt(n_poss + lambda)
double approx_half_width(double n_poss, double sigma_hat, double lambda);

// Possessions needed before the half-width drops to target_half_width,
// floored at zero (a strong penalty alone can already satisfy loose targets):
//   n = max(0, 2 * 1.96^2 * sigma_hat^2 / h*^2 - lambda)
double required_possessions(double target_half_width, double sigma_hat,
                            double lambda);

}  // namespace rapm
