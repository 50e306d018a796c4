#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "rapm/stint.hpp"

namespace rapm {

// Separated-encoding weighted regression system. For P rostered players the
// design has 2P+1 columns: column 0 is the all-ones baseline, columns 1..P
// flag the five offensive players with +1, columns P+1..2P flag the five
// defensive players with -1. The response is points per 100 possessions of
// the offensive side, weighted by its possession count.
struct RidgeSystem {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::VectorXd w;
  int n_players = 0;
  std::int64_t n_total_rows = 0;  // pre-filter row count, drives the dof rule

  Eigen::Index rows() const { return X.rows(); }
  Eigen::Index cols() const { return X.cols(); }
};

// Rows entering the system are the even-indexed records with o_poss >= 1;
// sub-possession and empty stints carry no usable rate. The retained count
// equals n_total_rows / 2 - n_zero_poss_even for a well-formed mirrored file.
RidgeSystem build_system(const SeasonDataset& ds);

}  // namespace rapm
