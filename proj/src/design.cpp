#include "rapm/design.hpp"

#include <cmath>

#include "rapm/errors.hpp"

namespace rapm {

RidgeSystem build_system(const SeasonDataset& ds) {
  const int p = ds.roster.size();
  if (p == 0) throw ConfigError("cannot build a system from an empty roster");

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.records.size(); i += 2)
    if (ds.records[i].o_poss >= 1.0) keep.push_back(i);
  if (keep.empty()) throw ConfigError("no usable stints (all under 1 possession)");

  RidgeSystem sys;
  sys.n_players = p;
  sys.n_total_rows = ds.n_total_rows;
  const Eigen::Index n = static_cast<Eigen::Index>(keep.size());
  sys.X = Eigen::MatrixXd::Zero(n, 2 * p + 1);
  sys.y.resize(n);
  sys.w.resize(n);

  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& rec = ds.records[keep[static_cast<std::size_t>(r)]];
    if (!std::isfinite(rec.o_poss) || !std::isfinite(rec.o_score))
      throw NumericError("non-finite stint row");
    sys.X(r, 0) = 1.0;
    for (const auto& name : rec.o_players)
      sys.X(r, 1 + ds.roster.require(name)) = 1.0;
    for (const auto& name : rec.d_players)
      sys.X(r, 1 + p + ds.roster.require(name)) = -1.0;
    sys.y(r) = 100.0 * rec.o_score / rec.o_poss;
    sys.w(r) = rec.o_poss;
  }
  return sys;
}

}  // namespace rapm
