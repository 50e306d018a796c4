#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace rapm {

// Quartile-based linear-interpolation quantile (the common "type 7"):
// q(p) sits at rank (n-1)p of the sorted sample, interpolated.
double quantile_linear(const std::vector<double>& sorted_samples, double p);

struct Histogram {
  std::vector<double> edges;        // size counts.size() + 1
  std::vector<std::int64_t> counts;
  double bin_width = 0.0;
  bool degenerate = false;  // zero IQR collapsed the rule to a single bin
};

// Freedman-Diaconis binning: width = 2 * IQR / n^(1/3). A zero IQR falls
// back to one bin spanning the data. Needs at least two samples. The top
// edge is inclusive so counts conserve the sample size exactly.
Histogram fd_histogram(std::vector<double> samples);

struct Kde {
  std::vector<double> grid, density;
  double bandwidth = 0.0;
};

// Silverman's plug-in bandwidth, 0.9 * min(sd, IQR/1.34) * n^(-1/5), with
// the n-1 denominator in sd. Zero bandwidth is an error; use the histogram
// instead for degenerate samples.
double silverman_bandwidth(const std::vector<double>& samples);

// Gaussian-kernel density on an even grid. Default span is
// [min - 3h, max + 3h] with 512 points; pass a range to widen it.
Kde silverman_kde(const std::vector<double>& samples, int grid_points = 512,
                  std::optional<std::pair<double, double>> range = {});

void write_histogram_csv(std::ostream& out, const Histogram& h);
// Two densities side by side (offense and defense ratings share a file).
void write_kde_pair_csv(std::ostream& out, const Kde& a, const Kde& b,
                        const char* label_a, const char* label_b);

}  // namespace rapm
