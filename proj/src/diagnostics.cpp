#include "rapm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rapm/csv.hpp"
#include "rapm/errors.hpp"

namespace rapm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double quantile_linear(const std::vector<double>& s, double p) {
  if (s.empty()) throw ConfigError("quantile of an empty sample");
  if (p < 0.0 || p > 1.0) throw ConfigError("quantile level outside [0, 1]");
  const double pos = p * static_cast<double>(s.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

Histogram fd_histogram(std::vector<double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw ConfigError("need at least two samples to bin");
  std::sort(samples.begin(), samples.end());
  const double lo = samples.front(), hi = samples.back();
  const double iqr =
      quantile_linear(samples, 0.75) - quantile_linear(samples, 0.25);

  Histogram h;
  if (iqr <= 0.0) {
    h.degenerate = true;
    double a = lo, b = hi;
    if (a == b) {
      a -= 0.5;
      b += 0.5;
    }
    h.edges = {a, b};
    h.counts = {static_cast<std::int64_t>(n)};
    h.bin_width = b - a;
    return h;
  }

  h.bin_width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  const int bins =
      std::max(1, static_cast<int>(std::ceil((hi - lo) / h.bin_width)));
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b)
    h.edges[static_cast<std::size_t>(b)] = lo + h.bin_width * b;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : samples) {
    int b = static_cast<int>((v - lo) / h.bin_width);
    if (b >= bins) b = bins - 1;  // top edge is inclusive
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

double silverman_bandwidth(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw ConfigError("need at least two samples for a bandwidth");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double iqr =
      quantile_linear(sorted, 0.75) - quantile_linear(sorted, 0.25);
  const double h = 0.9 * std::min(sd, iqr / 1.34) *
                   std::pow(static_cast<double>(n), -0.2);
  if (!(h > 0.0))
    throw NumericError(
        "degenerate sample gives a zero bandwidth; bin it instead");
  return h;
}

Kde silverman_kde(const std::vector<double>& samples, int grid_points,
                  std::optional<std::pair<double, double>> range) {
  if (grid_points < 2) throw ConfigError("need at least two grid points");
  Kde k;
  k.bandwidth = silverman_bandwidth(samples);
  auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double lo = range ? range->first : *mn - 3.0 * k.bandwidth;
  const double hi = range ? range->second : *mx + 3.0 * k.bandwidth;
  if (!(hi > lo)) throw ConfigError("empty density grid range");

  k.grid.resize(static_cast<std::size_t>(grid_points));
  k.density.assign(static_cast<std::size_t>(grid_points), 0.0);
  const double step = (hi - lo) / (grid_points - 1);
  const double norm = 1.0 / (static_cast<double>(samples.size()) *
                             k.bandwidth * std::sqrt(kTwoPi));
  for (int g = 0; g < grid_points; ++g) {
    const double x = lo + step * g;
    k.grid[static_cast<std::size_t>(g)] = x;
    double acc = 0.0;
    for (double v : samples) {
      const double z = (x - v) / k.bandwidth;
      acc += std::exp(-0.5 * z * z);
    }
    k.density[static_cast<std::size_t>(g)] = norm * acc;
  }
  return k;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << csv::format_number(h.edges[b]) << ','
        << csv::format_number(h.edges[b + 1]) << ',' << h.counts[b] << '\n';
}

void write_kde_pair_csv(std::ostream& out, const Kde& a, const Kde& b,
                        const char* label_a, const char* label_b) {
  out << label_a << "_x," << label_a << "_density," << label_b << "_x,"
      << label_b << "_density\n";
  const std::size_t n = std::max(a.grid.size(), b.grid.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.grid.size())
      out << csv::format_number(a.grid[i]) << ','
          << csv::format_number(a.density[i]);
    else
      out << ',';
    out << ',';
    if (i < b.grid.size())
      out << csv::format_number(b.grid[i]) << ','
          << csv::format_number(b.density[i]);
    else
      out << ',';
    out << '\n';
  }
}

}  // namespace rapm
