#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ungar/common.hpp"

namespace ungar {

// Moment summary of a Monte Carlo sample.  capped counts trials that hit the
// step cap; those are excluded from every moment.
struct SummaryStats {
  std::uint64_t count = 0;
  std::uint64_t capped = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double stddev = 0.0;
  double stderror = 0.0;
  double ci95_halfwidth = 0.0;
  // Standard error of the sample variance (fourth-moment estimate), for
  // distribution-agreement tests.
  double variance_stderror = 0.0;
};

// Summation runs in a fixed order over the sample vector, so results are
// identical regardless of how trials were scheduled.
inline SummaryStats summarize(const std::vector<double>& xs, std::uint64_t capped = 0) {
  SummaryStats s;
  s.count = xs.size();
  s.capped = capped;
  if (xs.empty()) return s;
  long double sum = 0.0L;
  for (double x : xs) sum += x;
  const long double mean = sum / xs.size();
  long double m2 = 0.0L, m4 = 0.0L;
  for (double x : xs) {
    const long double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  s.mean = static_cast<double>(mean);
  const std::uint64_t n = xs.size();
  if (n >= 2) {
    s.variance = static_cast<double>(m2 / (n - 1));
    s.stddev = std::sqrt(s.variance);
    s.stderror = s.stddev / std::sqrt(static_cast<double>(n));
    s.ci95_halfwidth = 1.96 * s.stderror;
    const double m2n = static_cast<double>(m2 / n);
    const double m4n = static_cast<double>(m4 / n);
    const double var_of_var =
        (m4n - m2n * m2n * (static_cast<double>(n) - 3.0) / (static_cast<double>(n) - 1.0)) / n;
    s.variance_stderror = var_of_var > 0 ? std::sqrt(var_of_var) : 0.0;
  }
  return s;
}

inline SummaryStats summarize_counts(const std::vector<std::uint64_t>& xs,
                                     std::uint64_t capped = 0) {
  std::vector<double> d(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) d[i] = static_cast<double>(xs[i]);
  return summarize(d, capped);
}

}  // namespace ungar
