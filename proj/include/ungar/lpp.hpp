#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/markov.hpp"
#include "ungar/poset.hpp"
#include "ungar/rng.hpp"

namespace ungar {

// Last passage percolation on a poset: every element gets an independent
// geometric weight with mean 1/p and the value is the largest weight sum over
// a maximal chain.  For the ideal lattice of the poset, this value has the
// same law as the absorption time of the Ungarian chain, which makes the DP
// below an independent oracle for hitting-time statistics.

// Weights are drawn in element id order so trajectories are reproducible.
inline std::vector<std::uint64_t> sample_geometric_weights(const FinitePoset& p, double prob,
                                                           rng::RngStream& stream) {
  std::vector<std::uint64_t> w(p.size());
  for (int x = 0; x < p.size(); ++x) w[x] = stream.geometric(prob);
  return w;
}

inline std::uint64_t lpp_value(const FinitePoset& p, const std::vector<std::uint64_t>& w) {
  std::uint64_t best_total = 0;
  std::vector<std::uint64_t> best(p.size(), 0);
  for (int x : p.topo_order()) {
    std::uint64_t below = 0;
    for (int y : p.down_covers(x)) below = std::max(below, best[y]);
    best[x] = below + w[x];
    best_total = std::max(best_total, best[x]);
  }
  return best_total;
}

inline double sample_lpp_value(const FinitePoset& p, double prob, rng::RngStream& stream) {
  return static_cast<double>(lpp_value(p, sample_geometric_weights(p, prob, stream)));
}

inline SimulationResult estimate_lpp(const FinitePoset& p, double prob,
                                     const SimulationOptions& opt) {
  check_probability(prob);
  return run_trials(
      [&](rng::RngStream& stream) { return sample_lpp_value(p, prob, stream); }, opt);
}

// Asymptotic constant for the k x l grid blown up by n: E over n tends to
// (kbar + lbar + 2 sqrt((1-p) kbar lbar)) / p.
inline double rectangle_lpp_coefficient(double kbar, double lbar, double p) {
  check_probability(p);
  if (kbar <= 0 || lbar <= 0) throw invalid_input_error("rectangle sides must be positive");
  return (kbar + lbar + 2.0 * std::sqrt((1.0 - p) * kbar * lbar)) / p;
}

// Chernoff-style constant for a poset with longest chain ~ mu n and at most
// Gamma^n maximal chains: E over n is eventually below
// (mu + ln Gamma + sqrt(2 mu ln Gamma + (ln Gamma)^2)) / p.
inline double chernoff_lpp_coefficient(double mu, double gamma_count, double p) {
  check_probability(p);
  if (mu <= 0 || gamma_count < 1)
    throw invalid_input_error("chernoff coefficient needs mu > 0 and Gamma >= 1");
  double lg = std::log(gamma_count);
  return (mu + lg + std::sqrt(2.0 * mu * lg + lg * lg)) / p;
}

// Tail bound for a sum of k unit-mean-scaled geometrics exceeding gamma k:
// exp(-(gamma k / 2)(1 - 1/gamma)^2).
inline double geometric_tail_bound(double gamma_ratio, double k) {
  if (gamma_ratio <= 1 || k <= 0)
    throw invalid_input_error("tail bound needs gamma > 1 and k > 0");
  double d = 1.0 - 1.0 / gamma_ratio;
  return std::exp(-(gamma_ratio * k / 2.0) * d * d);
}

inline double empirical_tail(const std::vector<double>& samples, double threshold) {
  if (samples.empty()) throw invalid_input_error("empirical tail of no samples");
  std::size_t over = 0;
  for (double v : samples)
    if (v > threshold) ++over;
  return static_cast<double>(over) / static_cast<double>(samples.size());
}

}  // namespace ungar
