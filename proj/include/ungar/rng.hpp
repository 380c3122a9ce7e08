#pragma once

#include <cmath>
#include <cstdint>

#include "ungar/common.hpp"

// Reproducible randomness for the simulation layer.
//
// Two access patterns, both built on the SplitMix64 mixing function:
//  * RngStream: a sequential generator; the stream for trial i of a run with
//    master seed s starts at state mix(s, i), so trials are independent of
//    scheduling and worker count.
//  * counter-based draws keyed by (stream seed, a, b): the value depends only
//    on the key, never on consumption order.  The coupled permutation chains
//    use this for their indexed Bernoulli variables.

namespace ungar::rng {

// SplitMix64 output (finalizer) function.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in the open interval (0,1); 2^-54 <= result <= 1 - 2^-54.
inline double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  double next_unit() { return unit_open(next_u64()); }

  bool bernoulli(double p) { return next_unit() < p; }

  // Geometric on {1,2,...} with success probability p: ceil(ln U / ln(1-p)).
  std::uint64_t geometric(double p) {
    if (p <= 0.0 || p > 1.0) throw invalid_input_error("geometric: p must be in (0,1]");
    if (p == 1.0) return 1;
    double u = next_unit();
    double g = std::ceil(std::log(u) / std::log1p(-p));
    if (g < 1.0) return 1;
    return static_cast<std::uint64_t>(g);
  }

 private:
  std::uint64_t state_;
};

// Independent stream for one trial of a run.
inline RngStream stream_for_trial(std::uint64_t master_seed, std::uint64_t trial) {
  return RngStream(mix64(master_seed ^ mix64(trial + 0x5851F42D4C957F2DULL)));
}

// Stateless draw keyed by (seed, a, b).
inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(seed + 0x9E3779B97F4A7C15ULL * (a + 1)) + 0xD1B54A32D192ED03ULL * (b + 1));
}

inline bool counter_bernoulli(std::uint64_t seed, std::uint64_t a, std::uint64_t b, double p) {
  return unit_open(counter_u64(seed, a, b)) < p;
}

}  // namespace ungar::rng
