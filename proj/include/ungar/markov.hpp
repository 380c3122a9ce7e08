#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <queue>
#include <thread>
#include <utility>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/lattice.hpp"
#include "ungar/rational.hpp"
#include "ungar/rng.hpp"
#include "ungar/stats.hpp"

namespace ungar {

// One chain step from x: every lower cover joins T independently with
// probability p and the state moves to the meet of {x} and T.  The only way
// to stay put is T empty, so the self-loop weight is (1-p)^covers.

template <typename Real>
std::vector<std::pair<int, Real>> transition_distribution(const FiniteLattice& l, int x,
                                                          const Real& p) {
  const auto& covs = l.down_covers(x);
  const int c = static_cast<int>(covs.size());
  if (c > limits::kCoverSubsetCap)
    throw resource_limit_error("element has too many lower covers for exact transitions");
  const Real q = Real(1) - p;
  std::map<int, Real> acc;
  auto rec = [&](auto&& self, int i, int cur, const Real& w, bool any) -> void {
    if (i == c) {
      int target = any ? cur : x;
      auto [it, fresh] = acc.emplace(target, w);
      if (!fresh) it->second += w;
      return;
    }
    self(self, i + 1, cur, w * q, any);
    int next = any ? l.meet(cur, covs[i]) : covs[i];
    self(self, i + 1, next, w * p, true);
  };
  rec(rec, 0, x, Real(1), false);
  return {acc.begin(), acc.end()};
}

// Deterministic p = 1 step: meet of x with all its lower covers.
inline int pop(const FiniteLattice& l, int x) {
  int cur = x;
  for (int y : l.down_covers(x)) cur = l.meet(cur, y);
  return cur;
}

// Iterations of pop needed to reach the bottom from x.
inline int pop_iterations(const FiniteLattice& l, int x) {
  int steps = 0;
  while (x != l.bottom()) {
    x = pop(l, x);
    ++steps;
  }
  return steps;
}

// Expected steps to absorption from every element, by forward substitution
// along a linear extension.  h(x) = (1 + sum_{y<x} P(x,y) h(y)) / (1 - P(x,x)).
template <typename Real>
std::vector<Real> absorption_times_linear(const FiniteLattice& l, const Real& p) {
  check_probability(p);
  std::vector<Real> h(l.size(), Real(0));
  for (int x : l.poset().topo_order()) {
    if (x == l.bottom()) continue;
    Real acc(1);
    Real self_w(0);
    for (auto& [y, w] : transition_distribution(l, x, p)) {
      if (y == x)
        self_w = w;
      else
        acc += w * h[y];
    }
    h[x] = acc / (Real(1) - self_w);
  }
  return h;
}

template <typename Real>
Real expected_steps_linear(const FiniteLattice& l, const Real& p) {
  return absorption_times_linear(l, p)[l.top()];
}

// Same quantity computed by memoized descent from the top; only elements
// reachable from the start are ever solved.
template <typename Real>
Real expected_steps_recursive(const FiniteLattice& l, const Real& p, int from) {
  check_probability(p);
  std::vector<char> done(l.size(), 0);
  std::vector<Real> memo(l.size(), Real(0));
  done[l.bottom()] = 1;
  auto solve = [&](auto&& self, int x) -> Real {
    if (done[x]) return memo[x];
    Real acc(1);
    Real self_w(0);
    for (auto& [y, w] : transition_distribution(l, x, p)) {
      if (y == x)
        self_w = w;
      else
        acc += w * self(self, y);
    }
    memo[x] = acc / (Real(1) - self_w);
    done[x] = 1;
    return memo[x];
  };
  return solve(solve, from);
}

template <typename Real>
Real expected_steps_recursive(const FiniteLattice& l, const Real& p) {
  return expected_steps_recursive(l, p, l.top());
}

struct SimulationOptions {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::uint64_t step_cap = limits::kStepCap;
  int threads = 1;
  double max_capped_fraction = 0.001;
};

struct SimulationResult {
  SummaryStats stats;
  std::vector<double> samples;  // per-trial step counts, capped trials excluded
};

// Runs independent trials of fn, one counter-derived stream per trial, and
// summarizes the returned statistics.  A NaN return marks a capped trial; it
// is excluded from the moments, and the whole run fails when capped trials
// exceed max_capped_fraction.  Samples land in a vector indexed by trial, so
// results are identical for any worker count.
template <typename TrialFn>
SimulationResult run_trials(TrialFn&& fn, const SimulationOptions& opt) {
  if (opt.trials == 0) throw invalid_input_error("simulation needs at least one trial");
  if (opt.threads < 1) throw invalid_input_error("worker count must be positive");
  std::vector<double> raw(opt.trials);

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t t = lo; t < hi; ++t) {
      auto stream = rng::stream_for_trial(opt.seed, t);
      raw[t] = fn(stream);
    }
  };

  const int workers = static_cast<int>(
      std::min<std::uint64_t>(opt.threads, std::max<std::uint64_t>(opt.trials, 1)));
  if (workers <= 1) {
    run_range(0, opt.trials);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::uint64_t chunk = (opt.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::uint64_t lo = w * chunk;
      std::uint64_t hi = std::min<std::uint64_t>(opt.trials, lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        try {
          if (lo < hi) run_range(lo, hi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SimulationResult res;
  std::uint64_t capped = 0;
  res.samples.reserve(opt.trials);
  for (double v : raw) {
    if (std::isnan(v))
      ++capped;
    else
      res.samples.push_back(v);
  }
  if (static_cast<double>(capped) >
      opt.max_capped_fraction * static_cast<double>(opt.trials))
    throw resource_limit_error("too many trials hit the step cap: " + std::to_string(capped) +
                               " of " + std::to_string(opt.trials));
  res.stats = summarize(res.samples, capped);
  return res;
}

// Absorbing-chain wrapper: make_state(stream) builds the initial state, step
// mutates it, absorbed tests for the end; the sample is the step count.
template <typename MakeState, typename StepFn, typename AbsorbedFn>
SimulationResult simulate_absorption(MakeState&& make_state, StepFn&& step,
                                     AbsorbedFn&& absorbed, const SimulationOptions& opt) {
  return run_trials(
      [&](rng::RngStream& stream) -> double {
        auto state = make_state(stream);
        std::uint64_t steps = 0;
        while (!absorbed(state) && steps < opt.step_cap) {
          step(state, stream);
          ++steps;
        }
        return absorbed(state) ? static_cast<double>(steps)
                               : std::numeric_limits<double>::quiet_NaN();
      },
      opt);
}

// Absorbing walk on a lattice from the top, sampling T over lower covers in
// id order so trajectories are reproducible.
inline int random_ungar_step(const FiniteLattice& l, int x, double p, rng::RngStream& stream) {
  int cur = x;
  bool any = false;
  for (int y : l.down_covers(x)) {
    if (!stream.bernoulli(p)) continue;
    cur = any ? l.meet(cur, y) : y;
    any = true;
  }
  return cur;
}

inline SimulationResult simulate_lattice_hitting_time(const FiniteLattice& l, double p,
                                                      const SimulationOptions& opt,
                                                      int from = -1) {
  check_probability(p);
  const int start = from < 0 ? l.top() : from;
  return simulate_absorption(
      [&](rng::RngStream&) { return start; },
      [&](int& x, rng::RngStream& stream) { x = random_ungar_step(l, x, p, stream); },
      [&](int x) { return x == l.bottom(); }, opt);
}

// Single recorded trajectory, for trace output.
inline std::vector<int> sample_trajectory(const FiniteLattice& l, double p, std::uint64_t seed,
                                          std::uint64_t step_cap = limits::kStepCap,
                                          int from = -1) {
  check_probability(p);
  auto stream = rng::stream_for_trial(seed, 0);
  int x = from < 0 ? l.top() : from;
  std::vector<int> traj{x};
  while (x != l.bottom() && traj.size() <= step_cap) {
    x = random_ungar_step(l, x, p, stream);
    traj.push_back(x);
  }
  return traj;
}

// Fewest moves with nonempty T from `from` to `to`.  With
// first_move_proper the opening move may not take T = all lower covers.
inline int min_ungar_moves(const FiniteLattice& l, int from, int to,
                           bool first_move_proper = false) {
  auto targets = [&](int x, bool forbid_full) {
    const auto& covs = l.down_covers(x);
    const int c = static_cast<int>(covs.size());
    if (c > limits::kCoverSubsetCap)
      throw resource_limit_error("element has too many lower covers for move enumeration");
    std::vector<int> out;
    auto rec = [&](auto&& self, int i, int cur, bool any, bool full) -> void {
      if (i == c) {
        if (any && !(forbid_full && full)) out.push_back(cur);
        return;
      }
      self(self, i + 1, cur, any, false);
      self(self, i + 1, any ? l.meet(cur, covs[i]) : covs[i], true, full);
    };
    rec(rec, 0, x, false, true);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  if (from == to) return 0;
  std::vector<int> dist(l.size(), -1);
  std::queue<int> bfs;
  auto seed = [&](int x, int d) {
    if (dist[x] < 0) {
      dist[x] = d;
      bfs.push(x);
    }
  };
  for (int y : targets(from, first_move_proper)) seed(y, 1);
  while (!bfs.empty()) {
    int x = bfs.front();
    bfs.pop();
    if (x == to) return dist[x];
    for (int y : targets(x, false)) seed(y, dist[x] + 1);
  }
  return -1;
}

}  // namespace ungar
