#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/lattice.hpp"
#include "ungar/markov.hpp"
#include "ungar/rng.hpp"

namespace ungar {

// One-line permutations of 1..n.  Descent positions are 1-based indices i
// with w(i) > w(i+1); the bottom of a descent is the smaller value w(i+1).

using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm w(n);
  std::iota(w.begin(), w.end(), 1);
  return w;
}

inline Perm decreasing_perm(int n) {
  Perm w(n);
  for (int i = 0; i < n; ++i) w[i] = n - i;
  return w;
}

inline bool is_permutation_of_1n(const Perm& w) {
  std::vector<char> seen(w.size() + 1, 0);
  for (int v : w) {
    if (v < 1 || v > static_cast<int>(w.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline long long inversions(const Perm& w) {
  long long inv = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++inv;
  return inv;
}

inline std::vector<int> descents(const Perm& w) {
  std::vector<int> d;
  for (int i = 1; i < static_cast<int>(w.size()); ++i)
    if (w[i - 1] > w[i]) d.push_back(i);
  return d;
}

inline std::vector<int> descent_bottoms(const Perm& w) {
  std::vector<int> b;
  for (int i : descents(w)) b.push_back(w[i]);
  return b;
}

// Ungar move: T must be a set of descent positions; each maximal run of
// consecutive positions i..j reverses the block w(i..j+1).  This is the meet
// of w with the covers {w s_i : i in T} in the right weak order.
inline Perm ungar_move(const Perm& w, const std::vector<int>& t) {
  std::vector<int> d = descents(w);
  for (int i : t)
    if (!std::binary_search(d.begin(), d.end(), i))
      throw invalid_input_error("ungar move position " + std::to_string(i) +
                                " is not a descent");
  Perm out = w;
  std::size_t k = 0;
  while (k < t.size()) {
    std::size_t k2 = k;
    while (k2 + 1 < t.size() && t[k2 + 1] == t[k2] + 1) ++k2;
    std::reverse(out.begin() + (t[k] - 1), out.begin() + (t[k2] + 1));
    k = k2 + 1;
  }
  return out;
}

inline Perm pop_perm(const Perm& w) { return ungar_move(w, descents(w)); }

// Pattern 312: positions i < j < k with w(j) < w(k) < w(i).
inline bool contains_312_pattern(const Perm& w) {
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i) {
    int best_mid = 0;  // smallest value seen between i and k so far
    for (int k = i + 1; k < n; ++k) {
      if (best_mid && best_mid < w[k] && w[k] < w[i]) return true;
      if (w[k] < w[i] && (best_mid == 0 || w[k] < best_mid)) best_mid = w[k];
    }
  }
  return false;
}

inline bool is_312_avoiding(const Perm& w) { return !contains_312_pattern(w); }

// All permutations of 1..n in lexicographic order; the index in this list is
// the element id used by the lattices below.
inline std::vector<Perm> all_permutations(int n) {
  if (n < 1 || n > 8) throw resource_limit_error("permutation enumeration supports n <= 8");
  std::vector<Perm> out;
  Perm w = identity_perm(n);
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// Right weak order on S_n: u is covered by u s_i when that lengthens u.
// Bottom is the identity, top the decreasing permutation.
inline FiniteLattice weak_order_lattice(int n) {
  if (n > 7) throw resource_limit_error("weak order lattice supports n <= 7");
  auto perms = all_permutations(n);
  std::map<Perm, int> id;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) id[perms[i]] = i;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) {
    const Perm& w = perms[i];
    for (int pos = 1; pos < n; ++pos) {
      if (w[pos - 1] >= w[pos]) continue;  // s_pos lengthens w
      Perm longer = w;
      std::swap(longer[pos - 1], longer[pos]);
      covers.push_back({i, id[longer]});
    }
  }
  return FiniteLattice::from_covers(static_cast<int>(perms.size()), covers);
}

// Weak order restricted to 312-avoiding permutations; returns the lattice and
// the permutation carried by each element id.
struct RestrictedWeakOrder {
  FiniteLattice lattice;
  std::vector<Perm> perms;
};

inline RestrictedWeakOrder av312_weak_order(int n) {
  auto full = weak_order_lattice(n);
  auto perms = all_permutations(n);
  std::vector<int> keep;
  std::vector<Perm> kept;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i)
    if (is_312_avoiding(perms[i])) {
      keep.push_back(i);
      kept.push_back(perms[i]);
    }
  auto sub = induced_subposet(full.poset(), keep);
  return {FiniteLattice::from_poset(std::move(sub)), std::move(kept)};
}

// Coupled chain draws: descent bottoms index a family of bernoulli variables
// X_j^(beta), consumed in order of a per-beta counter that advances for every
// step where beta is a descent bottom, whether or not the draw was used to
// include the move.  Distinct descents always have distinct bottoms, so one
// step reads each variable at most once and the marginal law is the Ungarian
// chain on the weak order.
struct WeakTrajectory {
  std::uint64_t steps = 0;
  bool absorbed = false;
  std::vector<std::uint64_t> ones_per_beta;          // 1-draws consumed, by value
  std::vector<std::pair<std::uint64_t, Perm>> snapshots;
};

namespace detail {

template <typename OnStep>
std::uint64_t run_weak_chain(Perm& w, double p, std::uint64_t base_seed,
                             std::uint64_t step_cap, std::vector<std::uint64_t>& ctr,
                             std::vector<std::uint64_t>& ones, OnStep&& on_step) {
  std::uint64_t steps = 0;
  while (!std::is_sorted(w.begin(), w.end()) && steps < step_cap) {
    std::vector<int> t;
    for (int i : descents(w)) {
      int beta = w[i];
      if (rng::counter_bernoulli(base_seed, static_cast<std::uint64_t>(beta), ctr[beta], p)) {
        t.push_back(i);
        ++ones[beta];
      }
    }
    for (int beta : descent_bottoms(w)) ++ctr[beta];
    w = ungar_move(w, t);
    ++steps;
    on_step(steps, w);
  }
  return steps;
}

}  // namespace detail

inline WeakTrajectory simulate_weak_trajectory(int n, double p, std::uint64_t seed,
                                               std::uint64_t step_cap = limits::kStepCap,
                                               int snapshot_count = 0) {
  check_probability(p);
  WeakTrajectory out;
  Perm w = decreasing_perm(n);
  out.ones_per_beta.assign(n + 1, 0);
  std::vector<std::uint64_t> ctr(n + 1, 0);

  // Snapshot times need the total length, so run once to count and replay;
  // counter-indexed draws make the second pass identical.
  if (snapshot_count > 0) {
    Perm probe = w;
    std::vector<std::uint64_t> c2(n + 1, 0), o2(n + 1, 0);
    std::uint64_t total = detail::run_weak_chain(probe, p, seed, step_cap, c2, o2,
                                                 [](std::uint64_t, const Perm&) {});
    std::vector<std::uint64_t> times;
    for (int k = 1; k <= snapshot_count; ++k)
      times.push_back(total * static_cast<std::uint64_t>(k) / snapshot_count);
    out.snapshots.push_back({0, w});
    out.steps = detail::run_weak_chain(
        w, p, seed, step_cap, ctr, out.ones_per_beta,
        [&](std::uint64_t s, const Perm& cur) {
          if (std::binary_search(times.begin(), times.end(), s) &&
              out.snapshots.back().first != s)
            out.snapshots.push_back({s, cur});
        });
  } else {
    out.snapshots.push_back({0, w});
    out.steps = detail::run_weak_chain(w, p, seed, step_cap, ctr, out.ones_per_beta,
                                       [](std::uint64_t, const Perm&) {});
  }
  out.absorbed = std::is_sorted(w.begin(), w.end());
  if (out.snapshots.back().first != out.steps) out.snapshots.push_back({out.steps, w});
  // The draws consumed per value never exceed the slots the coupling
  // reserves for it.
  for (int beta = 1; beta <= n; ++beta)
    if (out.ones_per_beta[beta] > static_cast<std::uint64_t>(n - beta))
      throw verification_error("coupled chain consumed too many draws for value " +
                               std::to_string(beta));
  return out;
}

// Single coupled trajectory with states recorded at the requested times;
// times past absorption report the absorbed state.
inline WeakTrajectory weak_trajectory_at_times(int n, double p, std::uint64_t seed,
                                               std::vector<std::uint64_t> times,
                                               std::uint64_t step_cap = limits::kStepCap) {
  check_probability(p);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  WeakTrajectory out;
  Perm w = decreasing_perm(n);
  out.ones_per_beta.assign(n + 1, 0);
  std::vector<std::uint64_t> ctr(n + 1, 0);
  std::vector<std::pair<std::uint64_t, Perm>> hits;
  out.steps = detail::run_weak_chain(w, p, seed, step_cap, ctr, out.ones_per_beta,
                                     [&](std::uint64_t s, const Perm& cur) {
                                       if (std::binary_search(times.begin(), times.end(), s))
                                         hits.push_back({s, cur});
                                     });
  out.absorbed = std::is_sorted(w.begin(), w.end());
  std::size_t at = 0;
  for (std::uint64_t t : times) {
    if (t == 0)
      out.snapshots.push_back({0, decreasing_perm(n)});
    else if (at < hits.size() && hits[at].first == t)
      out.snapshots.push_back(hits[at++]);
    else
      out.snapshots.push_back({t, w});
  }
  return out;
}

inline SimulationResult simulate_weak_chain(int n, double p, const SimulationOptions& opt) {
  check_probability(p);
  if (n < 1) throw invalid_input_error("permutation size must be positive");
  return run_trials(
      [&](rng::RngStream& stream) -> double {
        // The per-trial stream seeds the trial's counter family.
        std::uint64_t base_seed = stream.next_u64();
        Perm w = decreasing_perm(n);
        std::vector<std::uint64_t> ctr(n + 1, 0), ones(n + 1, 0);
        std::uint64_t steps = detail::run_weak_chain(
            w, p, base_seed, opt.step_cap, ctr, ones, [](std::uint64_t, const Perm&) {});
        for (int beta = 1; beta <= n; ++beta)
          if (ones[beta] > static_cast<std::uint64_t>(n - beta))
            throw verification_error("coupled chain consumed too many draws for value " +
                                     std::to_string(beta));
        if (!std::is_sorted(w.begin(), w.end()))
          return std::numeric_limits<double>::quiet_NaN();
        return static_cast<double>(steps);
      },
      opt);
}

// Upper bound (8/p) n ln n + 9n/p on the expected absorption time, valid for
// n >= 2; the lower bound is n - 1.
inline double weak_order_upper_bound(int n, double p) {
  return (8.0 / p) * n * std::log(n) + 9.0 * n / p;
}

inline int restricted_min_moves(int n) {
  auto l = weak_order_lattice(n);
  return min_ungar_moves(l, l.top(), l.bottom(), /*first_move_proper=*/true);
}

}  // namespace ungar
