#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/lattice.hpp"
#include "ungar/markov.hpp"
#include "ungar/poset.hpp"
#include "ungar/rng.hpp"
#include "ungar/weak_order.hpp"

namespace ungar {

// Tamari lattices over an arbitrary reference lattice path nu, realized both
// on paths weakly above nu and on bracket vectors, plus the 312-avoiding
// permutation model of the staircase case and the unique-maximum numerics
// behind its expected-time coefficient.

// Static facts about a reference path: point heights h, the last index f[k]
// at each height, and the rightmost x on each row.
struct PathFrame {
  std::string nu;
  int len = 0;      // number of steps
  int n_north = 0;  // number of N steps
  std::vector<int> h;     // height of point i, size len+1
  std::vector<int> f;     // last point index at height k, size n_north+1
  std::vector<int> f_at;  // f_at[i] = k when i == f[k], else -1
};

inline PathFrame make_frame(const std::string& nu) {
  PathFrame fr;
  fr.nu = nu;
  fr.len = static_cast<int>(nu.size());
  fr.h.assign(fr.len + 1, 0);
  for (int t = 0; t < fr.len; ++t) {
    if (nu[t] != 'N' && nu[t] != 'E')
      throw invalid_input_error("path words use letters N and E only");
    fr.h[t + 1] = fr.h[t] + (nu[t] == 'N' ? 1 : 0);
  }
  fr.n_north = fr.h[fr.len];
  fr.f.assign(fr.n_north + 1, -1);
  fr.f_at.assign(fr.len + 1, -1);
  for (int i = 0; i <= fr.len; ++i) fr.f[fr.h[i]] = i;
  for (int k = 0; k <= fr.n_north; ++k) fr.f_at[fr.f[k]] = k;
  return fr;
}

// A path is weakly above nu when every prefix has at least as many N steps.
inline bool weakly_above(const PathFrame& fr, const std::string& mu) {
  if (static_cast<int>(mu.size()) != fr.len) return false;
  int hm = 0;
  for (int t = 0; t < fr.len; ++t) {
    if (mu[t] != 'N' && mu[t] != 'E')
      throw invalid_input_error("path words use letters N and E only");
    hm += mu[t] == 'N' ? 1 : 0;
    if (hm < fr.h[t + 1]) return false;
  }
  return hm == fr.n_north;
}

// Largest d such that (x+d, y) lies on nu.  The rightmost point of nu on row
// y is its last point at height y, whose x coordinate is f[y] - y.
inline int horizontal_distance(const PathFrame& fr, int x, int y) {
  if (y < 0 || y > fr.n_north || x < 0)
    throw invalid_input_error("point outside the region above the path");
  int d = fr.f[y] - y - x;
  if (d < 0) throw invalid_input_error("point outside the region above the path");
  return d;
}

// Rotation covers: at each EN corner v of mu, the preceding E slides past the
// segment from v to the first later point at the same horizontal distance.
inline std::vector<std::string> upper_covers_path(const PathFrame& fr, const std::string& mu) {
  if (!weakly_above(fr, mu)) throw invalid_input_error("path is not weakly above the reference");
  std::vector<int> px(fr.len + 1), py(fr.len + 1);
  for (int t = 0; t < fr.len; ++t) {
    px[t + 1] = px[t] + (mu[t] == 'E' ? 1 : 0);
    py[t + 1] = py[t] + (mu[t] == 'N' ? 1 : 0);
  }
  std::vector<std::string> out;
  for (int k = 1; k < fr.len; ++k) {
    if (mu[k - 1] != 'E' || mu[k] != 'N') continue;
    int d = horizontal_distance(fr, px[k], py[k]);
    int j = -1;
    for (int t = k + 1; t <= fr.len; ++t) {
      if (horizontal_distance(fr, px[t], py[t]) == d) {
        j = t;
        break;
      }
    }
    if (j < 0) throw verification_error("no matching point for an EN corner rotation");
    out.push_back(mu.substr(0, k - 1) + mu.substr(k, j - k) + 'E' + mu.substr(j));
  }
  return out;
}

// Bracket vectors relative to nu.  Valid vectors satisfy
//   (I)   b[f[k]] = k,
//   (II)  h[i] <= b[i] <= n,
//   (III) no i1 < i2 < i3 with b[i1] = b[i3] < b[i2].
inline void validate_bracket(const PathFrame& fr, const std::vector<int>& b) {
  if (static_cast<int>(b.size()) != fr.len + 1)
    throw invalid_input_error("bracket vector has the wrong length");
  for (int k = 0; k <= fr.n_north; ++k)
    if (b[fr.f[k]] != k) throw invalid_input_error("bracket condition I violated");
  for (int i = 0; i <= fr.len; ++i)
    if (b[i] < fr.h[i] || b[i] > fr.n_north)
      throw invalid_input_error("bracket condition II violated");
  // Scan with poisoning: once a larger value follows x, x may not reappear.
  std::vector<char> seen(fr.n_north + 1, 0), poisoned(fr.n_north + 1, 0);
  for (int v : b) {
    if (poisoned[v]) throw invalid_input_error("bracket condition III violated");
    for (int x = 0; x < v; ++x)
      if (seen[x]) poisoned[x] = 1;
    seen[v] = 1;
  }
}

namespace detail {

// Shared DFS over bracket entries in position order.  `content`, when not
// null, limits how many times each value may be used (the height multiset of
// a target path).  Emits every valid vector in lexicographic order; returns
// early once `wanted` solutions are found.
inline void bracket_dfs(const PathFrame& fr, std::vector<int>* content, std::size_t wanted,
                        std::vector<std::vector<int>>& out, std::size_t cap) {
  const int n = fr.n_north;
  std::vector<int> b(fr.len + 1, -1);
  std::vector<char> seen(n + 1, 0), poisoned(n + 1, 0);

  auto rec = [&](auto&& self, int i) -> bool {  // true = stop searching
    if (i > fr.len) {
      out.push_back(b);
      if (out.size() > cap) throw resource_limit_error("bracket enumeration exceeds cap");
      return out.size() >= wanted;
    }
    int lo = fr.h[i], hi = n;
    if (fr.f_at[i] >= 0) lo = hi = fr.f_at[i];
    for (int v = lo; v <= hi; ++v) {
      if (poisoned[v]) continue;
      if (content && (*content)[v] == 0) continue;
      std::vector<int> newly;
      for (int x = 0; x < v; ++x)
        if (seen[x] && !poisoned[x]) {
          poisoned[x] = 1;
          newly.push_back(x);
        }
      char had = seen[v];
      seen[v] = 1;
      if (content) --(*content)[v];
      b[i] = v;
      bool stop = self(self, i + 1);
      b[i] = -1;
      if (content) ++(*content)[v];
      seen[v] = had;
      for (int x : newly) poisoned[x] = 0;
      if (stop) return true;
    }
    return false;
  };
  rec(rec, 0);
}

}  // namespace detail

inline std::vector<std::vector<int>> all_bracket_vectors(const PathFrame& fr,
                                                         std::size_t cap = limits::kExactCap) {
  std::vector<std::vector<int>> out;
  detail::bracket_dfs(fr, nullptr, static_cast<std::size_t>(-1), out, cap);
  return out;
}

// The bracket vector of a path: the unique valid vector whose value multiset
// is the height multiset of the path.
inline std::vector<int> bracket_vector(const PathFrame& fr, const std::string& mu) {
  if (!weakly_above(fr, mu)) throw invalid_input_error("path is not weakly above the reference");
  std::vector<int> content(fr.n_north + 1, 0);
  int hm = 0;
  ++content[0];
  for (char c : mu) {
    hm += c == 'N' ? 1 : 0;
    ++content[hm];
  }
  std::vector<std::vector<int>> out;
  detail::bracket_dfs(fr, &content, 2, out, limits::kExactCap);
  if (out.empty()) throw verification_error("no bracket vector matches the path");
  if (out.size() > 1) throw verification_error("bracket vector is not unique");
  return out[0];
}

// Inverse direction: the sorted values of a valid bracket vector are the
// heights of its path.
inline std::string path_of_bracket(const PathFrame& fr, const std::vector<int>& b) {
  validate_bracket(fr, b);
  std::vector<int> heights = b;
  std::sort(heights.begin(), heights.end());
  std::string mu;
  for (int i = 1; i <= fr.len; ++i) {
    if (heights[i] == heights[i - 1])
      mu += 'E';
    else if (heights[i] == heights[i - 1] + 1)
      mu += 'N';
    else
      throw verification_error("bracket content does not sort to a path");
  }
  return mu;
}

inline std::vector<int> meet_bracket(const PathFrame& fr, const std::vector<int>& a,
                                     const std::vector<int>& b) {
  if (a.size() != b.size()) throw invalid_input_error("bracket vectors differ in length");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  try {
    validate_bracket(fr, out);
  } catch (const invalid_input_error& e) {
    throw verification_error(std::string("componentwise minimum is not a bracket vector: ") +
                             e.what());
  }
  return out;
}

inline std::vector<int> bracket_descents(const std::vector<int>& b) {
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (b[i] > b[i + 1]) out.push_back(static_cast<int>(i));
  return out;
}

struct NuTamari {
  PathFrame frame;
  std::vector<std::vector<int>> brackets;  // element id -> bracket vector, lex order
  std::vector<std::string> paths;          // element id -> path word
  FiniteLattice lattice;

  int id_of_bracket(const std::vector<int>& b) const {
    auto it = std::lower_bound(brackets.begin(), brackets.end(), b);
    if (it == brackets.end() || *it != b)
      throw invalid_input_error("bracket vector is not an element of this lattice");
    return static_cast<int>(it - brackets.begin());
  }

  int id_of_path(const std::string& mu) const { return id_of_bracket(bracket_vector(frame, mu)); }
};

inline NuTamari nu_tamari_lattice(const std::string& nu, std::size_t cap = limits::kExactCap) {
  NuTamari nt;
  nt.frame = make_frame(nu);
  nt.brackets = all_bracket_vectors(nt.frame, cap);
  const int m = static_cast<int>(nt.brackets.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      bool leq = true;
      for (std::size_t t = 0; t < nt.brackets[i].size() && leq; ++t)
        leq = nt.brackets[i][t] <= nt.brackets[j][t];
      if (leq) edges.push_back({i, j});
    }
  nt.lattice = FiniteLattice::from_covers(m, std::move(edges));
  nt.paths.reserve(m);
  for (int i = 0; i < m; ++i) nt.paths.push_back(path_of_bracket(nt.frame, nt.brackets[i]));
  return nt;
}

// Cells of the region between nu and the top path: one cell for each free
// index (not any f[k]) and each row h[i]+1 .. n.
struct NuCell {
  int i, m;
  bool operator==(const NuCell& o) const { return i == o.i && m == o.m; }
};

inline std::vector<NuCell> cells(const PathFrame& fr) {
  std::vector<NuCell> out;
  for (int i = 0; i <= fr.len; ++i) {
    if (fr.f_at[i] >= 0) continue;
    for (int m = fr.h[i] + 1; m <= fr.n_north; ++m) out.push_back({i, m});
  }
  return out;
}

// Cells ordered componentwise (weakly southwest).
inline FinitePoset cells_poset(const PathFrame& fr) {
  auto cs = cells(fr);
  const int m = static_cast<int>(cs.size());
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (a != b && cs[a].i <= cs[b].i && cs[a].m <= cs[b].m) edges.push_back({a, b});
  return FinitePoset::from_covers(m, std::move(edges));
}

namespace detail {

inline void check_cell(const PathFrame& fr, int i, int m) {
  if (i < 0 || i > fr.len || fr.f_at[i] >= 0 || m < fr.h[i] + 1 || m > fr.n_north)
    throw invalid_input_error("not a cell of the reference path");
}

}  // namespace detail

// Join-irreducible bracket vector of a cell: the height vector with the block
// (f[k-1], i] raised to m, where k is the height at i.
inline std::vector<int> b_im(const PathFrame& fr, int i, int m) {
  detail::check_cell(fr, i, m);
  const int k = fr.h[i];
  const int blk = k == 0 ? -1 : fr.f[k - 1];
  std::vector<int> b(fr.h);
  for (int r = blk + 1; r <= i; ++r) b[r] = m;
  validate_bracket(fr, b);
  return b;
}

// Meet-irreducible partner: k at f[k], m-1 on free indices in [i, f[m-1]),
// and n everywhere else.
inline std::vector<int> c_im(const PathFrame& fr, int i, int m) {
  detail::check_cell(fr, i, m);
  std::vector<int> b(fr.len + 1, fr.n_north);
  for (int k = 0; k <= fr.n_north; ++k) b[fr.f[k]] = k;
  for (int r = i; r < fr.f[m - 1]; ++r)
    if (fr.f_at[r] < 0) b[r] = m - 1;
  validate_bracket(fr, b);
  return b;
}

struct VerificationReport {
  bool ok = true;
  std::string detail;
};

// The join-irreducibles are exactly the b_im, the meet-irreducibles exactly
// the c_im, and kappa pairs them up cell by cell.
inline VerificationReport verify_kappa_formula(const std::string& nu,
                                               std::size_t cap = limits::kExactCap) {
  auto nt = nu_tamari_lattice(nu, cap);
  auto cs = cells(nt.frame);
  std::vector<int> ji_expect, mi_expect;
  for (const auto& cell : cs) {
    ji_expect.push_back(nt.id_of_bracket(b_im(nt.frame, cell.i, cell.m)));
    mi_expect.push_back(nt.id_of_bracket(c_im(nt.frame, cell.i, cell.m)));
  }
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(ji_expect) != nt.lattice.join_irreducibles())
    return {false, "join-irreducibles are not exactly the b_im vectors"};
  if (sorted(mi_expect) != nt.lattice.meet_irreducibles())
    return {false, "meet-irreducibles are not exactly the c_im vectors"};
  for (std::size_t t = 0; t < cs.size(); ++t)
    if (nt.lattice.kappa(ji_expect[t]) != mi_expect[t])
      return {false, "kappa disagrees with the cell formula at some cell"};
  return {true, ""};
}

// The galois poset of Tam(nu) is isomorphic to the cells poset via the
// explicit map b_im -> cell (i, m).
inline VerificationReport verify_cells_isomorphism(const std::string& nu,
                                                   std::size_t cap = limits::kExactCap) {
  auto nt = nu_tamari_lattice(nu, cap);
  auto cs = cells(nt.frame);
  auto jis = nt.lattice.join_irreducibles();
  if (cs.size() != jis.size()) return {false, "cell count differs from join-irreducible count"};
  std::vector<int> pos(cs.size());  // cell index -> galois vertex
  for (std::size_t t = 0; t < cs.size(); ++t) {
    int id = nt.id_of_bracket(b_im(nt.frame, cs[t].i, cs[t].m));
    auto it = std::lower_bound(jis.begin(), jis.end(), id);
    if (it == jis.end() || *it != id) return {false, "a b_im vector is not join-irreducible"};
    pos[t] = static_cast<int>(it - jis.begin());
  }
  auto gp = galois_poset(nt.lattice);
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = 0; b < cs.size(); ++b) {
      bool cell_leq = cs[a].i <= cs[b].i && cs[a].m <= cs[b].m;
      if (gp.leq(pos[a], pos[b]) != cell_leq)
        return {false, "galois order disagrees with the southwest order on cells"};
    }
  return {true, ""};
}

// ---- The 312-avoiding permutation model of the staircase case ----

// A swap of an adjacent descent x(i) > x(i+1) is allowable when some later
// entry lies strictly between them; positions are 1-based.
inline bool is_allowable_swap(const Perm& x, int i) {
  const int n = static_cast<int>(x.size());
  if (i < 1 || i >= n || x[i - 1] < x[i]) return false;
  for (int j = i + 1; j < n; ++j)
    if (x[i] < x[j] && x[j] < x[i - 1]) return true;
  return false;
}

inline std::vector<int> allowable_swaps(const Perm& x) {
  std::vector<int> out;
  for (int i = 1; i < static_cast<int>(x.size()); ++i)
    if (is_allowable_swap(x, i)) out.push_back(i);
  return out;
}

// Downward projection onto 312-avoiders: exhaust allowable swaps.  A swap at
// i only changes allowability at i-1, i, i+1, so a single backtracking sweep
// finds the fixed point.
inline Perm pi_down(const Perm& x) {
  Perm w = x;
  int i = 1;
  while (i < static_cast<int>(w.size())) {
    if (is_allowable_swap(w, i)) {
      std::swap(w[i - 1], w[i]);
      i = std::max(1, i - 1);
    } else {
      ++i;
    }
  }
  return w;
}

// Reference implementation applying allowable swaps in random order; the
// projection is confluent, so results must agree.
inline Perm pi_down_randomized(const Perm& x, rng::RngStream& stream) {
  Perm w = x;
  for (;;) {
    auto opts = allowable_swaps(w);
    if (opts.empty()) return w;
    int i = opts[static_cast<std::size_t>(stream.next_u64() % opts.size())];
    std::swap(w[i - 1], w[i]);
  }
}

inline std::vector<int> left_to_right_maxima(const Perm& x) {
  std::vector<int> out;
  int best = 0;
  for (int v : x)
    if (v > best) {
      best = v;
      out.push_back(v);
    }
  return out;
}

// One random Ungar move in the 312-avoiding model: reverse the runs of a
// Bernoulli subset of descents, then project back down.
inline Perm tamari_random_ungar(const Perm& x, double p, rng::RngStream& stream) {
  std::vector<int> t;
  for (int i : descents(x))
    if (stream.bernoulli(p)) t.push_back(i);
  return pi_down(ungar_move(x, t));
}

namespace detail {

// One trajectory of the projected chain with per-value coin streams indexed
// by time.  Two structural facts are asserted along the way: descent-bottom
// sets shrink as the run progresses, and value beta consumes at most n - beta
// one-draws in total.
template <typename OnStep>
std::uint64_t run_tamari_chain(Perm& w, double p, std::uint64_t base_seed,
                               std::uint64_t step_cap, std::vector<std::uint64_t>& ones,
                               OnStep&& on_step) {
  const int n = static_cast<int>(w.size());
  std::vector<int> prev_db;
  bool first = true;
  std::uint64_t t = 0;
  for (; t < step_cap; ++t) {
    auto des = descents(w);
    if (des.empty()) break;
    std::vector<int> db = descent_bottoms(w);
    std::sort(db.begin(), db.end());
    if (!first && !std::includes(prev_db.begin(), prev_db.end(), db.begin(), db.end()))
      throw verification_error("descent bottoms failed to shrink in tamari chain");
    prev_db = std::move(db);
    first = false;
    std::vector<int> chosen;
    for (int i : des) {
      int beta = w[i];  // descent bottom value at position i+1, 1-based
      if (rng::counter_bernoulli(base_seed, static_cast<std::uint64_t>(beta),
                                 static_cast<std::uint64_t>(t), p)) {
        chosen.push_back(i);
        ++ones[beta];
      }
    }
    w = pi_down(ungar_move(w, chosen));
    on_step(t + 1, w);
  }
  for (int beta = 1; beta <= n; ++beta)
    if (ones[beta] > static_cast<std::uint64_t>(n - beta))
      throw verification_error("per-value draw budget exceeded in tamari chain");
  return t;
}

}  // namespace detail

// Absorption-time simulation of the staircase Tamari chain started at the
// decreasing permutation.
inline SimulationResult simulate_tamari_chain(int n, double p, const SimulationOptions& opt) {
  if (n < 1) throw invalid_input_error("permutation size must be positive");
  check_probability(p);
  const std::uint64_t cap = opt.step_cap;
  return run_trials(
      [n, p, cap](rng::RngStream& stream) -> double {
        const std::uint64_t base_seed = stream.next_u64();
        Perm w = decreasing_perm(n);
        std::vector<std::uint64_t> ones(n + 1, 0);
        std::uint64_t steps =
            detail::run_tamari_chain(w, p, base_seed, cap, ones, [](std::uint64_t, const Perm&) {});
        if (!std::is_sorted(w.begin(), w.end()))
          return std::numeric_limits<double>::quiet_NaN();
        return static_cast<double>(steps);
      },
      opt);
}

// Single trajectory with states recorded at the requested times; times past
// absorption report the absorbed state.
inline WeakTrajectory tamari_trajectory_at_times(int n, double p, std::uint64_t seed,
                                                 std::vector<std::uint64_t> times,
                                                 std::uint64_t step_cap = limits::kStepCap) {
  if (n < 1) throw invalid_input_error("permutation size must be positive");
  check_probability(p);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  WeakTrajectory out;
  Perm w = decreasing_perm(n);
  out.ones_per_beta.assign(n + 1, 0);
  std::vector<std::pair<std::uint64_t, Perm>> hits;
  out.steps = detail::run_tamari_chain(w, p, seed, step_cap, out.ones_per_beta,
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

// ---- Unique-maximum numerics ----

// Upsilon_p(x) = p x sum_k (1-p)^k exp(-(1-p)^k x), log-periodic in x.
inline double upsilon(double p, double x) {
  check_probability(p);
  if (x <= 0) throw invalid_input_error("upsilon needs x > 0");
  if (p == 1.0) return 0.0;
  const double q = 1 - p, eps = 1e-16;
  double sum = 0;
  for (double qk = 1;; qk *= q) {  // k = 0, 1, 2, ...
    double term = p * x * qk * std::exp(-qk * x);
    sum += term;
    if (p * x * qk < eps) break;
  }
  double grew = 1;
  for (int guard = 0; guard < 100000; ++guard) {  // k = -1, -2, ...
    grew /= q;
    double term = p * x * grew * std::exp(-grew * x);
    sum += term;
    if (term < eps && grew * x > 1) break;
  }
  return sum;
}

// Probability that the maximum of n geometrics with mean 1/p is unique.
inline double rho_n(double p, long long n) {
  check_probability(p);
  if (n < 1) throw invalid_input_error("rho needs n >= 1");
  if (p == 1.0) return n == 1 ? 1.0 : 0.0;  // every geometric equals 1
  const double q = 1 - p, eps = 1e-16;
  double sum = 0;
  for (double qm = 1; qm >= eps; qm *= q)  // qm = q^{m-1}
    sum += static_cast<double>(n) * p * qm * std::pow(1 - qm, static_cast<double>(n - 1));
  return sum;
}

// Maximum of upsilon over one logarithmic period (1-p, 1], via a coarse grid
// and golden-section refinement.
inline double rho_bar(double p) {
  check_probability(p);
  if (p == 1.0) return 0.0;
  const double q = 1 - p;
  const int grid = 10000;
  double best_x = 1, best = -1;
  for (int i = 0; i <= grid; ++i) {
    double x = q + (1 - q) * i / grid;
    if (x <= 0) continue;
    double v = upsilon(p, x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  double lo = std::max(q * 0.999, best_x - (1 - q) / grid);
  double hi = std::min(1.0, best_x + (1 - q) / grid);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = upsilon(p, c), fd = upsilon(p, d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = upsilon(p, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = upsilon(p, d);
    }
  }
  return std::max(best, std::max(fc, fd));
}

// Leading coefficient of the staircase Tamari expected-time upper bound.
inline double tamari_coefficient(double p) {
  double r = rho_bar(p);
  return 2.0 / p * (std::sqrt(r * (1 + r)) - r);
}

}  // namespace ungar
