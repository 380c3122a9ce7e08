#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ungar/common.hpp"

namespace ungar {

// Finite poset on elements 0..n-1.  Cover relations are the transitive
// reduction of the order; the full relation is materialized as bit rows when
// the element count permits, giving O(1) leq queries.
class FinitePoset {
 public:
  FinitePoset() = default;

  // Builds a poset from relation edges (lo, hi) meaning lo < hi.  When the
  // closure is materialized (n <= closure_cap) the edges may be any acyclic
  // relation; they are reduced to covers.  Above the cap the edges are
  // required to already be cover relations (trusted, documented).
  static FinitePoset from_covers(int n, std::vector<std::pair<int, int>> edges,
                                 int closure_cap = limits::kClosureCap) {
    FinitePoset p;
    p.n_ = n;
    if (n < 0) throw invalid_input_error("poset size must be nonnegative");
    for (auto [a, b] : edges) {
      if (a < 0 || a >= n || b < 0 || b >= n || a == b)
        throw invalid_input_error("cover edge out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    p.covers_ = std::move(edges);
    p.build_adjacency();
    p.compute_topo();
    if (n <= closure_cap) {
      p.build_closure();
      p.reduce_to_covers();
    }
    return p;
  }

  int size() const { return n_; }
  bool has_closure() const { return !below_.empty(); }

  bool leq(int a, int b) const {
    if (!has_closure())
      throw resource_limit_error("order closure not materialized for this poset size");
    return below_.test(b, a);
  }
  bool less(int a, int b) const { return a != b && leq(a, b); }

  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& up_covers(int x) const { return up_[x]; }
  const std::vector<int>& down_covers(int x) const { return down_[x]; }
  const std::vector<int>& topo_order() const { return topo_; }
  int topo_rank(int x) const { return topo_rank_[x]; }

  // Row of elements <= x, as bits (includes x).
  const std::uint64_t* below_row(int x) const { return below_.row(x); }
  int row_words() const { return below_.words_per_row(); }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int x = 0; x < n_; ++x)
      if (down_[x].empty()) out.push_back(x);
    return out;
  }
  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int x = 0; x < n_; ++x)
      if (up_[x].empty()) out.push_back(x);
    return out;
  }

  // Elements of {z : z <= x} in increasing id order.
  std::vector<int> down_set(int x) const {
    std::vector<int> out;
    for (int z = 0; z < n_; ++z)
      if (leq(z, x)) out.push_back(z);
    return out;
  }
  std::vector<int> up_set(int x) const {
    std::vector<int> out;
    for (int z = 0; z < n_; ++z)
      if (leq(x, z)) out.push_back(z);
    return out;
  }

 private:
  void build_adjacency() {
    up_.assign(n_, {});
    down_.assign(n_, {});
    for (auto [a, b] : covers_) {
      up_[a].push_back(b);
      down_[b].push_back(a);
    }
    for (auto& v : up_) std::sort(v.begin(), v.end());
    for (auto& v : down_) std::sort(v.begin(), v.end());
  }

  void compute_topo() {
    topo_.clear();
    topo_.reserve(n_);
    std::vector<int> indeg(n_, 0);
    for (auto [a, b] : covers_) {
      (void)a;
      ++indeg[b];
    }
    // Kahn with smallest-id-first for a deterministic linear extension.
    std::vector<int> ready;
    for (int x = 0; x < n_; ++x)
      if (indeg[x] == 0) ready.push_back(x);
    std::make_heap(ready.begin(), ready.end(), std::greater<>{});
    while (!ready.empty()) {
      std::pop_heap(ready.begin(), ready.end(), std::greater<>{});
      int x = ready.back();
      ready.pop_back();
      topo_.push_back(x);
      for (int y : up_[x]) {
        if (--indeg[y] == 0) {
          ready.push_back(y);
          std::push_heap(ready.begin(), ready.end(), std::greater<>{});
        }
      }
    }
    if (static_cast<int>(topo_.size()) != n_)
      throw invalid_input_error("relation contains a cycle; not a poset");
    topo_rank_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) topo_rank_[topo_[i]] = i;
  }

  void build_closure() {
    below_ = BitMatrix(n_, n_);
    for (int x : topo_) {
      below_.set(x, x);
      for (int y : down_[x]) below_.or_rows(x, y);
    }
  }

  // Drops relation edges that have an intermediate element; recomputes
  // adjacency and topo order if anything changed.
  void reduce_to_covers() {
    std::vector<std::pair<int, int>> reduced;
    reduced.reserve(covers_.size());
    const int w = below_.words_per_row();
    for (auto [a, b] : covers_) {
      bool has_mid = false;
      const std::uint64_t* rb = below_.row(b);
      for (int word = 0; word < w && !has_mid; ++word) {
        std::uint64_t bits = rb[word];
        while (bits) {
          int c = word * 64 + __builtin_ctzll(bits);
          bits &= bits - 1;
          if (c == a || c == b) continue;
          if (below_.test(c, a)) {
            has_mid = true;
            break;
          }
        }
      }
      if (!has_mid) reduced.push_back({a, b});
    }
    if (reduced.size() != covers_.size()) {
      covers_ = std::move(reduced);
      build_adjacency();
      compute_topo();
    }
  }

  int n_ = 0;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> up_, down_;
  std::vector<int> topo_, topo_rank_;
  BitMatrix below_;
};

inline FinitePoset chain_poset(int n) {
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.push_back({i, i + 1});
  return FinitePoset::from_covers(n, covers);
}

inline FinitePoset antichain_poset(int n) { return FinitePoset::from_covers(n, {}); }

// Product of two chains: elements (i,j), 0<=i<k, 0<=j<l, componentwise order.
// Element id is i*l + j.
inline FinitePoset rectangle_poset(int k, int l) {
  if (k <= 0 || l <= 0) throw invalid_input_error("rectangle_poset requires positive sides");
  std::vector<std::pair<int, int>> covers;
  covers.reserve(static_cast<std::size_t>(k) * l * 2);
  auto id = [l](int i, int j) { return i * l + j; };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j) {
      if (i + 1 < k) covers.push_back({id(i, j), id(i + 1, j)});
      if (j + 1 < l) covers.push_back({id(i, j), id(i, j + 1)});
    }
  return FinitePoset::from_covers(k * l, covers);
}

inline FinitePoset dual(const FinitePoset& p) {
  std::vector<std::pair<int, int>> covers;
  covers.reserve(p.covers().size());
  for (auto [a, b] : p.covers()) covers.push_back({b, a});
  return FinitePoset::from_covers(p.size(), covers);
}

// Subposet induced on ids (order inherited); element i of the result is ids[i].
inline FinitePoset induced_subposet(const FinitePoset& p, const std::vector<int>& ids) {
  const int m = static_cast<int>(ids.size());
  BitMatrix below(m, m), above(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (p.leq(ids[i], ids[j])) {
        below.set(j, i);
        above.set(i, j);
      }
  std::vector<std::pair<int, int>> covers;
  const int w = below.words_per_row();
  std::vector<std::uint64_t> tmp(w);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b || !below.test(b, a)) continue;
      // a < b; cover iff the inclusive interval meets in exactly {a, b}.
      const std::uint64_t* ra = above.row(a);
      const std::uint64_t* rb = below.row(b);
      int count = 0;
      for (int word = 0; word < w; ++word) count += __builtin_popcountll(ra[word] & rb[word]);
      if (count == 2) covers.push_back({a, b});
    }
  return FinitePoset::from_covers(m, covers);
}

// All maximal chains, each listed bottom-up.  The empty poset has exactly one
// (empty) maximal chain.
inline std::vector<std::vector<int>> maximal_chains(const FinitePoset& p) {
  if (p.size() == 0) return {{}};
  std::vector<std::vector<int>> out;
  std::vector<int> chain;
  auto dfs = [&](auto&& self, int x) -> void {
    chain.push_back(x);
    if (p.up_covers(x).empty()) {
      out.push_back(chain);
    } else {
      for (int y : p.up_covers(x)) self(self, y);
    }
    chain.pop_back();
  };
  for (int x : p.minimal_elements()) dfs(dfs, x);
  return out;
}

// Order ideals (down-closed subsets) as bit masks, sorted by (size, value).
inline std::vector<std::uint64_t> order_ideals(const FinitePoset& p,
                                               std::size_t cap = limits::kExactCap) {
  const int n = p.size();
  if (n > 63) throw resource_limit_error("order_ideals supports at most 63 elements");
  std::vector<std::uint64_t> strict_down(n, 0);
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      if (z != x && p.leq(z, x)) strict_down[x] |= std::uint64_t{1} << z;
  std::vector<std::uint64_t> level{0};
  std::vector<std::uint64_t> all{0};
  std::unordered_set<std::uint64_t> seen{0};
  while (!level.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t ideal : level) {
      for (int x = 0; x < n; ++x) {
        if (ideal & (std::uint64_t{1} << x)) continue;
        if ((strict_down[x] & ~ideal) != 0) continue;
        std::uint64_t grown = ideal | (std::uint64_t{1} << x);
        if (seen.insert(grown).second) {
          next.push_back(grown);
          if (seen.size() > cap)
            throw resource_limit_error("order ideal count exceeds configured cap");
        }
      }
    }
    std::sort(next.begin(), next.end());
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

namespace detail {

// One round of directed-degree color refinement on a cover DAG.  The label
// map is shared between calls so colors are comparable across posets.
inline std::vector<int> refine_round(const FinitePoset& p, const std::vector<int>& color,
                                     std::map<std::vector<int>, int>& canon) {
  const int n = p.size();
  std::vector<int> next(n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> sig;
    sig.push_back(color[x]);
    std::vector<int> down, up;
    for (int y : p.down_covers(x)) down.push_back(color[y]);
    for (int y : p.up_covers(x)) up.push_back(color[y]);
    std::sort(down.begin(), down.end());
    std::sort(up.begin(), up.end());
    sig.push_back(-1);
    sig.insert(sig.end(), down.begin(), down.end());
    sig.push_back(-2);
    sig.insert(sig.end(), up.begin(), up.end());
    auto it = canon.find(sig);
    if (it == canon.end()) it = canon.emplace(std::move(sig), static_cast<int>(canon.size())).first;
    next[x] = it->second;
  }
  return next;
}

// Joint refinement of two posets: corresponding color classes get identical
// labels, so the partitions are directly comparable.
inline std::pair<std::vector<int>, std::vector<int>> refine_colors_joint(const FinitePoset& p,
                                                                         const FinitePoset& q) {
  std::vector<int> cp(p.size(), 0), cq(q.size(), 0);
  for (int round = 0; round < p.size() + 2; ++round) {
    std::map<std::vector<int>, int> canon;
    auto np = refine_round(p, cp, canon);
    auto nq = refine_round(q, cq, canon);
    if (np == cp && nq == cq) break;
    cp = std::move(np);
    cq = std::move(nq);
  }
  return {cp, cq};
}

}  // namespace detail

// Order isomorphism P -> Q as a vertex map, if one exists.  Backtracking over
// the cover DAGs with color-refinement pruning; throws resource_limit_error
// if the node budget is exhausted.
inline std::optional<std::vector<int>> find_isomorphism(
    const FinitePoset& p, const FinitePoset& q,
    std::uint64_t node_budget = limits::kIsoNodeBudget) {
  const int n = p.size();
  if (n != q.size() || p.covers().size() != q.covers().size()) return std::nullopt;
  if (n == 0) return std::vector<int>{};

  auto [cp, cq] = detail::refine_colors_joint(p, q);
  {
    std::vector<int> hp = cp, hq = cq;
    std::sort(hp.begin(), hp.end());
    std::sort(hq.begin(), hq.end());
    if (hp != hq) return std::nullopt;
  }

  BitMatrix adj_p(n, n), adj_q(n, n);
  for (auto [a, b] : p.covers()) adj_p.set(a, b);
  for (auto [a, b] : q.covers()) adj_q.set(a, b);

  std::vector<std::vector<int>> q_by_color;
  {
    int maxc = 0;
    for (int c : cq) maxc = std::max(maxc, c + 1);
    for (int c : cp) maxc = std::max(maxc, c + 1);
    q_by_color.assign(maxc, {});
    for (int y = 0; y < n; ++y) q_by_color[cq[y]].push_back(y);
  }

  // Most-constrained-first vertex order: rare colors first.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<int> class_size(q_by_color.size(), 0);
  for (int c : cp) ++class_size[c];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (class_size[cp[a]] != class_size[cp[b]]) return class_size[cp[a]] < class_size[cp[b]];
    return a < b;
  });

  std::vector<int> map_pq(n, -1), used(n, 0);
  std::uint64_t nodes = 0;

  auto consistent = [&](int x, int y, int depth) {
    for (int i = 0; i < depth; ++i) {
      int u = order[i];
      int v = map_pq[u];
      if (adj_p.test(u, x) != adj_q.test(v, y)) return false;
      if (adj_p.test(x, u) != adj_q.test(y, v)) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    if (++nodes > node_budget)
      throw resource_limit_error("isomorphism search exceeded node budget");
    int x = order[depth];
    for (int y : q_by_color[cp[x]]) {
      if (used[y]) continue;
      if (!consistent(x, y, depth)) continue;
      map_pq[x] = y;
      used[y] = 1;
      if (self(self, depth + 1)) return true;
      used[y] = 0;
      map_pq[x] = -1;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return map_pq;
}

inline bool are_isomorphic(const FinitePoset& p, const FinitePoset& q,
                           std::uint64_t node_budget = limits::kIsoNodeBudget) {
  return find_isomorphism(p, q, node_budget).has_value();
}

}  // namespace ungar
