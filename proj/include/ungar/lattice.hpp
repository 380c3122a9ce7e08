#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/poset.hpp"

namespace ungar {

// Finite lattice backed by a FinitePoset with materialized closure.  Meet and
// join are answered from bit rows stored in topological coordinates: the meet
// of a and b is the topologically last common element below both, so scanning
// the AND of two rows from high ranks down finds it with early exit.
class FiniteLattice {
 public:
  // Validates that the poset is a lattice: unique minimal and maximal
  // elements and a meet for every pair.
  static FiniteLattice from_poset(FinitePoset poset) {
    if (poset.size() == 0) throw invalid_input_error("lattice must be nonempty");
    if (!poset.has_closure())
      throw resource_limit_error("lattice requires a materialized order closure");
    FiniteLattice l;
    l.poset_ = std::move(poset);
    const int n = l.poset_.size();

    auto mins = l.poset_.minimal_elements();
    auto maxs = l.poset_.maximal_elements();
    if (mins.size() != 1 || maxs.size() != 1)
      throw invalid_input_error("not a lattice: extreme element is not unique");
    l.bottom_ = mins[0];
    l.top_ = maxs[0];

    // Bit rows in topo coordinates: below_[x] bit r set iff topo[r] <= x.
    l.words_ = (n + 63) / 64;
    l.below_ = BitMatrix(n, n);
    l.above_ = BitMatrix(n, n);
    for (int x = 0; x < n; ++x)
      for (int z = 0; z < n; ++z) {
        if (l.poset_.leq(z, x)) l.below_.set(x, l.poset_.topo_rank(z));
        if (l.poset_.leq(x, z)) l.above_.set(x, l.poset_.topo_rank(z));
      }

    // Pairwise meets must exist; with a unique top this makes it a lattice.
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        int c = l.meet(a, b);
        const std::uint64_t* ra = l.below_.row(a);
        const std::uint64_t* rb = l.below_.row(b);
        const std::uint64_t* rc = l.below_.row(c);
        for (int w = 0; w < l.words_; ++w)
          if ((ra[w] & rb[w]) != rc[w])
            throw invalid_input_error("not a lattice: pair has no meet");
      }

    l.compute_ranks();
    return l;
  }

  static FiniteLattice from_covers(int n, std::vector<std::pair<int, int>> edges) {
    return from_poset(FinitePoset::from_covers(n, std::move(edges)));
  }

  const FinitePoset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  int top() const { return top_; }
  int bottom() const { return bottom_; }
  bool leq(int a, int b) const { return poset_.leq(a, b); }
  const std::vector<int>& up_covers(int x) const { return poset_.up_covers(x); }
  const std::vector<int>& down_covers(int x) const { return poset_.down_covers(x); }

  int meet(int a, int b) const {
    if (a == b) return a;
    const std::uint64_t* ra = below_.row(a);
    const std::uint64_t* rb = below_.row(b);
    int start = std::min(poset_.topo_rank(a), poset_.topo_rank(b)) / 64;
    for (int w = start; w >= 0; --w) {
      std::uint64_t bits = ra[w] & rb[w];
      if (bits) return poset_.topo_order()[w * 64 + 63 - __builtin_clzll(bits)];
    }
    throw verification_error("meet scan found no common lower bound");
  }

  int join(int a, int b) const {
    if (a == b) return a;
    const std::uint64_t* ra = above_.row(a);
    const std::uint64_t* rb = above_.row(b);
    int start = std::max(poset_.topo_rank(a), poset_.topo_rank(b)) / 64;
    for (int w = start; w < words_; ++w) {
      std::uint64_t bits = ra[w] & rb[w];
      if (bits) return poset_.topo_order()[w * 64 + __builtin_ctzll(bits)];
    }
    throw verification_error("join scan found no common upper bound");
  }

  template <typename It>
  int meet_all(It first, It last) const {
    int acc = top_;
    for (; first != last; ++first) {
      acc = meet(acc, *first);
      if (acc == bottom_) break;
    }
    return acc;
  }

  // Longest-path rank from the bottom / to the top; their sum is at most
  // length() with equality exactly on spine elements.
  int rank_down(int x) const { return rank_down_[x]; }
  int rank_up(int x) const { return rank_up_[x]; }
  int length() const { return rank_down_[top_]; }

  std::vector<int> join_irreducibles() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (poset_.down_covers(x).size() == 1) out.push_back(x);
    return out;
  }
  std::vector<int> meet_irreducibles() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (poset_.up_covers(x).size() == 1) out.push_back(x);
    return out;
  }

  // The unique meet-irreducible m with j /\ m = j_* and j \/ m = m^*.
  // Throws verification_error when no unique witness exists.
  int kappa(int j) const {
    if (poset_.down_covers(j).size() != 1)
      throw invalid_input_error("kappa requires a join-irreducible argument");
    int j_star = poset_.down_covers(j)[0];
    std::vector<int> hits;
    for (int m : meet_irreducibles()) {
      int m_up = poset_.up_covers(m)[0];
      if (meet(j, m) == j_star && join(j, m) == m_up) hits.push_back(m);
    }
    if (hits.size() != 1)
      throw verification_error("kappa witness not unique: found " +
                               std::to_string(hits.size()) + " candidates");
    return hits[0];
  }

  bool is_graded() const {
    for (auto [a, b] : poset_.covers())
      if (rank_down_[b] != rank_down_[a] + 1) return false;
    return true;
  }

  // Distributivity via join-irreducible supports: the join-set map is always
  // meet-preserving, so the lattice is distributive iff it also turns joins
  // into unions.
  bool is_distributive() const {
    auto jis = join_irreducibles();
    const int nj = static_cast<int>(jis.size());
    const int n = size();
    BitMatrix jset(n, std::max(nj, 1));
    for (int x = 0; x < n; ++x)
      for (int t = 0; t < nj; ++t)
        if (leq(jis[t], x)) jset.set(x, t);
    const int jw = jset.words_per_row();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        int c = join(a, b);
        const std::uint64_t* ra = jset.row(a);
        const std::uint64_t* rb = jset.row(b);
        const std::uint64_t* rc = jset.row(c);
        for (int w = 0; w < jw; ++w)
          if ((ra[w] | rb[w]) != rc[w]) return false;
      }
    return true;
  }

  bool is_extremal() const {
    auto l = static_cast<std::size_t>(length());
    return join_irreducibles().size() == l && meet_irreducibles().size() == l;
  }

  // x is left-modular when (y \/ x) /\ z = y \/ (x /\ z) for all y <= z.
  bool is_left_modular(int x) const {
    const int n = size();
    for (int z = 0; z < n; ++z)
      for (int y = 0; y < n; ++y) {
        if (y == z || !leq(y, z)) continue;
        if (meet(join(y, x), z) != join(y, meet(x, z))) return false;
      }
    return true;
  }

  std::vector<int> left_modular_elements() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (is_left_modular(x)) out.push_back(x);
    return out;
  }

  // Trim: extremal with a maximal chain of left-modular elements.  The chain
  // is sought as a bottom-to-top path in the cover digraph restricted to
  // left-modular elements.
  bool is_trim() const {
    if (!is_extremal()) return false;
    auto lm = left_modular_elements();
    std::vector<char> in_lm(size(), 0);
    for (int x : lm) in_lm[x] = 1;
    if (!in_lm[bottom_] || !in_lm[top_]) return false;
    std::vector<char> reach(size(), 0);
    reach[bottom_] = 1;
    for (int x : poset_.topo_order()) {
      if (!reach[x]) continue;
      for (int y : poset_.up_covers(x))
        if (in_lm[y]) reach[y] = 1;
    }
    return reach[top_];
  }

  std::vector<int> spine_elements() const {
    std::vector<int> out;
    const int l = length();
    for (int x = 0; x < size(); ++x)
      if (rank_down_[x] + rank_up_[x] == l) out.push_back(x);
    return out;
  }

  FinitePoset spine_poset() const { return induced_subposet(poset_, spine_elements()); }
  FiniteLattice spine() const { return from_poset(spine_poset()); }

  FiniteLattice interval(int a, int b) const {
    if (!leq(a, b)) throw invalid_input_error("interval endpoints must satisfy a <= b");
    std::vector<int> ids;
    for (int z = 0; z < size(); ++z)
      if (leq(a, z) && leq(z, b)) ids.push_back(z);
    return from_poset(induced_subposet(poset_, ids));
  }

 private:
  void compute_ranks() {
    const int n = size();
    rank_down_.assign(n, 0);
    rank_up_.assign(n, 0);
    for (auto it = poset_.topo_order().begin(); it != poset_.topo_order().end(); ++it)
      for (int y : poset_.down_covers(*it))
        rank_down_[*it] = std::max(rank_down_[*it], rank_down_[y] + 1);
    for (auto it = poset_.topo_order().rbegin(); it != poset_.topo_order().rend(); ++it)
      for (int y : poset_.up_covers(*it))
        rank_up_[*it] = std::max(rank_up_[*it], rank_up_[y] + 1);
  }

  FinitePoset poset_;
  BitMatrix below_, above_;
  int words_ = 0;
  int top_ = 0, bottom_ = 0;
  std::vector<int> rank_down_, rank_up_;
};

struct LatticeClassification {
  int size = 0;
  int length = 0;
  int join_irreducible_count = 0;
  int meet_irreducible_count = 0;
  bool graded = false;
  bool distributive = false;
  bool extremal = false;
  bool trim = false;
};

inline LatticeClassification classify(const FiniteLattice& l,
                                      int cap = limits::kClassifyCap) {
  if (l.size() > cap)
    throw resource_limit_error("lattice classification capped at " + std::to_string(cap) +
                               " elements");
  LatticeClassification c;
  c.size = l.size();
  c.length = l.length();
  c.join_irreducible_count = static_cast<int>(l.join_irreducibles().size());
  c.meet_irreducible_count = static_cast<int>(l.meet_irreducibles().size());
  c.graded = l.is_graded();
  c.distributive = l.is_distributive();
  c.extremal = l.is_extremal();
  c.trim = l.is_trim();
  return c;
}

// Directed graph on join-irreducibles: j -> j' iff j != j' and j is not below
// kappa(j').  Vertices are indices into join_irreducibles().
inline std::vector<std::vector<int>> galois_graph(const FiniteLattice& l) {
  auto jis = l.join_irreducibles();
  const int nj = static_cast<int>(jis.size());
  std::vector<int> kap(nj);
  for (int t = 0; t < nj; ++t) kap[t] = l.kappa(jis[t]);
  std::vector<std::vector<int>> adj(nj);
  for (int s = 0; s < nj; ++s)
    for (int t = 0; t < nj; ++t) {
      if (s == t) continue;
      if (!l.leq(jis[s], kap[t])) adj[s].push_back(t);
    }
  return adj;
}

// Poset on join-irreducibles: j below j' iff the Galois graph has a directed
// path j' -> j.  Throws verification_error when the graph is cyclic (it is
// acyclic exactly when the reachability relation is antisymmetric).
inline FinitePoset galois_poset(const FiniteLattice& l) {
  auto adj = galois_graph(l);
  const int nj = static_cast<int>(adj.size());
  std::vector<std::pair<int, int>> edges;
  for (int src = 0; src < nj; ++src) {
    std::vector<char> seen(nj, 0);
    std::vector<int> stack(adj[src]);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == src) throw verification_error("galois graph is cyclic");
      if (seen[v]) continue;
      seen[v] = 1;
      stack.insert(stack.end(), adj[v].begin(), adj[v].end());
    }
    for (int v = 0; v < nj; ++v)
      if (seen[v]) edges.push_back({v, src});
  }
  return FinitePoset::from_covers(nj, edges);
}

// Lattice of order ideals of a poset (inclusion order).  Ideal ids follow the
// sorted order of order_ideals().
inline FiniteLattice order_ideal_lattice(const FinitePoset& p,
                                         std::size_t cap = limits::kExactCap) {
  auto ideals = order_ideals(p, cap);
  const int m = static_cast<int>(ideals.size());
  std::vector<std::pair<std::uint64_t, int>> index(m);
  for (int i = 0; i < m; ++i) index[i] = {ideals[i], i};
  std::sort(index.begin(), index.end());
  auto id_of = [&](std::uint64_t mask) {
    auto it = std::lower_bound(index.begin(), index.end(),
                               std::make_pair(mask, 0));
    return it->second;
  };
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < m; ++i)
    for (int x = 0; x < p.size(); ++x) {
      std::uint64_t bit = std::uint64_t{1} << x;
      if (ideals[i] & bit) continue;
      bool addable = true;
      for (int z : p.down_covers(x))
        if (!(ideals[i] & (std::uint64_t{1} << z))) {
          addable = false;
          break;
        }
      if (addable) covers.push_back({i, id_of(ideals[i] | bit)});
    }
  return FiniteLattice::from_covers(m, covers);
}

inline FiniteLattice dual(const FiniteLattice& l) {
  return FiniteLattice::from_poset(dual(l.poset()));
}

}  // namespace ungar
