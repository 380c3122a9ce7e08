#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/lattice.hpp"
#include "ungar/rational.hpp"

namespace ungar {

// Finite Coxeter groups of types A, B, D and I2(m), just enough structure to
// sort group elements, build Cambrian lattices and draw heaps.  Generator
// labels follow the usual numbering: type A uses s_1..s_n (adjacent
// transpositions of S_{n+1}), types B and D use s_0..s_{n-1} with the special
// generator first, I2(m) uses 0 and 1.

enum class CoxType { A, B, D, I2 };

struct CoxeterSpec {
  CoxType type;
  int n;  // rank for A/B/D; the parameter m for I2

  int rank() const { return type == CoxType::I2 ? 2 : n; }

  std::vector<int> generator_labels() const {
    std::vector<int> out;
    if (type == CoxType::A)
      for (int i = 1; i <= n; ++i) out.push_back(i);
    else if (type == CoxType::I2)
      out = {0, 1};
    else
      for (int i = 0; i < n; ++i) out.push_back(i);
    return out;
  }

  // Coxeter matrix entry for two distinct generator labels.
  int m_entry(int a, int b) const {
    if (a == b) return 1;
    switch (type) {
      case CoxType::A:
        return std::abs(a - b) == 1 ? 3 : 2;
      case CoxType::B:
        if (std::min(a, b) == 0 && std::max(a, b) == 1) return 4;
        return std::abs(a - b) == 1 ? 3 : 2;
      case CoxType::D: {
        int lo = std::min(a, b), hi = std::max(a, b);
        if (lo == 0) return hi == 2 ? 3 : 2;  // the fork: s_0 attaches to s_2
        return hi - lo == 1 ? 3 : 2;
      }
      case CoxType::I2:
        return n;
    }
    return 2;
  }

  std::vector<std::pair<int, int>> graph_edges() const {
    std::vector<std::pair<int, int>> out;
    auto labels = generator_labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (m_entry(labels[i], labels[j]) >= 3) out.push_back({labels[i], labels[j]});
    return out;
  }

  int coxeter_number() const {
    switch (type) {
      case CoxType::A:
        return n + 1;
      case CoxType::B:
        return 2 * n;
      case CoxType::D:
        return 2 * n - 2;
      case CoxType::I2:
        return n;
    }
    return 0;
  }

  long long longest_length() const {
    switch (type) {
      case CoxType::A:
        return static_cast<long long>(n) * (n + 1) / 2;
      case CoxType::B:
        return static_cast<long long>(n) * n;
      case CoxType::D:
        return static_cast<long long>(n) * (n - 1);
      case CoxType::I2:
        return n;
    }
    return 0;
  }

  void validate() const {
    if (type == CoxType::A && n < 1) throw invalid_input_error("type A needs rank >= 1");
    if (type == CoxType::B && n < 2) throw invalid_input_error("type B needs rank >= 2");
    if (type == CoxType::D && n < 3) throw invalid_input_error("type D needs rank >= 3");
    if (type == CoxType::I2 && n < 2) throw invalid_input_error("type I2 needs m >= 2");
  }
};

// Group element.  A: one-line permutation of 1..n+1.  B: signed one-line,
// |entries| a permutation of 1..n.  D: same with an even number of signs.
// I2: {word length, first letter} of the alternating normal form.
struct CoxElem {
  std::vector<int> data;

  bool operator==(const CoxElem& o) const { return data == o.data; }
  bool operator<(const CoxElem& o) const { return data < o.data; }
};

inline CoxElem cox_identity(const CoxeterSpec& spec) {
  spec.validate();
  switch (spec.type) {
    case CoxType::A: {
      CoxElem e;
      e.data.resize(spec.n + 1);
      std::iota(e.data.begin(), e.data.end(), 1);
      return e;
    }
    case CoxType::B:
    case CoxType::D: {
      CoxElem e;
      e.data.resize(spec.n);
      std::iota(e.data.begin(), e.data.end(), 1);
      return e;
    }
    case CoxType::I2:
      return CoxElem{{0, 0}};
  }
  return {};
}

inline CoxElem cox_longest(const CoxeterSpec& spec) {
  spec.validate();
  CoxElem e = cox_identity(spec);
  switch (spec.type) {
    case CoxType::A:
      std::reverse(e.data.begin(), e.data.end());
      return e;
    case CoxType::B:
      for (int& v : e.data) v = -v;
      return e;
    case CoxType::D:
      for (int& v : e.data) v = -v;
      if (spec.n % 2 == 1) e.data[0] = 1;
      return e;
    case CoxType::I2:
      return CoxElem{{spec.n, 0}};  // both alternating words name the same element
  }
  return {};
}

namespace detail {

inline int i2_other(int g) { return 1 - g; }

// Last letter of the alternating word of length k starting with `first`.
inline int i2_last(int k, int first) { return k % 2 == 1 ? first : i2_other(first); }

}  // namespace detail

inline CoxElem cox_right_mult(const CoxeterSpec& spec, const CoxElem& w, int s) {
  CoxElem out = w;
  switch (spec.type) {
    case CoxType::A:
      if (s < 1 || s > spec.n) throw invalid_input_error("type A generator out of range");
      std::swap(out.data[s - 1], out.data[s]);
      return out;
    case CoxType::B:
      if (s < 0 || s >= spec.n) throw invalid_input_error("type B generator out of range");
      if (s == 0)
        out.data[0] = -out.data[0];
      else
        std::swap(out.data[s - 1], out.data[s]);
      return out;
    case CoxType::D:
      if (s < 0 || s >= spec.n) throw invalid_input_error("type D generator out of range");
      if (s == 0) {
        int a = out.data[0], b = out.data[1];
        out.data[0] = -b;
        out.data[1] = -a;
      } else {
        std::swap(out.data[s - 1], out.data[s]);
      }
      return out;
    case CoxType::I2: {
      if (s != 0 && s != 1) throw invalid_input_error("dihedral generator out of range");
      int k = w.data[0], first = w.data[1];
      if (k == 0) return CoxElem{{1, s}};
      if (k == spec.n) {
        // w0 s is the length m-1 element whose word does not end in s.
        int f = detail::i2_last(spec.n - 1, 0) == s ? 1 : 0;
        return CoxElem{{spec.n - 1, f}};
      }
      if (detail::i2_last(k, first) == s) {
        if (k == 1) return CoxElem{{0, 0}};
        return CoxElem{{k - 1, first}};
      }
      if (k + 1 == spec.n) return CoxElem{{spec.n, 0}};
      return CoxElem{{k + 1, first}};
    }
  }
  return out;
}

inline bool cox_is_right_descent(const CoxeterSpec& spec, const CoxElem& w, int s) {
  switch (spec.type) {
    case CoxType::A:
      return w.data[s - 1] > w.data[s];
    case CoxType::B:
      if (s == 0) return w.data[0] < 0;
      return w.data[s - 1] > w.data[s];
    case CoxType::D:
      if (s == 0) return w.data[0] + w.data[1] < 0;
      return w.data[s - 1] > w.data[s];
    case CoxType::I2: {
      int k = w.data[0], first = w.data[1];
      if (k == 0) return false;
      if (k == spec.n) return true;
      return detail::i2_last(k, first) == s;
    }
  }
  return false;
}

inline long long cox_length(const CoxeterSpec& spec, const CoxElem& w) {
  switch (spec.type) {
    case CoxType::A:
    case CoxType::B:
    case CoxType::D: {
      long long inv = 0;
      for (std::size_t i = 0; i < w.data.size(); ++i)
        for (std::size_t j = i + 1; j < w.data.size(); ++j)
          if (w.data[i] > w.data[j]) ++inv;
      if (spec.type == CoxType::A) return inv;
      long long neg = 0;
      for (int v : w.data)
        if (v < 0) neg += spec.type == CoxType::B ? -v : -v - 1;
      return inv + neg;
    }
    case CoxType::I2:
      return w.data[0];
  }
  return 0;
}

inline CoxElem cox_inverse(const CoxeterSpec& spec, const CoxElem& w) {
  switch (spec.type) {
    case CoxType::A:
    case CoxType::B:
    case CoxType::D: {
      CoxElem out = w;
      for (std::size_t i = 0; i < w.data.size(); ++i) {
        int v = w.data[i];
        out.data[std::abs(v) - 1] = v > 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1);
      }
      return out;
    }
    case CoxType::I2: {
      int k = w.data[0], first = w.data[1];
      if (k == 0 || k == spec.n) return w;
      // The inverse reverses the word, so it starts with the old last letter.
      return CoxElem{{k, detail::i2_last(k, first)}};
    }
  }
  return w;
}

// Coxeter words: sequences of generator labels.
using CoxWord = std::vector<int>;

inline void validate_coxeter_word(const CoxeterSpec& spec, const CoxWord& c) {
  auto labels = spec.generator_labels();
  CoxWord sorted = c;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != labels)
    throw invalid_input_error("coxeter word must use every generator exactly once");
}

// Orientation of the Coxeter graph as a set of directed edges (a, b) meaning
// a precedes b in the Coxeter element.
inline std::vector<std::pair<int, int>> word_to_orientation(const CoxeterSpec& spec,
                                                            const CoxWord& c) {
  validate_coxeter_word(spec, c);
  std::map<int, int> pos;
  for (std::size_t i = 0; i < c.size(); ++i) pos[c[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : spec.graph_edges())
    out.push_back(pos[a] < pos[b] ? std::make_pair(a, b) : std::make_pair(b, a));
  std::sort(out.begin(), out.end());
  return out;
}

inline CoxWord orientation_to_word(const CoxeterSpec& spec,
                                   const std::vector<std::pair<int, int>>& orientation) {
  spec.validate();
  auto edges = spec.graph_edges();
  std::set<std::pair<int, int>> undirected(edges.begin(), edges.end());
  std::map<int, std::vector<int>> succ;
  std::map<int, int> indeg;
  for (int l : spec.generator_labels()) indeg[l] = 0;
  if (orientation.size() != edges.size())
    throw invalid_input_error("orientation must orient every Coxeter graph edge once");
  for (auto [a, b] : orientation) {
    auto key = std::minmax(a, b);
    if (!undirected.count({key.first, key.second}))
      throw invalid_input_error("orientation mentions a non-edge of the Coxeter graph");
    succ[a].push_back(b);
    ++indeg[b];
  }
  // Smallest-label-first topological order gives a canonical word.
  std::set<int> ready;
  for (auto& [l, d] : indeg)
    if (d == 0) ready.insert(l);
  CoxWord word;
  while (!ready.empty()) {
    int l = *ready.begin();
    ready.erase(ready.begin());
    word.push_back(l);
    for (int b : succ[l])
      if (--indeg[b] == 0) ready.insert(b);
  }
  if (word.size() != spec.generator_labels().size())
    throw invalid_input_error("orientation is cyclic");
  return word;
}

// Statistics of an orientation: r counts graph edges {s_i, s_{i+1}} oriented
// from the smaller label up; u is the longest directed path, in edges.
inline int orientation_r(const CoxeterSpec& spec, const CoxWord& c) {
  int r = 0;
  for (auto [a, b] : word_to_orientation(spec, c)) {
    int lo = std::min(a, b), hi = std::max(a, b);
    if (spec.type == CoxType::D && lo == 0) continue;  // the fork edge never counts
    if (hi - lo == 1 && a == lo) ++r;
  }
  return r;
}

inline int orientation_u(const CoxeterSpec& spec, const CoxWord& c) {
  auto orient = word_to_orientation(spec, c);
  std::map<int, std::vector<int>> succ;
  for (auto [a, b] : orient) succ[a].push_back(b);
  std::map<int, int> depth;
  auto dfs = [&](auto&& self, int v) -> int {
    auto it = depth.find(v);
    if (it != depth.end()) return it->second;
    int best = 0;
    for (int nxt : succ[v]) best = std::max(best, 1 + self(self, nxt));
    depth[v] = best;
    return best;
  };
  int best = 0;
  for (int l : spec.generator_labels()) best = std::max(best, dfs(dfs, l));
  return best;
}

// c-sorting word of w: greedily take letters of c repeated forever whenever
// the letter is a left descent of what remains.
inline CoxWord sorting_word(const CoxeterSpec& spec, const CoxWord& c, const CoxElem& w) {
  validate_coxeter_word(spec, c);
  CoxElem z = cox_inverse(spec, w);  // left descents of u are right descents of z
  CoxElem id = cox_identity(spec);
  CoxWord out;
  long long guard = 0;
  while (!(z == id)) {
    bool took = false;
    for (int s : c) {
      if (z == id) break;
      if (cox_is_right_descent(spec, z, s)) {
        out.push_back(s);
        z = cox_right_mult(spec, z, s);
        took = true;
      }
    }
    if (!took || ++guard > spec.longest_length() + 2)
      throw verification_error("sorting word failed to terminate");
  }
  return out;
}

// Round supports of a c-sorting word; the element is c-sortable when they are
// weakly decreasing under inclusion.
inline std::vector<std::set<int>> sorting_round_supports(const CoxeterSpec& spec,
                                                         const CoxWord& c, const CoxWord& sw) {
  std::vector<std::set<int>> rounds;
  std::size_t i = 0;
  while (i < sw.size()) {
    std::set<int> sup;
    for (int s : c) {
      if (i < sw.size() && sw[i] == s) {
        sup.insert(s);
        ++i;
      }
    }
    if (sup.empty()) throw verification_error("sorting word is not a subword of c repeated");
    rounds.push_back(std::move(sup));
  }
  return rounds;
}

inline bool is_c_sortable(const CoxeterSpec& spec, const CoxWord& c, const CoxElem& w) {
  auto rounds = sorting_round_supports(spec, c, sorting_word(spec, c, w));
  for (std::size_t i = 1; i < rounds.size(); ++i)
    if (!std::includes(rounds[i - 1].begin(), rounds[i - 1].end(), rounds[i].begin(),
                       rounds[i].end()))
      return false;
  return true;
}

// Whole group by breadth-first closure under right multiplication; ids are
// assigned in BFS layers with ties in data order, so they are deterministic.
inline std::vector<CoxElem> enumerate_group(const CoxeterSpec& spec,
                                            std::size_t cap = limits::kExactCap) {
  spec.validate();
  std::map<CoxElem, int> seen;
  std::vector<CoxElem> out{cox_identity(spec)};
  seen[out[0]] = 0;
  std::size_t head = 0;
  while (head < out.size()) {
    CoxElem w = out[head++];
    for (int s : spec.generator_labels()) {
      CoxElem nxt = cox_right_mult(spec, w, s);
      if (seen.emplace(nxt, static_cast<int>(out.size())).second) {
        out.push_back(nxt);
        if (out.size() > cap) throw resource_limit_error("group enumeration exceeds cap");
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const CoxElem& a, const CoxElem& b) {
    long long la = cox_length(spec, a), lb = cox_length(spec, b);
    if (la != lb) return la < lb;
    return a < b;
  });
  return out;
}

// Right weak order on the whole group: u covered by us when that lengthens.
struct GroupOrder {
  CoxeterSpec spec;
  std::vector<CoxElem> elems;
  FiniteLattice lattice;

  int id_of(const CoxElem& w) const {
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(w, 0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == index.end() || !(it->first == w))
      throw invalid_input_error("element not in enumerated group");
    return it->second;
  }

  std::vector<std::pair<CoxElem, int>> index;
};

inline GroupOrder coxeter_weak_order(const CoxeterSpec& spec) {
  auto elems = enumerate_group(spec);
  std::map<CoxElem, int> id;
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) id[elems[i]] = i;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
    long long len = cox_length(spec, elems[i]);
    for (int s : spec.generator_labels()) {
      if (cox_is_right_descent(spec, elems[i], s)) continue;
      CoxElem up = cox_right_mult(spec, elems[i], s);
      if (cox_length(spec, up) != len + 1)
        throw verification_error("length bookkeeping broke in weak order build");
      covers.push_back({i, id[up]});
    }
  }
  GroupOrder g{spec, elems, FiniteLattice::from_covers(static_cast<int>(elems.size()), covers),
               {}};
  g.index.reserve(elems.size());
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) g.index.push_back({elems[i], i});
  std::sort(g.index.begin(), g.index.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return g;
}

// Cambrian lattice for the Coxeter element c: the weak order restricted to
// c-sortable elements.
struct CambrianLattice {
  CoxeterSpec spec;
  CoxWord c;
  std::vector<CoxElem> elems;  // sortables, by restricted element id
  FiniteLattice lattice;
};

inline CambrianLattice cambrian_lattice(const CoxeterSpec& spec, const CoxWord& c) {
  auto group = coxeter_weak_order(spec);
  std::vector<int> keep;
  std::vector<CoxElem> kept;
  for (int i = 0; i < static_cast<int>(group.elems.size()); ++i)
    if (is_c_sortable(spec, c, group.elems[i])) {
      keep.push_back(i);
      kept.push_back(group.elems[i]);
    }
  auto sub = induced_subposet(group.lattice.poset(), keep);
  return {spec, c, std::move(kept), FiniteLattice::from_poset(std::move(sub))};
}

// Exact expected absorption time of the dihedral Cambrian lattice, from the
// two-chain shape: (1 + m(1-p)) / (2p - p^2).
template <typename Real>
Real dihedral_expected_steps(int m, const Real& p) {
  if (m < 2) throw invalid_input_error("dihedral parameter must be at least 2");
  check_probability(p);
  return (Real(1) + Real(m) * (Real(1) - p)) / (Real(2) * p - p * p);
}

// Heap of a word: positions ordered by precedence among non-commuting letters.
inline FinitePoset heap_poset(const CoxeterSpec& spec, const CoxWord& word) {
  const int k = static_cast<int>(word.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (spec.m_entry(word[i], word[j]) != 2) edges.push_back({i, j});
  return FinitePoset::from_covers(k, edges);
}

// Lexicographically least word in the commutation class: repeatedly emit the
// smallest-label letter among current heap minima.
inline CoxWord canonical_commutation_form(const CoxeterSpec& spec, const CoxWord& word) {
  const int k = static_cast<int>(word.size());
  auto heap = heap_poset(spec, word);
  std::vector<int> indeg(k, 0);
  for (auto [a, b] : heap.covers()) {
    (void)a;
    ++indeg[b];
  }
  auto cmp = [&](int a, int b) {
    if (word[a] != word[b]) return word[a] > word[b];
    return a > b;
  };
  std::vector<int> ready;
  for (int i = 0; i < k; ++i)
    if (indeg[i] == 0) ready.push_back(i);
  std::make_heap(ready.begin(), ready.end(), cmp);
  CoxWord out;
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), cmp);
    int i = ready.back();
    ready.pop_back();
    out.push_back(word[i]);
    for (int j : heap.up_covers(i)) {
      if (--indeg[j] == 0) {
        ready.push_back(j);
        std::push_heap(ready.begin(), ready.end(), cmp);
      }
    }
  }
  return out;
}

inline bool commutation_equivalent(const CoxeterSpec& spec, const CoxWord& a, const CoxWord& b) {
  return canonical_commutation_form(spec, a) == canonical_commutation_form(spec, b);
}

// The diagram automorphism w -> w0 w w0 on generator labels.
inline int psi_label(const CoxeterSpec& spec, int s) {
  switch (spec.type) {
    case CoxType::A:
      return spec.n + 1 - s;
    case CoxType::B:
      return s;
    case CoxType::D:
      if (spec.n % 2 == 1 && s <= 1) return 1 - s;
      return s;
    case CoxType::I2:
      return spec.n % 2 == 1 ? 1 - s : s;
  }
  return s;
}

inline CoxWord psi_word(const CoxeterSpec& spec, const CoxWord& w) {
  CoxWord out;
  out.reserve(w.size());
  for (int s : w) out.push_back(psi_label(spec, s));
  return out;
}

inline CoxWord power_word(const CoxWord& c, int k) {
  CoxWord out;
  out.reserve(c.size() * k);
  for (int i = 0; i < k; ++i) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace ungar
