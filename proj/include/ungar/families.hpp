#pragma once

// Named lattice collections for the cross-checking suites: staircase Tamari
// lattices, Cambrian lattices over every orientation of the small Coxeter
// graphs, weak orders, and order-ideal lattices of random posets.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ungar/common.hpp"
#include "ungar/coxeter.hpp"
#include "ungar/lattice.hpp"
#include "ungar/nu_tamari.hpp"
#include "ungar/poset.hpp"
#include "ungar/rng.hpp"
#include "ungar/weak_order.hpp"

namespace ungar {

struct ZooEntry {
  std::string name;
  FiniteLattice lattice;
};

// Random poset on n elements: a random DAG on a fixed topological order,
// closed transitively by the poset constructor.
inline FinitePoset random_poset(int n, std::uint64_t seed) {
  if (n < 1) throw invalid_input_error("poset size must be positive");
  rng::RngStream stream(rng::mix64(seed ^ 0xB0C4D5E6F7081920ULL));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (stream.bernoulli(0.4)) edges.push_back({i, j});
  return FinitePoset::from_covers(n, edges);
}

// All Coxeter elements of a spec, one word per acyclic orientation.  The
// Coxeter graphs handled here are trees, so every orientation qualifies.
inline std::vector<CoxWord> all_coxeter_words(const CoxeterSpec& spec) {
  auto edges = spec.graph_edges();
  std::vector<CoxWord> out;
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    std::vector<std::pair<int, int>> orient;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = edges[e];
      orient.push_back((mask >> e) & 1 ? std::make_pair(b, a) : std::make_pair(a, b));
    }
    out.push_back(orientation_to_word(spec, orient));
  }
  return out;
}

inline CoxWord random_coxeter_word(const CoxeterSpec& spec, rng::RngStream& stream) {
  auto words = all_coxeter_words(spec);
  return words[static_cast<std::size_t>(stream.next_u64() % words.size())];
}

inline std::string staircase_path(int n) {
  std::string nu;
  for (int i = 0; i < n; ++i) nu += "NE";
  return nu;
}

namespace detail {

inline std::string word_tag(const CoxWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

inline void add_cambrian_family(std::vector<ZooEntry>* zoo, const CoxeterSpec& spec,
                                const std::string& stem) {
  for (const auto& c : all_coxeter_words(spec))
    zoo->push_back({stem + "-c" + word_tag(c), cambrian_lattice(spec, c).lattice});
}

}  // namespace detail

// At least 60 lattices spanning every family the library models.  Entry
// names are stable; tests key diagnostics on them.
inline std::vector<ZooEntry> lattice_zoo() {
  std::vector<ZooEntry> zoo;
  for (int n = 2; n <= 5; ++n)
    zoo.push_back({"tamari-" + std::to_string(n),
                   nu_tamari_lattice(staircase_path(n)).lattice});
  for (int n = 1; n <= 4; ++n)
    detail::add_cambrian_family(&zoo, {CoxType::A, n}, "cambrian-A" + std::to_string(n));
  for (int n = 2; n <= 3; ++n)
    detail::add_cambrian_family(&zoo, {CoxType::B, n}, "cambrian-B" + std::to_string(n));
  detail::add_cambrian_family(&zoo, {CoxType::D, 4}, "cambrian-D4");
  for (int m = 2; m <= 7; ++m) {
    CoxeterSpec spec{CoxType::I2, m};
    zoo.push_back({"cambrian-I2(" + std::to_string(m) + ")",
                   cambrian_lattice(spec, {0, 1}).lattice});
  }
  for (int n = 2; n <= 4; ++n)
    zoo.push_back({"weak-S" + std::to_string(n), weak_order_lattice(n)});
  for (int seed = 1; seed <= 20; ++seed) {
    int n = 4 + seed % 4;
    zoo.push_back({"j-of-poset-" + std::to_string(seed),
                   order_ideal_lattice(random_poset(n, seed))});
  }
  return zoo;
}

}  // namespace ungar
