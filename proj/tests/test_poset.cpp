#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "ungar/poset.hpp"
#include "ungar/rng.hpp"

using namespace ungar;

namespace {

// Relabels elements by a seeded random permutation; returns the new poset.
FinitePoset shuffled_copy(const FinitePoset& p, std::uint64_t seed) {
  std::vector<int> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng::RngStream rs(seed);
  for (int i = p.size() - 1; i > 0; --i) {
    int j = static_cast<int>(rs.next_u64() % (i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<std::pair<int, int>> covers;
  for (auto [a, b] : p.covers()) covers.push_back({perm[a], perm[b]});
  return FinitePoset::from_covers(p.size(), covers);
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("chain poset basics") {
  auto c = chain_poset(5);
  REQUIRE(c.size() == 5);
  REQUIRE(c.covers().size() == 4);
  REQUIRE(c.leq(0, 4));
  REQUIRE(!c.leq(4, 0));
  REQUIRE(c.leq(2, 2));
  auto chains = maximal_chains(c);
  REQUIRE(chains.size() == 1);
  REQUIRE(chains[0] == std::vector<int>{0, 1, 2, 3, 4});
  REQUIRE(order_ideals(c).size() == 6);
}

TEST_CASE("relation edges are reduced to covers") {
  auto p = FinitePoset::from_covers(3, {{0, 1}, {1, 2}, {0, 2}});
  REQUIRE(p.covers().size() == 2);
  REQUIRE(p.leq(0, 2));
  REQUIRE(p.up_covers(0) == std::vector<int>{1});
}

TEST_CASE("cyclic relation is rejected") {
  REQUIRE_THROWS_AS(FinitePoset::from_covers(3, {{0, 1}, {1, 2}, {2, 0}}),
                    invalid_input_error);
}

TEST_CASE("rectangle poset chain and ideal counts") {
  // Maximal chains of a k x l grid are lattice paths: C(k+l-2, k-1).
  auto r = rectangle_poset(3, 4);
  REQUIRE(maximal_chains(r).size() == static_cast<std::size_t>(binom(5, 2)));
  // Order ideals of the grid are staircases: C(k+l, k).
  REQUIRE(order_ideals(r).size() == static_cast<std::size_t>(binom(7, 3)));
  REQUIRE(order_ideals(rectangle_poset(2, 2)).size() == 6);
  REQUIRE(order_ideals(antichain_poset(4)).size() == 16);
}

TEST_CASE("order ideals come out sorted by size then mask") {
  auto ideals = order_ideals(rectangle_poset(2, 3));
  for (std::size_t i = 1; i < ideals.size(); ++i) {
    int a = __builtin_popcountll(ideals[i - 1]);
    int b = __builtin_popcountll(ideals[i]);
    REQUIRE((a < b || (a == b && ideals[i - 1] < ideals[i])));
  }
}

TEST_CASE("dual reverses the order") {
  auto r = rectangle_poset(2, 3);
  auto d = dual(r);
  REQUIRE(d.leq(5, 0));
  REQUIRE(!d.leq(0, 5));
  REQUIRE(are_isomorphic(r, d));
  REQUIRE(are_isomorphic(chain_poset(6), dual(chain_poset(6))));
}

TEST_CASE("induced subposet reduces inherited relations") {
  auto r = rectangle_poset(2, 3);
  // (0,0) < (0,2) < (1,2) induces a 3-chain even though all three relations
  // are present.
  auto sub = induced_subposet(r, {0, 2, 5});
  REQUIRE(sub.covers() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  auto anti = induced_subposet(r, {1, 3});
  REQUIRE(anti.covers().empty());
  auto all = induced_subposet(r, {0, 1, 2, 3, 4, 5});
  REQUIRE(all.covers().size() == r.covers().size());
}

TEST_CASE("maximal chains of the empty poset") {
  auto chains = maximal_chains(FinitePoset::from_covers(0, {}));
  REQUIRE(chains.size() == 1);
  REQUIRE(chains[0].empty());
}

TEST_CASE("isomorphism finds grid transpose and rejects mismatches") {
  REQUIRE(are_isomorphic(rectangle_poset(3, 4), rectangle_poset(4, 3)));
  REQUIRE(!are_isomorphic(rectangle_poset(3, 4), rectangle_poset(2, 6)));
  REQUIRE(!are_isomorphic(chain_poset(5), antichain_poset(5)));

  auto r = rectangle_poset(4, 4);
  auto s = shuffled_copy(r, 12345);
  auto iso = find_isomorphism(r, s);
  REQUIRE(iso.has_value());
  for (auto [a, b] : r.covers()) {
    bool found = false;
    for (auto [c, d] : s.covers())
      if (c == (*iso)[a] && d == (*iso)[b]) found = true;
    REQUIRE(found);
  }
}

TEST_CASE("oversized poset skips closure but keeps covers") {
  auto big = rectangle_poset(150, 150);
  REQUIRE(big.size() == 22500);
  REQUIRE(!big.has_closure());
  REQUIRE_THROWS_AS(big.leq(0, 1), resource_limit_error);
  REQUIRE(big.covers().size() == 2u * 150 * 149);
  REQUIRE(big.topo_order().size() == 22500);
}
