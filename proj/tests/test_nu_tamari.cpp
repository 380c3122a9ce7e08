#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ungar/coxeter.hpp"
#include "ungar/lattice.hpp"
#include "ungar/markov.hpp"
#include "ungar/nu_tamari.hpp"
#include "ungar/poset.hpp"
#include "ungar/rational.hpp"
#include "ungar/rng.hpp"
#include "ungar/weak_order.hpp"

using namespace ungar;

namespace {

// Every N/E word of the given length.
std::vector<std::string> all_paths_of_length(int len) {
  std::vector<std::string> out;
  for (int mask = 0; mask < (1 << len); ++mask) {
    std::string s;
    for (int t = 0; t < len; ++t) s += (mask >> t) & 1 ? 'N' : 'E';
    out.push_back(s);
  }
  return out;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("path frames and height bookkeeping") {
  auto fr = make_frame("ENEEENNEENNE");
  CHECK(fr.h == std::vector<int>{0, 0, 1, 1, 1, 1, 2, 3, 3, 3, 4, 5, 5});
  CHECK(fr.f == std::vector<int>{1, 5, 6, 9, 10, 12});
  CHECK(bracket_vector(fr, fr.nu) == fr.h);
  CHECK_THROWS_AS(make_frame("NEX"), invalid_input_error);

  auto staircase = make_frame("NENE");
  CHECK(horizontal_distance(staircase, 0, 1) == 1);
  // A row's rightmost reference point is at distance zero.
  for (int y = 0; y <= staircase.n_north; ++y)
    CHECK(horizontal_distance(staircase, staircase.f[y] - y, y) == 0);
  CHECK_THROWS_AS(horizontal_distance(staircase, 2, 1), invalid_input_error);
  CHECK_THROWS_AS(horizontal_distance(staircase, -1, 0), invalid_input_error);
  CHECK_THROWS_AS(horizontal_distance(staircase, 0, 3), invalid_input_error);

  CHECK(weakly_above(make_frame("EEENENENNE"), "EENENNENEE"));
  CHECK(weakly_above(staircase, "NENE"));
  CHECK(weakly_above(staircase, "NNEE"));
  CHECK_FALSE(weakly_above(staircase, "ENNE"));
  CHECK_FALSE(weakly_above(staircase, "NENEE"));
  CHECK_FALSE(weakly_above(staircase, "NNNE"));
}

TEST_CASE("rotation covers on paths") {
  auto fr = make_frame("EEENENENNE");
  auto covers = upper_covers_path(fr, "EENENNENEE");
  std::sort(covers.begin(), covers.end());
  CHECK(covers ==
        std::vector<std::string>{"EENENNNEEE", "EENNNEENEE", "ENEENNENEE"});
  // The top path has no EN corner, so it covers nothing above it.
  CHECK(upper_covers_path(fr, "NNNNEEEEEE").empty());
  CHECK_THROWS_AS(upper_covers_path(fr, "ENEEEEENNN"), invalid_input_error);

  // Closure of the cover relation from the bottom reaches the whole lattice.
  const std::string nu = "NEENEENEE";
  auto nfr = make_frame(nu);
  std::set<std::string> seen{nu};
  std::vector<std::string> work{nu};
  while (!work.empty()) {
    std::string mu = work.back();
    work.pop_back();
    for (const auto& up : upper_covers_path(nfr, mu))
      if (seen.insert(up).second) work.push_back(up);
  }
  CHECK(seen.size() == 12);  // Fuss-Catalan count for this reference path
  CHECK(nu_tamari_lattice(nu).brackets.size() == 12);
}

TEST_CASE("bracket vectors biject with paths") {
  auto fr = make_frame("EEENENENNE");
  std::vector<int> b = bracket_vector(fr, "EENENNENEE");
  CHECK(b == std::vector<int>{4, 0, 0, 0, 1, 1, 3, 2, 3, 4, 4});
  CHECK(path_of_bracket(fr, b) == "EENENNENEE");

  for (const std::string nu : {"NEENEENEE", "EEENENENNE", "NENENE"}) {
    auto f = make_frame(nu);
    for (const auto& bv : all_bracket_vectors(f)) {
      auto mu = path_of_bracket(f, bv);
      CHECK(weakly_above(f, mu));
      CHECK(bracket_vector(f, mu) == bv);
    }
  }
}

TEST_CASE("bracket validation names the violated condition") {
  auto fr = make_frame("NENENE");
  CHECK_THROWS_WITH(validate_bracket(fr, {1, 1, 1, 2, 2, 3, 3}),
                    Catch::Matchers::ContainsSubstring("condition I"));
  CHECK_THROWS_WITH(validate_bracket(fr, {0, 0, 1, 2, 2, 3, 3}),
                    Catch::Matchers::ContainsSubstring("condition II"));
  CHECK_THROWS_WITH(validate_bracket(fr, {0, 2, 1, 3, 2, 3, 3}),
                    Catch::Matchers::ContainsSubstring("condition III"));
  CHECK_THROWS_WITH(validate_bracket(fr, {0, 1, 1}),
                    Catch::Matchers::ContainsSubstring("length"));
}

TEST_CASE("componentwise minimum is the lattice meet") {
  for (const std::string nu : {"NENENE", "NEENEE", "EEENENENNE"}) {
    auto nt = nu_tamari_lattice(nu);
    const int m = static_cast<int>(nt.brackets.size());
    const auto& top = nt.brackets[nt.lattice.top()];
    for (int i = 0; i < m; ++i) {
      CHECK(meet_bracket(nt.frame, nt.brackets[i], nt.brackets[i]) == nt.brackets[i]);
      CHECK(meet_bracket(nt.frame, top, nt.brackets[i]) == nt.brackets[i]);
      for (int j = 0; j < m; ++j)
        CHECK(meet_bracket(nt.frame, nt.brackets[i], nt.brackets[j]) ==
              nt.brackets[nt.lattice.meet(i, j)]);
    }
    CHECK(nt.lattice.bottom() == 0);
    CHECK(nt.paths[0] == nu);
  }
}

TEST_CASE("small staircase lattices match known shapes") {
  auto pent = nu_tamari_lattice("NENENE");
  CHECK(pent.brackets.size() == 5);
  std::vector<std::pair<int, int>> pcov = {{0, 1}, {0, 2}, {2, 3}, {1, 4}, {3, 4}};
  CHECK(are_isomorphic(pent.lattice.poset(), FinitePoset::from_covers(5, pcov)));
  CHECK(nu_tamari_lattice("NENENENE").brackets.size() == 14);
}

TEST_CASE("path covers agree with bracket covers everywhere small") {
  for (int len = 0; len <= 8; ++len) {
    for (const auto& nu : all_paths_of_length(len)) {
      auto nt = nu_tamari_lattice(nu);
      std::set<std::pair<int, int>> from_paths;
      for (std::size_t i = 0; i < nt.paths.size(); ++i)
        for (const auto& up : upper_covers_path(nt.frame, nt.paths[i]))
          from_paths.insert({static_cast<int>(i), nt.id_of_path(up)});
      auto cov = nt.lattice.poset().covers();
      std::set<std::pair<int, int>> from_brackets(cov.begin(), cov.end());
      CHECK(from_paths == from_brackets);
    }
  }
}

TEST_CASE("cells, b_im and c_im formulas") {
  auto fr = make_frame("ENEEENNEENNE");
  CHECK(b_im(fr, 3, 4) == std::vector<int>{0, 0, 4, 4, 1, 1, 2, 3, 3, 3, 4, 5, 5});
  CHECK(c_im(fr, 3, 4) == std::vector<int>{5, 0, 5, 3, 3, 1, 2, 3, 3, 3, 4, 5, 5});
  CHECK(bracket_descents(b_im(fr, 3, 4)) == std::vector<int>{3});
  CHECK_THROWS_AS(b_im(fr, 1, 4), invalid_input_error);   // 1 is an f index
  CHECK_THROWS_AS(b_im(fr, 3, 1), invalid_input_error);   // row at or below the path
  CHECK_THROWS_AS(c_im(fr, 3, 6), invalid_input_error);   // row above the box

  for (int n = 2; n <= 6; ++n) {
    std::string nu;
    for (int i = 0; i < n; ++i) nu += "NE";
    CHECK(static_cast<long long>(cells(make_frame(nu)).size()) == binom(n, 2));
  }

  // Every b_im has its cell index as unique descent.
  rng::RngStream rng(991207);
  int tried = 0;
  while (tried < 20) {
    int len = 4 + static_cast<int>(rng.next_u64() % 7);
    std::string nu;
    for (int t = 0; t < len; ++t) nu += rng.next_u64() % 2 ? 'N' : 'E';
    auto f = make_frame(nu);
    auto cs = cells(f);
    if (cs.empty()) continue;
    auto cell = cs[static_cast<std::size_t>(rng.next_u64() % cs.size())];
    CHECK(bracket_descents(b_im(f, cell.i, cell.m)) == std::vector<int>{cell.i});
    ++tried;
  }
}

TEST_CASE("kappa and cells verifications on assorted references") {
  for (const std::string nu : {"NENENE", "NENENENE", "NEENEE", "NEENEENEE", "EEENENENNE",
                               "ENEEENNEENNE", "EEENN", "NNEEE", "NNNEE", ""}) {
    auto kr = verify_kappa_formula(nu);
    INFO(nu << ": " << kr.detail);
    CHECK(kr.ok);
    auto cr = verify_cells_isomorphism(nu);
    INFO(nu << ": " << cr.detail);
    CHECK(cr.ok);
    CHECK(nu_tamari_lattice(nu).lattice.is_trim());
  }
}

TEST_CASE("exact absorption time is bounded by the spine everywhere small") {
  const Rat p(1, 2);
  for (int len = 0; len <= 7; ++len) {
    for (const auto& nu : all_paths_of_length(len)) {
      auto nt = nu_tamari_lattice(nu);
      Rat full = expected_steps_linear<Rat>(nt.lattice, p);
      Rat spine = expected_steps_linear<Rat>(nt.lattice.spine(), p);
      CHECK(full <= spine);
    }
  }
}

TEST_CASE("allowable swaps and the downward projection") {
  CHECK(allowable_swaps({3, 1, 2}) == std::vector<int>{1});
  CHECK(pi_down({3, 1, 2}) == Perm{1, 3, 2});
  CHECK(allowable_swaps({3, 2, 1}).empty());
  CHECK(pi_down({3, 2, 1}) == Perm{3, 2, 1});

  for (int n = 1; n <= 5; ++n)
    for (const auto& x : all_permutations(n)) {
      Perm down = pi_down(x);
      CHECK(is_312_avoiding(down));
      CHECK(pi_down(down) == down);
      CHECK((pi_down(x) == x) == is_312_avoiding(x));
    }

  rng::RngStream rng(4242);
  for (int rep = 0; rep < 200; ++rep) {
    Perm x = identity_perm(7);
    for (int i = 6; i > 0; --i)
      std::swap(x[i], x[static_cast<std::size_t>(rng.next_u64() % (i + 1))]);
    Perm a = pi_down_randomized(x, rng);
    Perm b = pi_down_randomized(x, rng);
    CHECK(a == pi_down(x));
    CHECK(b == pi_down(x));
  }
}

TEST_CASE("descent bottoms and left-to-right maxima partition the values") {
  for (int n = 1; n <= 7; ++n)
    for (const auto& x : all_permutations(n)) {
      if (!is_312_avoiding(x)) continue;
      std::vector<int> db = descent_bottoms(x);
      std::vector<int> lr = left_to_right_maxima(x);
      std::vector<int> both;
      both.insert(both.end(), db.begin(), db.end());
      both.insert(both.end(), lr.begin(), lr.end());
      std::sort(both.begin(), both.end());
      Perm all = identity_perm(n);
      CHECK(both == all);
    }
}

TEST_CASE("projected ungar moves realize the avoider lattice") {
  for (int n = 3; n <= 5; ++n) {
    auto rw = av312_weak_order(n);
    std::map<Perm, int> id;
    for (int i = 0; i < static_cast<int>(rw.perms.size()); ++i) id[rw.perms[i]] = i;
    for (int xi = 0; xi < static_cast<int>(rw.perms.size()); ++xi) {
      const Perm& x = rw.perms[xi];
      auto des = descents(x);
      // The projections of the one-step drops are exactly the lower covers.
      std::set<int> proj;
      for (int i : des) {
        Perm y = x;
        std::swap(y[i - 1], y[i]);
        proj.insert(id.at(pi_down(y)));
      }
      auto dc = rw.lattice.poset().down_covers(xi);
      CHECK(proj == std::set<int>(dc.begin(), dc.end()));
      // Reversing any descent subset and projecting equals the lattice meet.
      for (int mask = 0; mask < (1 << des.size()); ++mask) {
        std::vector<int> t;
        for (std::size_t k = 0; k < des.size(); ++k)
          if ((mask >> k) & 1) t.push_back(des[k]);
        int m = xi;
        for (int i : t) {
          Perm y = x;
          std::swap(y[i - 1], y[i]);
          m = rw.lattice.meet(m, id.at(pi_down(y)));
        }
        CHECK(id.at(pi_down(ungar_move(x, t))) == m);
      }
    }
  }
}

TEST_CASE("staircase, cambrian and avoider lattices coincide") {
  for (int n = 3; n <= 5; ++n) {
    std::string nu;
    for (int i = 0; i < n; ++i) nu += "NE";
    auto tam = nu_tamari_lattice(nu);
    auto av = av312_weak_order(n);
    CHECK(are_isomorphic(tam.lattice.poset(), av.lattice.poset()));
    CoxWord c;
    for (int s = 1; s < n; ++s) c.push_back(s);
    auto camb = cambrian_lattice({CoxType::A, n - 1}, c);
    CHECK(are_isomorphic(tam.lattice.poset(), camb.lattice.poset()));
  }
}

TEST_CASE("simulated tamari chain matches the exact solver") {
  const int n = 4;
  auto av = av312_weak_order(n);
  double exact = expected_steps_linear<double>(av.lattice, 0.5);

  SimulationOptions opt;
  opt.seed = 20260818;
  opt.trials = 30000;
  auto res = simulate_tamari_chain(n, 0.5, opt);
  CHECK(res.stats.capped == 0);
  CHECK(std::abs(res.stats.mean - exact) <= 3 * res.stats.stderror);

  // Deterministic moves reproduce the iterated pop count from the top.
  SimulationOptions popt;
  popt.seed = 7;
  popt.trials = 50;
  auto pres = simulate_tamari_chain(5, 1.0, popt);
  auto av5 = av312_weak_order(5);
  double orbit = static_cast<double>(pop_iterations(av5.lattice, av5.lattice.top()));
  CHECK(pres.stats.mean == orbit);
  CHECK(pres.stats.variance == 0.0);

  // Worker count never changes the sampled values.
  SimulationOptions w1;
  w1.seed = 99;
  w1.trials = 200;
  SimulationOptions w3 = w1;
  w3.threads = 3;
  auto r1 = simulate_tamari_chain(7, 0.4, w1);
  auto r3 = simulate_tamari_chain(7, 0.4, w3);
  CHECK(r1.samples == r3.samples);
  CHECK(r1.stats.mean == r3.stats.mean);
}

TEST_CASE("unique-maximum numerics") {
  CHECK(std::abs(rho_bar(0.5) - 0.72136) <= 2e-4);
  CHECK(std::abs(tamari_coefficient(0.5) - 1.57186) <= 1e-3);
  CHECK(upsilon(1.0, 0.7) == 0.0);
  CHECK(rho_bar(1.0) == 0.0);
  CHECK(tamari_coefficient(1.0) == 0.0);

  for (double p : {0.5, 0.3})
    for (double x : {0.3, 0.7, 1.0})
      CHECK(upsilon(p, (1 - p) * x) == Catch::Approx(upsilon(p, x)).epsilon(1e-9));

  CHECK(rho_n(0.5, 1) == Catch::Approx(1.0).margin(1e-12));
  CHECK(rho_n(0.5, 2) == Catch::Approx(2.0 / 3.0).margin(1e-12));
  CHECK(rho_n(1.0, 1) == 1.0);
  CHECK(rho_n(1.0, 5) == 0.0);
  CHECK(std::abs(rho_n(0.5, 1000) - upsilon(0.5, 1000)) < 0.01);
  CHECK(std::abs(rho_n(0.5, 10000) - upsilon(0.5, 10000)) < 0.01);

  CHECK_THROWS_AS(upsilon(0.5, 0.0), invalid_input_error);
  CHECK_THROWS_AS(rho_n(0.5, 0), invalid_input_error);
}
