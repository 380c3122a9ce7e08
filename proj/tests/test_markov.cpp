#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ungar/markov.hpp"

using namespace ungar;

namespace {

// 0 < a,b < 1: the boolean lattice on two atoms.
FiniteLattice boolean2() {
  return FiniteLattice::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

FiniteLattice pentagon_n5() {
  return FiniteLattice::from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
}

FiniteLattice diamond_m3() {
  return FiniteLattice::from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

FiniteLattice chain_lattice(int covers) { return FiniteLattice::from_poset(chain_poset(covers + 1)); }

}  // namespace

TEST_CASE("transition weights on three incomparable covers") {
  auto m3 = diamond_m3();
  auto dist = transition_distribution<Rat>(m3, 4, Rat(1, 2));
  // Targets in id order: bottom, each atom, the self loop.
  REQUIRE(dist.size() == 5);
  REQUIRE(dist[0] == std::pair<int, Rat>{0, Rat(1, 2)});
  REQUIRE(dist[1] == std::pair<int, Rat>{1, Rat(1, 8)});
  REQUIRE(dist[2] == std::pair<int, Rat>{2, Rat(1, 8)});
  REQUIRE(dist[3] == std::pair<int, Rat>{3, Rat(1, 8)});
  REQUIRE(dist[4] == std::pair<int, Rat>{4, Rat(1, 8)});
  Rat total(0);
  for (auto& [y, w] : dist) total += w;
  REQUIRE(total == 1);
}

TEST_CASE("pop is the p = 1 step") {
  auto b2 = boolean2();
  REQUIRE(pop(b2, 3) == 0);
  REQUIRE(pop(b2, 1) == 0);
  REQUIRE(pop_iterations(b2, 3) == 1);
  REQUIRE(pop_iterations(chain_lattice(7), 7) == 7);
  auto n5 = pentagon_n5();
  REQUIRE(pop(n5, 4) == 0);
  REQUIRE(pop_iterations(n5, 2) == 2);
}

TEST_CASE("exact expected steps on small lattices") {
  REQUIRE(expected_steps_linear<Rat>(boolean2(), Rat(1, 2)) == Rat(8, 3));
  REQUIRE(expected_steps_linear<Rat>(pentagon_n5(), Rat(1, 2)) == Rat(10, 3));
  // A chain with r covers needs r/p expected steps.
  REQUIRE(expected_steps_linear<Rat>(chain_lattice(9), Rat(1, 3)) == 27);
  REQUIRE(expected_steps_linear<Rat>(chain_lattice(9), Rat(1)) == 9);
  REQUIRE_THAT(expected_steps_linear<double>(boolean2(), 0.5),
               Catch::Matchers::WithinAbs(8.0 / 3.0, 1e-12));
}

TEST_CASE("both solvers agree and from-element times match") {
  for (auto& l : {boolean2(), pentagon_n5(), diamond_m3(),
                  order_ideal_lattice(antichain_poset(3)),
                  order_ideal_lattice(rectangle_poset(2, 3))}) {
    REQUIRE(expected_steps_linear<Rat>(l, Rat(2, 5)) ==
            expected_steps_recursive<Rat>(l, Rat(2, 5)));
    REQUIRE_THAT(expected_steps_linear<double>(l, 0.37),
                 Catch::Matchers::WithinRel(expected_steps_recursive<double>(l, 0.37), 1e-12));
  }
  auto n5 = pentagon_n5();
  auto h = absorption_times_linear<Rat>(n5, Rat(1, 2));
  for (int x = 0; x < n5.size(); ++x)
    REQUIRE(h[x] == expected_steps_recursive<Rat>(n5, Rat(1, 2), x));
}

TEST_CASE("expected steps never drop below the spine value") {
  auto n5 = pentagon_n5();
  auto spine = n5.spine();
  REQUIRE(expected_steps_linear<Rat>(spine, Rat(1, 2)) == 6);
  REQUIRE(expected_steps_linear<Rat>(n5, Rat(1, 2)) <= 6);
}

TEST_CASE("simulation matches the exact value") {
  auto b3 = order_ideal_lattice(antichain_poset(3));
  double exact = expected_steps_linear<double>(b3, 0.5);
  SimulationOptions opt;
  opt.seed = 42;
  opt.trials = 20000;
  auto res = simulate_lattice_hitting_time(b3, 0.5, opt);
  REQUIRE(res.stats.count == 20000);
  REQUIRE(std::abs(res.stats.mean - exact) < 3.0 * res.stats.stderror);
}

TEST_CASE("worker count does not change results") {
  auto l = order_ideal_lattice(rectangle_poset(2, 3));
  SimulationOptions opt1;
  opt1.seed = 7;
  opt1.trials = 500;
  auto opt4 = opt1;
  opt4.threads = 4;
  auto r1 = simulate_lattice_hitting_time(l, 0.3, opt1);
  auto r4 = simulate_lattice_hitting_time(l, 0.3, opt4);
  REQUIRE(r1.samples == r4.samples);
  REQUIRE(r1.stats.mean == r4.stats.mean);
  REQUIRE(r1.stats.variance == r4.stats.variance);
}

TEST_CASE("step cap failures are reported") {
  SimulationOptions opt;
  opt.seed = 1;
  opt.trials = 100;
  opt.step_cap = 1;
  REQUIRE_THROWS_AS(simulate_lattice_hitting_time(chain_lattice(10), 0.5, opt),
                    resource_limit_error);
}

TEST_CASE("trajectories start at the top and end at the bottom") {
  auto l = order_ideal_lattice(antichain_poset(3));
  auto traj = sample_trajectory(l, 0.5, 99);
  REQUIRE(traj.front() == l.top());
  REQUIRE(traj.back() == l.bottom());
  for (std::size_t i = 1; i < traj.size(); ++i) REQUIRE(l.leq(traj[i], traj[i - 1]));
}

TEST_CASE("fewest nonempty moves via breadth-first search") {
  REQUIRE(min_ungar_moves(chain_lattice(4), 4, 0) == 4);
  auto b3 = order_ideal_lattice(antichain_poset(3));
  REQUIRE(min_ungar_moves(b3, b3.top(), b3.bottom()) == 1);
  REQUIRE(min_ungar_moves(b3, b3.top(), b3.bottom(), true) == 2);
  REQUIRE(min_ungar_moves(b3, b3.bottom(), b3.bottom()) == 0);
}
