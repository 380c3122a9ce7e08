#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>

#include "ungar/families.hpp"
#include "ungar/io.hpp"
#include "ungar/lattice.hpp"
#include "ungar/poset.hpp"
#include "ungar/weak_order.hpp"

using namespace ungar;

TEST_CASE("poset exchange format round trips") {
  auto p = random_poset(7, 11);
  std::ostringstream out;
  write_poset(out, p);
  std::istringstream in(out.str());
  auto q = read_poset(in);
  CHECK(q.size() == p.size());
  CHECK(q.covers() == p.covers());

  std::istringstream commented(
      "# diamond\n"
      "4\n"
      "0 1  # bottom to left\n"
      "0 2\n"
      "\n"
      "1 3\n"
      "2 3\n");
  auto d = read_poset(commented);
  CHECK(d.size() == 4);
  CHECK(d.covers().size() == 4);

  std::istringstream no_count("0 1\n");
  CHECK_THROWS_AS(read_poset(no_count), invalid_input_error);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_poset(empty), invalid_input_error);
  std::istringstream half("3\n0\n");
  CHECK_THROWS_AS(read_poset(half), invalid_input_error);
  std::istringstream triple("3\n0 1 2\n");
  CHECK_THROWS_AS(read_poset(triple), invalid_input_error);
  std::istringstream oob("2\n0 5\n");
  CHECK_THROWS_AS(read_poset(oob), invalid_input_error);
  std::istringstream cyc("2\n0 1\n1 0\n");
  CHECK_THROWS_AS(read_poset(cyc), invalid_input_error);
}

TEST_CASE("trace and plot writers are deterministic") {
  std::vector<std::pair<long long, Perm>> snaps = {{0, {3, 1, 2}}, {1, {1, 3, 2}}};
  std::ostringstream csv;
  write_trace_csv(csv, snaps);
  CHECK(csv.str() ==
        "time,position,value\n"
        "0,1,3\n0,2,1\n0,3,2\n"
        "1,1,1\n1,2,3\n1,3,2\n");

  std::vector<std::pair<std::string, Perm>> panels = {{"t=0", decreasing_perm(5)},
                                                      {"t=1", identity_perm(5)}};
  std::ostringstream a, b;
  write_permutation_panels_svg(a, panels);
  write_permutation_panels_svg(b, panels);
  CHECK(a.str() == b.str());
  std::string svg = a.str();
  std::size_t dots = 0;
  for (std::size_t at = svg.find("<circle"); at != std::string::npos;
       at = svg.find("<circle", at + 1))
    ++dots;
  CHECK(dots == 10);
  CHECK(svg.find("t=0") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

  CHECK_THROWS_AS(write_permutation_panels_svg(a, {}), invalid_input_error);
}

TEST_CASE("lattice zoo covers every family") {
  auto zoo = lattice_zoo();
  CHECK(zoo.size() >= 60);
  std::set<std::string> names;
  for (const auto& e : zoo) {
    CHECK(names.insert(e.name).second);
    CHECK(e.lattice.size() >= 1);
  }
  for (const char* stem : {"tamari-", "cambrian-A", "cambrian-B", "cambrian-D4",
                           "cambrian-I2", "weak-S", "j-of-poset-"}) {
    bool found = false;
    for (const auto& e : zoo) found = found || e.name.rfind(stem, 0) == 0;
    INFO(stem);
    CHECK(found);
  }

  CHECK(all_coxeter_words({CoxType::A, 3}).size() == 4);
  CHECK(all_coxeter_words({CoxType::D, 4}).size() == 8);
  CHECK(all_coxeter_words({CoxType::I2, 6}).size() == 2);
  CHECK(random_poset(6, 3).covers() == random_poset(6, 3).covers());
}
