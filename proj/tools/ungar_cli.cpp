// Command-line front end: exact solves, Monte Carlo runs, last-passage
// estimates, and verification sweeps over the library's lattice families.
//
// Results are a single JSON record on stdout.  The record is byte-identical
// for identical inputs regardless of worker count, so wall-clock runtime and
// thread count go to stderr instead.  Exit codes: 0 ok, 2 invalid input,
// 3 resource limit, 4 verification failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ungar/common.hpp"
#include "ungar/coxeter.hpp"
#include "ungar/families.hpp"
#include "ungar/io.hpp"
#include "ungar/lattice.hpp"
#include "ungar/lpp.hpp"
#include "ungar/markov.hpp"
#include "ungar/nu_tamari.hpp"
#include "ungar/poset.hpp"
#include "ungar/rational.hpp"
#include "ungar/version.hpp"
#include "ungar/weak_order.hpp"

using json = nlohmann::ordered_json;
using namespace ungar;

namespace {

struct FamilyArgs {
  std::string family;
  int n = 0;
  int m = 0;
  std::string nu;
  std::string orientation;
  int k = 0;
  int l = 0;
  std::string file;
  std::uint64_t poset_seed = 1;
};

json base_record(const std::string& command) {
  json rec;
  rec["schema_version"] = kResultSchemaVersion;
  rec["library_version"] = kVersion;
  rec["command"] = command;
  return rec;
}

json probability_record(const std::string& text, const Probability& p) {
  json rec;
  rec["text"] = text;
  rec["mode"] = p.is_rational() ? "rational" : "double";
  rec["value"] = p.as_double();
  return rec;
}

std::vector<std::uint64_t> parse_times(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) throw invalid_input_error("empty entry in snapshot time list");
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      throw invalid_input_error("cannot parse snapshot time: " + tok);
    }
    if (pos != tok.size()) throw invalid_input_error("cannot parse snapshot time: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw invalid_input_error("snapshot time list is empty");
  return out;
}

// Directed edges "s_i>s_j" (or "i>j"), comma separated; each named generator
// precedes the other end of its Coxeter graph edge.
CoxWord orientation_word(const CoxeterSpec& spec, const std::string& text) {
  if (text.empty()) {
    std::vector<std::pair<int, int>> natural = spec.graph_edges();
    return orientation_to_word(spec, natural);
  }
  auto parse_label = [](std::string tok) {
    if (tok.rfind("s_", 0) == 0) tok = tok.substr(2);
    else if (tok.rfind('s', 0) == 0) tok = tok.substr(1);
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw invalid_input_error("cannot parse generator label: " + tok);
    }
    if (pos != tok.size()) throw invalid_input_error("cannot parse generator label: " + tok);
    return v;
  };
  std::vector<std::pair<int, int>> orient;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    auto gt = tok.find('>');
    if (gt == std::string::npos)
      throw invalid_input_error("orientation entry needs the form s_i>s_j: " + tok);
    orient.push_back({parse_label(tok.substr(0, gt)), parse_label(tok.substr(gt + 1))});
  }
  return orientation_to_word(spec, orient);
}

void guard_group_order(const CoxeterSpec& spec) {
  double order = 1;
  switch (spec.type) {
    case CoxType::A:
      for (int i = 2; i <= spec.n + 1; ++i) order *= i;
      break;
    case CoxType::B:
      for (int i = 1; i <= spec.n; ++i) order *= 2 * i;
      break;
    case CoxType::D:
      for (int i = 1; i <= spec.n; ++i) order *= i;
      order *= std::pow(2.0, spec.n - 1);
      break;
    case CoxType::I2:
      order = 2.0 * spec.n;
      break;
  }
  if (order > static_cast<double>(limits::kExactCap))
    throw resource_limit_error("Coxeter group too large to enumerate: order " +
                               std::to_string(static_cast<long long>(order)) + " exceeds " +
                               std::to_string(limits::kExactCap));
}

double factorial_d(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

struct ResolvedLattice {
  json params;
  FiniteLattice lattice;
};

ResolvedLattice resolve_lattice(const FamilyArgs& a) {
  ResolvedLattice out;
  if (a.family == "weak") {
    if (a.n < 1) throw invalid_input_error("family weak needs --n >= 1");
    if (factorial_d(a.n) > static_cast<double>(limits::kExactCap))
      throw resource_limit_error("weak order on S_" + std::to_string(a.n) +
                                 " exceeds the exact-solver cap; use simulate");
    out.params["n"] = a.n;
    out.lattice = weak_order_lattice(a.n);
  } else if (a.family == "tamari") {
    if (a.n < 1) throw invalid_input_error("family tamari needs --n >= 1");
    out.params["n"] = a.n;
    out.lattice = nu_tamari_lattice(staircase_path(a.n)).lattice;
  } else if (a.family == "nu-tamari") {
    if (a.nu.empty() && a.n == 0)
      throw invalid_input_error("family nu-tamari needs --nu (N/E string)");
    out.params["nu"] = a.nu;
    out.lattice = nu_tamari_lattice(a.nu).lattice;
  } else if (a.family == "cambrian-A" || a.family == "cambrian-B" || a.family == "cambrian-D" ||
             a.family == "cambrian-I2") {
    CoxeterSpec spec;
    if (a.family == "cambrian-I2") {
      if (a.m < 2) throw invalid_input_error("family cambrian-I2 needs --m >= 2");
      spec = {CoxType::I2, a.m};
      out.params["m"] = a.m;
    } else {
      if (a.n < 1) throw invalid_input_error("family " + a.family + " needs --n >= 1");
      CoxType t = a.family == "cambrian-A" ? CoxType::A
                  : a.family == "cambrian-B" ? CoxType::B
                                             : CoxType::D;
      spec = {t, a.n};
      out.params["n"] = a.n;
    }
    spec.validate();
    guard_group_order(spec);
    CoxWord c = orientation_word(spec, a.orientation);
    out.params["orientation"] = [&] {
      std::string s;
      for (auto [x, y] : word_to_orientation(spec, c)) {
        if (!s.empty()) s += ',';
        s += "s_" + std::to_string(x) + ">s_" + std::to_string(y);
      }
      return s;
    }();
    out.lattice = cambrian_lattice(spec, c).lattice;
  } else if (a.family == "j-of-poset") {
    FinitePoset p;
    if (!a.file.empty()) {
      out.params["file"] = a.file;
      p = read_poset_file(a.file);
    } else {
      if (a.n < 1) throw invalid_input_error("family j-of-poset needs --file or --n");
      out.params["n"] = a.n;
      out.params["poset_seed"] = a.poset_seed;
      p = random_poset(a.n, a.poset_seed);
    }
    out.lattice = order_ideal_lattice(p);
  } else if (a.family == "rectangle") {
    if (a.k < 1 || a.l < 1) throw invalid_input_error("family rectangle needs --k and --l");
    out.params["k"] = a.k;
    out.params["l"] = a.l;
    out.lattice = order_ideal_lattice(rectangle_poset(a.k, a.l));
  } else if (a.family == "custom-file") {
    if (a.file.empty()) throw invalid_input_error("family custom-file needs --file");
    out.params["file"] = a.file;
    out.lattice = FiniteLattice::from_poset(read_poset_file(a.file));
  } else {
    throw invalid_input_error("unknown family: " + a.family);
  }
  return out;
}

FinitePoset resolve_lpp_poset(const FamilyArgs& a, json* params) {
  if (a.family == "rectangle") {
    if (a.k < 1 || a.l < 1) throw invalid_input_error("family rectangle needs --k and --l");
    (*params)["k"] = a.k;
    (*params)["l"] = a.l;
    return rectangle_poset(a.k, a.l);
  }
  if (a.family == "j-of-poset") {
    if (!a.file.empty()) {
      (*params)["file"] = a.file;
      return read_poset_file(a.file);
    }
    if (a.n < 1) throw invalid_input_error("family j-of-poset needs --file or --n");
    (*params)["n"] = a.n;
    (*params)["poset_seed"] = a.poset_seed;
    return random_poset(a.n, a.poset_seed);
  }
  if (a.family == "custom-file") {
    if (a.file.empty()) throw invalid_input_error("family custom-file needs --file");
    (*params)["file"] = a.file;
    return read_poset_file(a.file);
  }
  throw invalid_input_error("lpp supports families rectangle, j-of-poset, custom-file");
}

json stats_record(const SimulationResult& res, std::uint64_t trials) {
  json rec;
  rec["mean"] = res.stats.mean;
  rec["variance"] = res.stats.variance;
  rec["stderror"] = res.stats.stderror;
  rec["ci95"] = {res.stats.mean - 1.96 * res.stats.stderror,
                 res.stats.mean + 1.96 * res.stats.stderror};
  rec["capped"] = res.stats.capped;
  rec["sample_count"] = trials - res.stats.capped;
  return rec;
}

json expectation_record(const FiniteLattice& l, const Probability& p, const std::string& mode) {
  json rec;
  if (p.is_rational()) {
    Rat e = mode == "recursive" ? expected_steps_recursive<Rat>(l, p.as_rational())
                                : expected_steps_linear<Rat>(l, p.as_rational());
    rec["rational"] = to_string(e);
    rec["decimal"] = e.get_d();
  } else {
    double e = mode == "recursive" ? expected_steps_recursive<double>(l, p.as_double())
                                   : expected_steps_linear<double>(l, p.as_double());
    rec["decimal"] = e;
  }
  return rec;
}

// ---- Subcommand runners; each returns {record, exit code} ----

struct RunOutcome {
  json record;
  int code = 0;
};

RunOutcome run_exact(const FamilyArgs& fam, const std::string& p_text, const std::string& mode) {
  auto p = parse_probability(p_text);
  auto res = resolve_lattice(fam);
  json rec = base_record("exact");
  rec["family"] = fam.family;
  rec["params"] = res.params;
  rec["p"] = probability_record(p_text, p);
  rec["mode"] = mode;
  rec["lattice_size"] = res.lattice.size();
  rec["expectation"] = expectation_record(res.lattice, p, mode);
  return {rec, 0};
}

RunOutcome run_simulate(const FamilyArgs& fam, const std::string& p_text,
                        const SimulationOptions& opt, const std::string& snapshots,
                        const std::string& plot_path, const std::string& trace_path) {
  auto p = parse_probability(p_text);
  const double pd = p.as_double();
  json rec = base_record("simulate");
  rec["family"] = fam.family;

  const bool perm_model = fam.family == "weak" || fam.family == "tamari";
  if (!snapshots.empty() && !perm_model)
    throw invalid_input_error("snapshots need a permutation-model family (weak or tamari)");

  SimulationResult res;
  if (fam.family == "weak") {
    if (fam.n < 1) throw invalid_input_error("family weak needs --n >= 1");
    rec["params"] = json{{"n", fam.n}};
    res = simulate_weak_chain(fam.n, pd, opt);
  } else if (fam.family == "tamari") {
    if (fam.n < 1) throw invalid_input_error("family tamari needs --n >= 1");
    rec["params"] = json{{"n", fam.n}};
    res = simulate_tamari_chain(fam.n, pd, opt);
  } else {
    auto resolved = resolve_lattice(fam);
    rec["params"] = resolved.params;
    rec["lattice_size"] = resolved.lattice.size();
    res = simulate_lattice_hitting_time(resolved.lattice, pd, opt);
  }

  rec["p"] = probability_record(p_text, p);
  rec["seed"] = opt.seed;
  rec["trials"] = opt.trials;
  rec["step_cap"] = opt.step_cap;
  rec["rng"] = json{{"scheme", "counter-based, one stream per trial"}, {"seed", opt.seed}};
  rec["stats"] = stats_record(res, opt.trials);

  if (!snapshots.empty()) {
    auto times = parse_times(snapshots);
    WeakTrajectory traj = fam.family == "weak"
                              ? weak_trajectory_at_times(fam.n, pd, opt.seed, times, opt.step_cap)
                              : tamari_trajectory_at_times(fam.n, pd, opt.seed, times, opt.step_cap);
    json snap;
    snap["times"] = times;
    snap["trajectory_steps"] = traj.steps;
    snap["absorbed"] = traj.absorbed;
    if (!trace_path.empty()) {
      std::vector<std::pair<long long, Perm>> rows;
      for (const auto& [t, w] : traj.snapshots)
        rows.push_back({static_cast<long long>(t), w});
      std::ostringstream csv;
      write_trace_csv(csv, rows);
      write_text_file(trace_path, csv.str());
      snap["trace"] = trace_path;
    }
    if (!plot_path.empty()) {
      std::vector<std::pair<std::string, Perm>> panels;
      for (const auto& [t, w] : traj.snapshots)
        panels.push_back({"t=" + std::to_string(t), w});
      std::ostringstream svg;
      write_permutation_panels_svg(svg, panels);
      write_text_file(plot_path, svg.str());
      snap["plot"] = plot_path;
    }
    rec["snapshots"] = snap;
  }
  return {rec, 0};
}

RunOutcome run_lpp(const FamilyArgs& fam, const std::string& p_text,
                   const SimulationOptions& opt) {
  auto p = parse_probability(p_text);
  const double pd = p.as_double();
  json rec = base_record("lpp");
  rec["family"] = fam.family;
  json params;
  FinitePoset poset = resolve_lpp_poset(fam, &params);
  rec["params"] = params;
  rec["p"] = probability_record(p_text, p);
  rec["seed"] = opt.seed;
  rec["trials"] = opt.trials;
  rec["poset_size"] = poset.size();
  auto res = estimate_lpp(poset, pd, opt);
  rec["rng"] = json{{"scheme", "counter-based, one stream per trial"}, {"seed", opt.seed}};
  rec["stats"] = stats_record(res, opt.trials);
  if (fam.family == "rectangle") {
    rec["scaled_mean"] = res.stats.mean / fam.k;
    rec["asymptotic_coefficient"] =
        rectangle_lpp_coefficient(1.0, static_cast<double>(fam.l) / fam.k, pd);
  }
  return {rec, 0};
}

RunOutcome run_verify(const std::string& suite, int max_size, int nu_steps,
                      const std::string& p_text) {
  auto p = parse_probability(p_text);
  if (!p.is_rational())
    throw invalid_input_error("verify compares exact values; give --p as a fraction");
  const Rat& pr = p.as_rational();

  json rec = base_record("verify");
  rec["suite"] = suite;
  rec["max_size"] = max_size;
  rec["p"] = probability_record(p_text, p);
  json checks = json::array();
  int failures = 0;
  auto push = [&](const std::string& name, bool ok, const std::string& detail) {
    json c;
    c["name"] = name;
    c["ok"] = ok;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    if (!ok) ++failures;
  };

  if (suite == "spine" || suite == "solvers" || suite == "galois") {
    for (const auto& entry : lattice_zoo()) {
      if (entry.lattice.size() > max_size) continue;
      if (suite == "solvers") {
        Rat a = expected_steps_linear<Rat>(entry.lattice, pr);
        Rat b = expected_steps_recursive<Rat>(entry.lattice, pr);
        push(entry.name, a == b, "linear " + to_string(a) + ", recursive " + to_string(b));
        continue;
      }
      if (!entry.lattice.is_trim()) continue;
      if (suite == "spine") {
        Rat full = expected_steps_linear<Rat>(entry.lattice, pr);
        Rat spine = expected_steps_linear<Rat>(entry.lattice.spine(), pr);
        bool ok = full <= spine;
        if (entry.lattice.is_distributive()) ok = ok && full == spine;
        push(entry.name, ok, "E " + to_string(full) + ", spine " + to_string(spine));
      } else {
        bool ok = are_isomorphic(entry.lattice.spine().poset(),
                                 order_ideal_lattice(galois_poset(entry.lattice)).poset());
        push(entry.name, ok, "");
      }
    }
  } else if (suite == "kappa" || suite == "cells") {
    if (nu_steps < 0 || nu_steps > 10)
      throw invalid_input_error("--nu-steps must lie in [0, 10]");
    rec["nu_steps"] = nu_steps;
    for (int len = 0; len <= nu_steps; ++len) {
      for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
        std::string nu;
        for (int t = 0; t < len; ++t) nu += (mask >> t) & 1 ? 'N' : 'E';
        auto r = suite == "kappa" ? verify_kappa_formula(nu) : verify_cells_isomorphism(nu);
        push("nu=" + nu, r.ok, r.detail);
      }
    }
  } else {
    throw invalid_input_error("unknown suite: " + suite +
                              " (expected spine, solvers, galois, kappa, or cells)");
  }

  rec["checks"] = checks;
  rec["failures"] = failures;
  return {rec, failures == 0 ? 0 : 4};
}

void emit(const json& rec) { std::cout << rec.dump(2) << "\n"; }

int emit_error(const std::string& cls, const std::string& message, int code) {
  json rec;
  rec["schema_version"] = kResultSchemaVersion;
  rec["library_version"] = kVersion;
  rec["error"] = json{{"class", cls}, {"message", message}};
  emit(rec);
  std::cerr << "error (" << cls << "): " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ungarian Markov chains on finite lattices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_config("--config");

  FamilyArgs fam;
  std::string p_text = "1/2";
  std::string mode = "linear";
  SimulationOptions opt;
  std::string snapshots, plot_path, trace_path;
  std::string suite = "spine";
  int max_size = 2000;
  int nu_steps = 6;

  auto add_family_opts = [&](CLI::App* cmd) {
    cmd->add_option("--family", fam.family, "weak|tamari|nu-tamari|cambrian-A|cambrian-B|"
                                            "cambrian-D|cambrian-I2|j-of-poset|rectangle|custom-file")
        ->required();
    cmd->add_option("--n", fam.n, "size parameter (permutation size or Coxeter rank)");
    cmd->add_option("--m", fam.m, "dihedral parameter for cambrian-I2");
    cmd->add_option("--nu", fam.nu, "reference path as an N/E string");
    cmd->add_option("--orientation", fam.orientation,
                    "Coxeter element as directed edges, e.g. s_1>s_2,s_3>s_2");
    cmd->add_option("--k", fam.k, "rectangle rows");
    cmd->add_option("--l", fam.l, "rectangle columns");
    cmd->add_option("--file", fam.file, "poset exchange file for custom inputs");
    cmd->add_option("--poset-seed", fam.poset_seed, "seed for the random poset family");
  };
  auto add_sim_opts = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "master seed; trial t uses stream (seed, t)");
    cmd->add_option("--trials", opt.trials, "Monte Carlo trial count");
    cmd->add_option("--threads", opt.threads, "worker count (never changes results)");
    cmd->add_option("--step-cap", opt.step_cap, "per-trial step cap");
  };

  auto* exact = app.add_subcommand("exact", "solve E(L) exactly");
  add_family_opts(exact);
  exact->add_option("--p", p_text, "probability; a fraction like 1/2 selects rational mode");
  exact->add_option("--mode", mode, "linear|recursive")
      ->check(CLI::IsMember({"linear", "recursive"}));

  auto* simulate = app.add_subcommand("simulate", "estimate E(L) by Monte Carlo");
  add_family_opts(simulate);
  simulate->add_option("--p", p_text, "probability of including each covered element");
  add_sim_opts(simulate);
  auto* snap_opt = simulate->add_option("--snapshots", snapshots,
                                        "comma-separated times to record one trajectory at");
  simulate->add_option("--plot", plot_path, "write snapshot panels to this SVG file")
      ->needs(snap_opt);
  simulate->add_option("--trace", trace_path, "write snapshot rows to this CSV file")
      ->needs(snap_opt);

  auto* lpp = app.add_subcommand("lpp", "estimate last-passage times with geometric weights");
  add_family_opts(lpp);
  lpp->add_option("--p", p_text, "geometric weight parameter");
  add_sim_opts(lpp);

  auto* verify = app.add_subcommand("verify", "run a verification sweep and report per check");
  verify->add_option("--suite", suite, "spine|solvers|galois|kappa|cells");
  verify->add_option("--max-size", max_size, "skip zoo lattices above this size");
  verify->add_option("--nu-steps", nu_steps, "reference-path length bound for kappa/cells");
  verify->add_option("--p", p_text, "fraction used by the exact comparisons");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return emit_error("invalid-input", e.what(), 2);
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    RunOutcome out;
    if (exact->parsed())
      out = run_exact(fam, p_text, mode);
    else if (simulate->parsed())
      out = run_simulate(fam, p_text, opt, snapshots, plot_path, trace_path);
    else if (lpp->parsed())
      out = run_lpp(fam, p_text, opt);
    else
      out = run_verify(suite, max_size, nu_steps, p_text);
    emit(out.record);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cerr << "runtime_ms=" << ms << " threads=" << opt.threads << "\n";
    return out.code;
  } catch (const invalid_input_error& e) {
    return emit_error("invalid-input", e.what(), 2);
  } catch (const resource_limit_error& e) {
    return emit_error("resource-limit", e.what(), 3);
  } catch (const verification_error& e) {
    return emit_error("verification", e.what(), 4);
  }
}
