// Command line front end: runs every construction in the library on config
// files and emits machine-readable JSON (and CSV traces). Exit codes:
//   0  success
//   1  usage, IO or validation errors
//   2  a checked inequality or identity failed (the headline signal)

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cubeavg/averages.hpp"
#include "cubeavg/errors.hpp"
#include "cubeavg/io.hpp"
#include "cubeavg/lattice.hpp"
#include "cubeavg/magic.hpp"
#include "cubeavg/measures.hpp"
#include "cubeavg/partition.hpp"
#include "cubeavg/random_instance.hpp"

using namespace cubeavg;

namespace {

void emit(const Json& j, const std::string& output_path) {
  const std::string text = j.dump(2) + "\n";
  if (output_path.empty() || output_path == "-")
    std::cout << text;
  else
    write_file(output_path, text);
}

Json epsilon_json(EpsilonMask eps) {
  Json arr = Json::array();
  for (int i : epsilon_members(eps)) arr.push_back(i);
  return arr;
}

int run_validate(const std::string& system_path, const std::string& output) {
  System sys = load_system(system_path);
  Json out;
  out["ok"] = true;
  out["points"] = sys.size();
  out["transformations"] = sys.dim();
  out["commuting_checked"] = sys.commuting;
  Json orders = Json::array();
  for (const auto& t : sys.transforms) orders.push_back(orbit_order(t));
  out["orbit_orders"] = std::move(orders);
  emit(out, output);
  return 0;
}

int run_seminorm(const std::string& system_path, const std::string& function_path,
                 const std::string& epsilon_bits_arg, const std::string& output) {
  System sys = load_system(system_path);
  Observable f = load_observable(function_path, sys.space);
  EpsilonMask eps = epsilon_bits_arg.empty() ? full_mask(sys.dim())
                                             : parse_epsilon_bits(epsilon_bits_arg);
  SeminormValue v = box_seminorm(sys, f, eps);
  Json out;
  out["epsilon"] = epsilon_json(eps);
  out["power_value"] = rational_string(v.power_value);
  out["degree"] = v.degree;
  out["value"] = v.value();
  emit(out, output);
  return 0;
}

void write_trace_csv(const std::string& path, int dim, const std::vector<TracePoint>& trace) {
  std::ostringstream csv;
  for (int i = 1; i <= dim; ++i) csv << "box_len_" << i << ",";
  csv << "l2_deviation\n";
  for (const auto& tp : trace) {
    for (long long l : tp.lens) csv << l << ",";
    csv << tp.l2_deviation << "\n";
  }
  write_file(path, csv.str());
}

int run_average(const std::string& spec_path, const std::string& output,
                const std::string& trace_path, int trace_doublings) {
  LoadedCubeSpec loaded = load_cube_spec(spec_path);
  CubeSpec spec;
  spec.system = &loaded.system;
  spec.functions = loaded.functions;
  spec.box = loaded.box;
  spec.rank_cap = loaded.rank_cap;
  CubeResult res = cube_average(spec);

  Json out;
  out["box_lengths"] = res.box_lengths;
  out["average"] = observable_to_json(loaded.system.space, res.average);
  emit(out, output);

  if (!trace_path.empty()) {
    auto trace = deviation_trace(loaded.system, loaded.functions, loaded.rank_cap, 2,
                                 trace_doublings);
    write_trace_csv(trace_path, loaded.system.dim(), trace);
  }
  return 0;
}

int run_limit(const std::string& spec_path, const std::string& output) {
  LoadedCubeSpec loaded = load_cube_spec(spec_path);
  CubeResult res = cube_limit(loaded.system, loaded.functions, loaded.rank_cap);
  Observable iterated = iterated_limit(loaded.system, loaded.functions, loaded.rank_cap);
  const bool agree = iterated.values == res.average.values;

  Json out;
  out["period_box"] = res.box_lengths;
  out["limit"] = observable_to_json(loaded.system.space, res.average);
  out["iterated_equals_joint"] = agree;
  emit(out, output);
  return agree ? 0 : 2;
}

int run_magic(const std::string& system_path, const std::string& check,
              const std::string& output) {
  System sys = load_system(system_path);
  MagicSystem ms = build_magic(sys);

  Json out;
  out["star_points"] = static_cast<long long>(ms.support_keys.size());
  bool all_ok = true;

  if (check == "defect" || check == "all") {
    // Spanning family: each join-cell indicator, projected off the join.
    std::vector<Partition> parts;
    for (int i = 0; i < ms.star.dim(); ++i)
      parts.push_back(invariant_partition(ms.star.space, ms.star.transforms[i]));
    Partition joined = join_partitions(ms.star.space, parts);
    bool ok = true;
    for (int c = 0; c < joined.cell_count() && ok; ++c) {
      Observable g = constant_observable(ms.star.size(), 0);
      for (int x : joined.cells[c]) g.values[x] = 1;
      Observable proj = conditional_expectation(ms.star.space, g, joined);
      Observable f = g;
      for (int x = 0; x < f.size(); ++x) f.values[x] -= proj.values[x];
      auto [a, b] = magic_defect(ms, f);
      ok = (a == 0) && (b == 0);
    }
    out["defect"] = ok;
    all_ok = all_ok && ok;
  }
  if (check == "characterization" || check == "all") {
    bool ok = true;
    std::mt19937_64 rng(1);
    for (EpsilonMask eps = 1; eps <= full_mask(ms.cube_dim) && ok; ++eps)
      ok = characterization_check(ms, eps, random_bounded_observable(rng, ms.star.size()));
    out["characterization"] = ok;
    all_ok = all_ok && ok;
  }
  if (check == "factor" || check == "all") {
    bool ok = factor_check(ms);
    out["factor"] = ok;
    all_ok = all_ok && ok;
  }
  out["ok"] = all_ok;
  emit(out, output);
  return all_ok ? 0 : 2;
}

int run_recurrence(const std::string& subset_path, const std::string& c_str,
                   const std::string& output) {
  LatticeSubset subset = load_subset(subset_path);
  auto [sys, indicator] = cyclic_correspondence(subset);
  Rational c = parse_rational(c_str);
  RecurrenceReport rep = recurrence_set(sys, indicator, c);
  auto [limit, bound] = average_recurrence_check(sys, indicator);

  Json out;
  out["density"] = rational_string(upper_density_window(subset));
  out["threshold"] = rational_string(rep.threshold);
  out["period_box"] = rep.period_box;
  Json good = Json::array();
  for (const auto& n : rep.good_set) good.push_back(n);
  out["good_set"] = std::move(good);
  out["syndetic_gap"] = rep.syndetic_gap;
  out["average_limit"] = rational_string(limit);
  out["lower_bound"] = rational_string(bound);
  emit(out, output);
  return 0;
}

struct SuiteFailure {
  std::string statement;
  std::string instance;
};

int run_suite(std::uint64_t seed, int instances, const std::string& output) {
  std::mt19937_64 rng(seed);
  std::vector<SuiteFailure> failures;
  int checks = 0;

  auto fail = [&](const std::string& statement, const std::string& inst) {
    failures.push_back({statement, inst});
  };

  for (int k = 0; k < instances; ++k) {
    auto inst = random_commuting_system(rng, {.max_points = 6, .max_dim = 3});
    const System& sys = inst.system;
    const EpsilonMask full = full_mask(sys.dim());

    std::map<EpsilonMask, Observable> fs;
    for (EpsilonMask eps = 1; eps <= full; ++eps)
      fs[eps] = random_bounded_observable(rng, sys.size());
    Observable f0 = random_bounded_observable(rng, sys.size());
    Observable a = random_indicator(rng, sys.size());

    // Seminorm oracle equivalence, both construction routes.
    std::vector<int> order(sys.dim());
    for (int i = 0; i < sys.dim(); ++i) order[i] = i;
    ++checks;
    if (box_seminorm_direct(sys, f0, order).power_value !=
        box_seminorm_recursive(sys, f0, order).power_value)
      fail("seminorm direct/recursive routes disagree", inst.description);

    // Digit permutation invariance of the seminorm.
    if (sys.dim() >= 2) {
      std::vector<int> perm = order;
      std::swap(perm[0], perm[1]);
      ++checks;
      if (!seminorm_digit_permutation_check(sys, f0, order, perm))
        fail("digit permutation invariance violated", inst.description);
    }

    // Multi-period stability of the limit, plus
    // agreement of the iterated-limit path.
    {
      CubeResult ref = cube_limit(sys, fs);
      bool ok = iterated_limit(sys, fs).values == ref.average.values;
      for (long long mult : {2, 3}) {
        CubeSpec spec;
        spec.system = &sys;
        spec.functions = fs;
        for (int i = 0; i < sys.dim(); ++i)
          spec.box.push_back({0, mult * orbit_order(sys.transforms[i])});
        ok = ok && cube_average(spec).average.values == ref.average.values;
      }
      ++checks;
      if (!ok) fail("multi-period stability of the limit violated", inst.description);
    }

    // Intersection-average lower bound and the seminorm identity.
    {
      Rational limit = integrated_cube_limit(sys, a);
      Rational bound = rational_pow(integrate(sys.space, a), 1u << sys.dim());
      ++checks;
      if (limit < bound) fail("intersection-average lower bound violated", inst.description);
      ++checks;
      if (limit != box_seminorm(sys, a).power_value)
        fail("limit-seminorm identity violated", inst.description);
    }

    // Full-seminorm and rank-restricted upper bounds.
    ++checks;
    if (!upper_bound_check_rank1(sys, fs).holds)
      fail("full-seminorm upper bound violated", inst.description);
    for (int r = 1; r <= sys.dim(); ++r) {
      ++checks;
      if (!upper_bound_check_rankr(sys, fs, r).holds)
        fail("rank-restricted upper bound violated (r=" + std::to_string(r) + ")", inst.description);
    }
  }

  Json out;
  out["seed"] = seed;
  out["instances"] = instances;
  out["checks"] = checks;
  out["failures"] = Json::array();
  for (const auto& f : failures) {
    Json fj;
    fj["statement"] = f.statement;
    fj["instance"] = f.instance;
    out["failures"].push_back(std::move(fj));
  }
  out["ok"] = failures.empty();
  emit(out, output);
  return failures.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cube averages, box seminorms and magic extensions on finite systems"};
  app.require_subcommand(1);

  std::string system_path, function_path, spec_path, subset_path, output, trace_path;
  std::string epsilon_arg, check_arg = "all", c_arg = "0";
  int trace_doublings = 6, instances = 100;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check the axioms of a system config");
  validate->add_option("--system", system_path, "system config (JSON or TOML)")->required();
  validate->add_option("--output", output, "output path, - for stdout");

  auto* seminorm = app.add_subcommand("seminorm", "Box seminorm of a function");
  seminorm->add_option("--system", system_path)->required();
  seminorm->add_option("--function", function_path)->required();
  seminorm->add_option("--epsilon", epsilon_arg, "bit string, e.g. 110; default all");
  seminorm->add_option("--output", output);

  auto* average = app.add_subcommand("average", "Finite cube average over a box");
  average->add_option("--spec", spec_path, "cube spec file")->required();
  average->add_option("--output", output);
  average->add_option("--trace", trace_path, "CSV of L2 deviations for doubling boxes");
  average->add_option("--trace-doublings", trace_doublings);

  auto* limit = app.add_subcommand("limit", "Exact cube-average limit");
  limit->add_option("--spec", spec_path)->required();
  limit->add_option("--output", output);

  auto* magic = app.add_subcommand("magic", "Build and verify the magic extension");
  magic->add_option("--system", system_path)->required();
  magic->add_option("--check", check_arg)
      ->check(CLI::IsMember({"defect", "characterization", "factor", "all"}));
  magic->add_option("--output", output);

  auto* recurrence = app.add_subcommand("recurrence", "Recurrence report for a lattice subset");
  recurrence->add_option("--subset", subset_path)->required();
  recurrence->add_option("--c", c_arg, "slack, a rational like 1/100");
  recurrence->add_option("--output", output);

  auto* suite = app.add_subcommand("suite", "Seeded property suite over random systems");
  suite->add_option("--seed", seed)->required();
  suite->add_option("--instances", instances);
  suite->add_option("--output", output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(system_path, output);
    if (seminorm->parsed()) return run_seminorm(system_path, function_path, epsilon_arg, output);
    if (average->parsed()) return run_average(spec_path, output, trace_path, trace_doublings);
    if (limit->parsed()) return run_limit(spec_path, output);
    if (magic->parsed()) return run_magic(system_path, check_arg, output);
    if (recurrence->parsed()) return run_recurrence(subset_path, c_arg, output);
    if (suite->parsed()) return run_suite(seed, instances, output);
  } catch (const Error& e) {
    Json diag;
    diag["ok"] = false;
    diag["error"]["code"] = errc_name(e.code);
    diag["error"]["message"] = e.what();
    std::cout << diag.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json diag;
    diag["ok"] = false;
    diag["error"]["code"] = "Internal";
    diag["error"]["message"] = e.what();
    std::cout << diag.dump(2) << "\n";
    return 1;
  }
  return 1;
}
