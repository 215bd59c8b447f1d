// dualvc: instance generation, single runs, benchmarks and verification.
//
// Exit codes: 0 success, 1 verification failure (or no MFDS within budget),
// 2 usage error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "dualvc/bench.hpp"
#include "dualvc/dual.hpp"
#include "dualvc/graph_io.hpp"
#include "dualvc/heuristics.hpp"
#include "dualvc/instances.hpp"
#include "dualvc/oracle.hpp"

namespace {

using namespace dualvc;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CellFlags {
  std::string config;
  std::optional<std::string> family;
  std::optional<std::string> variant;
  std::optional<std::string> algo;
  std::optional<std::int64_t> m;
  std::optional<int> n;
  std::optional<std::int64_t> d;
  std::optional<std::int64_t> alpha;
  std::optional<std::int64_t> w_max;
  std::optional<std::int64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;

  void add_to(CLI::App& cmd, bool generation_only) {
    cmd.add_option("--config", config, "JSON file with cell keys (family, variant, m, n, D, alpha, wmax, ...)");
    cmd.add_option("--family", family, "hard | random");
    cmd.add_option("--variant", variant, "E+ | E- | E | W+ | W- | W");
    cmd.add_option("--m", m, "edges (hard: edges of G_s)");
    cmd.add_option("--n", n, "vertices of a random instance (default m)");
    cmd.add_option("--D", d, "edit scale of a random instance");
    cmd.add_option("--alpha", alpha, "step-size rate, integer >= 2");
    cmd.add_option("--wmax", w_max, "weight bound of a random instance");
    cmd.add_option("--seed", seed, "seed");
    if (generation_only) return;
    cmd.add_option("--algo", algo, "ea | rls | ea_fifth | rls_fifth");
    cmd.add_option("--budget", budget, "evaluation budget");
    cmd.add_option("--backend", backend, "exact | float");
  }

  BenchCell resolve(BenchCell cell) const {
    if (!config.empty()) cell = parse_cell_config(read_text(config), cell);
    if (family) cell.family = parse_family(*family);
    if (variant) cell.variant = parse_variant(*variant);
    if (algo) cell.algorithm = parse_algorithm(*algo);
    if (m) cell.m = *m;
    if (n) cell.n = *n;
    if (d) cell.d = *d;
    if (alpha) cell.alpha = *alpha;
    if (w_max) cell.w_max = *w_max;
    if (budget) {
      cell.budget = *budget;
      cell.budget_factor = 0.0;
    }
    if (seed) cell.seed = *seed;
    if (backend) cell.backend = parse_backend(*backend);
    return cell;
  }
};

BenchCell defaults() {
  BenchCell cell;
  cell.budget = kDefaultBudget;
  return cell;
}

struct InstanceFiles {
  std::string instance;
  std::string edit;
  std::string orig;

  explicit InstanceFiles(const std::string& prefix)
      : instance(prefix + ".instance.json"), edit(prefix + ".edit.json"), orig(prefix + ".orig.dual") {}
};

DynamicInstance load_instance(const std::string& prefix) {
  const InstanceFiles files(prefix);
  const WeightedGraph g = read_instance(files.instance);
  const Edit edit = read_edit(files.edit);
  auto y_orig = parse_rational_dump(read_text(files.orig), g);
  return make_dynamic_instance(g, std::move(y_orig), edit, g.w_max());
}

int cmd_gen(const CellFlags& flags, const std::string& out) {
  BenchCell cell = flags.resolve(defaults());
  validate_cell(cell);
  const DynamicInstance inst = build_instance(cell, cell.seed);
  const InstanceFiles files(out);
  write_instance(files.instance, *inst.original);
  write_edit(files.edit, inst.edit);
  write_text(files.orig, rational_dump(*inst.original, inst.y_orig));
  std::cout << "variant " << to_string(inst.variant) << " D " << inst.scale << " m " << inst.updated->m() << " wmax "
            << inst.w_max() << '\n'
            << files.instance << '\n'
            << files.edit << '\n'
            << files.orig << '\n';
  return kOk;
}

template <LpField F>
int solve_with(const DynamicInstance& inst, const F& field, const BenchCell& cell, std::int64_t m_column,
               const std::string& out, const std::string& dump, const std::string& log, bool wall_time) {
  const RunConfig config{cell.algorithm, cell.alpha, cell_budget(cell, inst), cell.seed};
  auto initial = initial_solution(inst, field);

  std::ofstream log_file;
  if (!log.empty()) {
    log_file.open(log, std::ios::trunc);
    if (!log_file) throw std::runtime_error("cannot write " + log);
  }
  const auto start = std::chrono::steady_clock::now();
  RunResult<F> result = log.empty() ? run(std::move(initial), config)
                                    : run(initial, config, RunLogWriter<F>(log_file, initial));
  const auto stop = std::chrono::steady_clock::now();

  bool verified = false;
  if (result.success) {
    if constexpr (std::is_same_v<F, ExactField>) {
      verified = oracle::check_mfds_naive(*inst.updated, result.final_solution.values()).pass();
    } else {
      verified = oracle::check_mfds_tolerant(*inst.updated, result.final_solution.values(), field.tau).pass();
    }
  }

  BenchRecord r;
  r.variant = std::string(to_string(m_column != 0 ? cell.variant : inst.variant));
  r.algorithm = std::string(to_string(cell.algorithm));
  r.m = m_column != 0 ? m_column : static_cast<std::int64_t>(inst.updated->m());
  r.d = inst.scale;
  r.alpha = cell.alpha;
  r.w_max = inst.w_max();
  r.seed = cell.seed;
  r.evaluations = result.evaluations;
  r.success = result.success && verified;
  if (wall_time) r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();

  const std::string text = std::string(kCsvHeader) + "\n" + r.csv_row() + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
  }
  if (!dump.empty()) {
    if constexpr (std::is_same_v<F, ExactField>) {
      write_text(dump, dual_dump(result.final_solution));
    } else {
      throw UsageError("--dump needs the exact backend");
    }
  }
  if (result.success && !verified) {
    std::cerr << "reported MFDS failed oracle re-verification\n";
    return kVerifyFailed;
  }
  if (!result.success) std::cerr << "no MFDS within " << config.budget << " evaluations\n";
  return result.success ? kOk : kVerifyFailed;
}

int cmd_solve(const CellFlags& flags, const std::string& instance_prefix, const std::string& out,
              const std::string& dump, const std::string& log, bool wall_time) {
  BenchCell cell = flags.resolve(defaults());
  DynamicInstance inst;
  std::int64_t m_column = 0;
  if (!instance_prefix.empty()) {
    inst = load_instance(instance_prefix);
  } else {
    validate_cell(cell);
    inst = build_instance(cell, cell.seed);
    m_column = cell.m;
  }
  const Alpha alpha = canonicalize_alpha(cell.alpha);
  if (cell.backend == Backend::kExact) return solve_with(inst, ExactField{alpha}, cell, m_column, out, dump, log, wall_time);
  return solve_with(inst, FloatField{alpha}, cell, m_column, out, dump, log, wall_time);
}

int cmd_bench(const CellFlags& flags, const std::string& out, std::optional<int> threads, bool no_wall_time) {
  if (flags.config.empty()) throw UsageError("bench needs --config");
  BenchPlan plan = parse_bench_plan(read_text(flags.config));
  CellFlags overrides = flags;
  overrides.config.clear();
  for (auto& cell : plan.cells) {
    cell = overrides.resolve(cell);
    validate_cell(cell);
  }
  const int cap = thread_cap_from_env();
  const int wanted = threads.value_or(plan.threads.value_or(cap));
  const TrialOptions options{!no_wall_time};
  if (out.empty()) {
    run_bench(plan, std::cout, std::min(wanted, cap), options);
  } else {
    std::ofstream file(out, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + out);
    run_bench(plan, file, std::min(wanted, cap), options);
  }
  return kOk;
}

// A path to an existing file is a plain instance. Anything else is a gen
// prefix, checked against the edited graph unless `original` is set.
WeightedGraph verify_target(const std::string& instance, bool original) {
  if (std::filesystem::is_regular_file(instance)) return read_instance(instance);
  const InstanceFiles files(instance);
  const WeightedGraph g = read_instance(files.instance);
  if (original) return g;
  return apply_edit(g, read_edit(files.edit)).graph;
}

int cmd_verify(const std::string& instance, const std::string& dual, std::int64_t alpha, bool original) {
  const WeightedGraph g = verify_target(instance, original);
  const auto values = parse_dual_dump(read_text(dual), g, canonicalize_alpha(alpha));
  const auto verdict = oracle::check_mfds_naive(g, values);
  std::cout << "feasible " << (verdict.feasible ? "yes" : "no (infeasible)") << '\n'
            << "maximal " << (verdict.maximal ? "yes" : "no") << '\n'
            << "cover_weight " << verdict.cover_weight << '\n'
            << "two_sum_y " << 2.0 * verdict.dual_total << '\n'
            << "within_factor_two " << (verdict.within_factor_two ? "yes" : "no") << '\n'
            << (verdict.pass() ? "PASS" : "FAIL") << '\n';
  return verdict.pass() ? kOk : kVerifyFailed;
}

int cmd_report(const std::string& csv) {
  const ScalingReport report = scaling_report(read_bench_csv(read_text(csv)));
  std::cout << report.text() << (report.pass() ? "PASS" : "FAIL") << '\n';
  return report.pass() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Step-size-adaptive search for maximal feasible dual-solutions of dynamic weighted vertex cover"};
  app.require_subcommand(1);

  CellFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write <out>.instance.json, <out>.edit.json and <out>.orig.dual");
  gen_flags.add_to(*gen, true);
  gen->add_option("--out", gen_out, "output prefix")->required();

  CellFlags solve_flags;
  std::string solve_instance, solve_out, solve_dump, solve_log;
  bool solve_wall_time = false;
  auto* solve = app.add_subcommand("solve", "run one heuristic on one instance; prints a CSV row");
  solve_flags.add_to(*solve, false);
  solve->add_option("--instance", solve_instance, "prefix of files written by gen");
  solve->add_option("--out", solve_out, "CSV output file (default stdout)");
  solve->add_option("--dump", solve_dump, "write the final dual-solution here");
  solve->add_option("--log", solve_log, "write a per-evaluation run log here");
  solve->add_flag("--wall-time", solve_wall_time, "record wall time (otherwise wall_ms is 0)");

  CellFlags bench_flags;
  std::string bench_out;
  std::optional<int> bench_threads;
  bool bench_no_wall_time = false;
  auto* bench = app.add_subcommand("bench", "run a benchmark plan; CSV rows plus a summary block");
  bench_flags.add_to(*bench, false);
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");
  bench->add_option("--threads", bench_threads, "worker threads (capped by DUALVC_THREADS)")->check(CLI::PositiveNumber);
  bench->add_flag("--no-wall-time", bench_no_wall_time, "write wall_ms as 0 for byte-identical output");

  std::string verify_instance, verify_dual;
  std::int64_t verify_alpha = 2;
  auto* verify = app.add_subcommand("verify", "check a dual-solution dump against an instance");
  bool verify_original = false;
  verify->add_option("--instance", verify_instance, "instance JSON, or a gen prefix (edited graph)")->required();
  verify->add_flag("--original", verify_original, "with a gen prefix, check the unedited graph");
  verify->add_option("--dual", verify_dual, "dual-solution dump")->required();
  verify->add_option("--alpha", verify_alpha, "alpha the dump's coefficients refer to");

  std::string report_csv;
  auto* report = app.add_subcommand("report", "scaling report from a bench CSV");
  report->add_option("--csv", report_csv, "bench CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_flags, gen_out);
    if (*solve) return cmd_solve(solve_flags, solve_instance, solve_out, solve_dump, solve_log, solve_wall_time);
    if (*bench) return cmd_bench(bench_flags, bench_out, bench_threads, bench_no_wall_time);
    if (*verify) return cmd_verify(verify_instance, verify_dual, verify_alpha, verify_original);
    if (*report) return cmd_report(report_csv);
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range, length_error, domain_error: bad input.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e) ||
        dynamic_cast<const std::length_error*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
      std::cerr << "dualvc: " << e.what() << '\n';
      return kUsage;
    }
    std::cerr << "dualvc: verification failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "dualvc: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
