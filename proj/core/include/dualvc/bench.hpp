#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualvc/graph.hpp"
#include "dualvc/heuristics.hpp"
#include "dualvc/instances.hpp"

namespace dualvc {

enum class Backend { kExact, kFloat };
std::string_view to_string(Backend b);
Backend parse_backend(std::string_view text);

enum class Family { kHard, kRandom };
std::string_view to_string(Family f);
Family parse_family(std::string_view text);

/// One benchmark cell: an instance family, an algorithm and a trial count.
/// Trial i uses seed `seed + i` for instance generation and for the run.
struct BenchCell {
  Family family = Family::kHard;
  Variant variant = Variant::kEdgePlus;
  Algorithm algorithm = Algorithm::kRls;
  std::int64_t m = 10;
  int n = 0;               ///< random family only; 0 means n = m
  std::int64_t d = 1;      ///< random family only; hard instances fix D themselves
  std::int64_t alpha = 2;
  std::int64_t w_max = 0;  ///< random family only; hard instances use alpha^m
  int trials = 1;
  std::int64_t budget = 0;         ///< absolute evaluation budget, or
  double budget_factor = 0.0;      ///< budget = ceil(factor * budget shape)
  std::uint64_t seed = 0;
  Backend backend = Backend::kExact;
};

inline constexpr std::int64_t kDefaultBudget = 1'000'000;

struct BenchPlan {
  std::vector<BenchCell> cells;
  std::optional<int> threads;
};

/// Parses a plan. Every cell field may be a scalar or a list; lists expand
/// to their cartesian product in key order. Cells with neither budget nor
/// budget_factor get kDefaultBudget. Throws std::invalid_argument.
BenchPlan parse_bench_plan(std::string_view json_text);

/// Reads one cell from a JSON object of scalar cell keys, on top of
/// `defaults`. No validation beyond value types.
BenchCell parse_cell_config(std::string_view json_text, BenchCell defaults = {});

void validate_cell(const BenchCell& cell);

struct BenchRecord {
  std::string variant;
  std::string algorithm;
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::int64_t alpha = 0;
  std::int64_t w_max = 0;
  std::uint64_t seed = 0;
  std::int64_t evaluations = 0;
  bool success = false;
  double wall_ms = 0.0;

  [[nodiscard]] std::string csv_row() const;
};

inline constexpr std::string_view kCsvHeader = "variant,algorithm,m,D,alpha,wmax,seed,evaluations,success,wall_ms";

std::vector<BenchRecord> read_bench_csv(std::string_view text);

/// alpha * m * log_alpha(W_max) * ln(max{alpha*m, alpha*D*W_max})
double table_bound(std::int64_t alpha, std::int64_t m, std::int64_t d, std::int64_t w_max);
/// alpha * m * log_alpha(W_max) * ln(alpha * m * log_alpha(W_max))
double hard_budget_shape(std::int64_t alpha, std::int64_t m, std::int64_t w_max);

DynamicInstance build_instance(const BenchCell& cell, std::uint64_t seed);
std::int64_t cell_budget(const BenchCell& cell, const DynamicInstance& inst);

struct TrialOptions {
  bool wall_time = true;
};

/// Runs one trial. A successful run is re-verified by the oracle before the
/// record is returned; a failed re-verification throws std::logic_error.
BenchRecord run_trial(const BenchCell& cell, int trial, const TrialOptions& options = {});

/// Concurrency cap: DUALVC_THREADS if set (must be a positive integer),
/// else the hardware concurrency.
int thread_cap_from_env();

/// Runs every trial of the plan on up to `threads` workers. Rows go to
/// `csv` in plan order as soon as their predecessors are done, then a
/// summary block of '#' comment lines is appended.
std::vector<BenchRecord> run_bench(const BenchPlan& plan, std::ostream& csv, int threads,
                                   const TrialOptions& options = {});

struct ScalingGroup {
  std::string variant;
  std::string algorithm;
  std::int64_t d = 0;
  std::int64_t alpha = 0;
  std::vector<std::int64_t> ms;
  std::vector<std::int64_t> w_maxes;
  std::vector<double> medians;  ///< over trials with at least one evaluation
  std::vector<double> means;
  std::vector<double> success_rates;
  std::vector<double> ratios;  ///< median / bound shape
  std::vector<double> zero_fractions;  ///< trials whose start was already an MFDS
  std::vector<std::int64_t> untouched;  ///< m values where every trial started at an MFDS
  double fitted_constant = 0.0;  ///< least-squares c in median ~ c * bound
  double spread = 0.0;           ///< max ratio / min ratio
  bool monotone_growth = false;  ///< ratio strictly increasing across all m
  bool enough_data = false;      ///< at least three distinct m

  [[nodiscard]] bool pass() const { return enough_data && spread <= 4.0; }
};

struct ScalingReport {
  std::vector<ScalingGroup> groups;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::string text() const;
};

/// Groups rows by (variant, algorithm, D, alpha) and compares the median
/// evaluations per m with table_bound. Trials with zero evaluations (the
/// edit kept the old solution maximal) are counted in zero_fractions but
/// left out of the medians. Throws std::invalid_argument when no group
/// spans three values of m.
ScalingReport scaling_report(const std::vector<BenchRecord>& records);

}  // namespace dualvc
