#include "dualvc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "dualvc/oracle.hpp"

namespace dualvc {
namespace {

using json = nlohmann::json;

// Plan keys, in the order lists are expanded (first key varies slowest).
constexpr std::string_view kCellKeys[] = {"family", "variant", "algorithm", "m",      "n",             "D",
                                          "alpha",  "wmax",    "trials",    "budget", "budget_factor", "seed",
                                          "backend"};

template <class T>
T get_as(const json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("bad value for \"" + std::string(key) + "\"");
  }
}

void set_field(BenchCell& cell, std::string_view key, const json& v) {
  if (key == "family") cell.family = parse_family(get_as<std::string>(v, key));
  else if (key == "variant") cell.variant = parse_variant(get_as<std::string>(v, key));
  else if (key == "algorithm") cell.algorithm = parse_algorithm(get_as<std::string>(v, key));
  else if (key == "m") cell.m = get_as<std::int64_t>(v, key);
  else if (key == "n") cell.n = get_as<int>(v, key);
  else if (key == "D") cell.d = get_as<std::int64_t>(v, key);
  else if (key == "alpha") cell.alpha = get_as<std::int64_t>(v, key);
  else if (key == "wmax") cell.w_max = get_as<std::int64_t>(v, key);
  else if (key == "trials") cell.trials = get_as<int>(v, key);
  else if (key == "budget") cell.budget = get_as<std::int64_t>(v, key);
  else if (key == "budget_factor") cell.budget_factor = get_as<double>(v, key);
  else if (key == "seed") cell.seed = get_as<std::uint64_t>(v, key);
  else if (key == "backend") cell.backend = parse_backend(get_as<std::string>(v, key));
}

}  // namespace

void validate_cell(const BenchCell& cell) {
  if (cell.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cell.budget < 0 || cell.budget_factor < 0) throw std::invalid_argument("budget must be positive");
  if (cell.budget == 0 && cell.budget_factor == 0.0) throw std::invalid_argument("cell needs a budget or budget_factor");
  if (cell.m < 1) throw std::invalid_argument("m must be positive");
  canonicalize_alpha(cell.alpha);
  if (cell.family == Family::kRandom) {
    if (cell.w_max < 1) throw std::invalid_argument("random cells need wmax >= 1");
    if (cell.d < 1) throw std::invalid_argument("D must be at least 1");
  }
}

namespace {

void check_keys(const json& entry) {
  if (!entry.is_object()) throw std::invalid_argument("each cell must be a JSON object");
  for (const auto& [key, value] : entry.items()) {
    if (std::find(std::begin(kCellKeys), std::end(kCellKeys), key) == std::end(kCellKeys)) {
      throw std::invalid_argument("unknown cell key \"" + key + "\"");
    }
  }
}

json parse_plan_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
}

void expand(const json& entry, BenchPlan& plan) {
  check_keys(entry);
  std::vector<std::pair<std::string_view, std::vector<json>>> axes;
  for (const auto key : kCellKeys) {
    const auto it = entry.find(std::string(key));
    if (it == entry.end()) continue;
    std::vector<json> values;
    if (it->is_array()) {
      values.assign(it->begin(), it->end());
      if (values.empty()) throw std::invalid_argument("empty list for \"" + std::string(key) + "\"");
    } else {
      values.push_back(*it);
    }
    axes.emplace_back(key, std::move(values));
  }
  std::vector<std::size_t> index(axes.size(), 0);
  while (true) {
    BenchCell cell;
    for (std::size_t a = 0; a < axes.size(); ++a) set_field(cell, axes[a].first, axes[a].second[index[a]]);
    // Same default as `dualvc solve`.
    if (cell.budget == 0 && cell.budget_factor == 0.0) cell.budget = kDefaultBudget;
    validate_cell(cell);
    plan.cells.push_back(cell);
    std::size_t a = axes.size();
    while (a > 0 && ++index[a - 1] == axes[a - 1].second.size()) index[--a] = 0;
    if (a == 0) break;
  }
}

double log_base(std::int64_t alpha, std::int64_t x) {
  return std::max(1.0, std::log(static_cast<double>(x)) / std::log(static_cast<double>(alpha)));
}

template <LpField F>
std::pair<std::int64_t, bool> run_and_verify(const DynamicInstance& inst, const F& field, const RunConfig& config) {
  const auto result = run(initial_solution(inst, field), config);
  if (result.success) {
    const auto& y = result.final_solution;
    bool ok = false;
    if constexpr (std::is_same_v<F, ExactField>) {
      ok = oracle::check_mfds_naive(*inst.updated, y.values()).pass() && extract_cover(y).ok();
    } else {
      ok = oracle::check_mfds_tolerant(*inst.updated, y.values(), field.tau).pass();
    }
    if (!ok) throw std::logic_error("reported MFDS failed oracle re-verification");
  }
  return {result.evaluations, result.success};
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

template <class T>
T parse_number(std::string_view field, std::string_view name) {
  T out{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("bad " + std::string(name) + " field \"" + std::string(field) + "\"");
  }
  return out;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::kExact ? "exact" : "float"; }

Backend parse_backend(std::string_view text) {
  if (text == "exact") return Backend::kExact;
  if (text == "float") return Backend::kFloat;
  throw std::invalid_argument("backend must be \"exact\" or \"float\"");
}

std::string_view to_string(Family f) { return f == Family::kHard ? "hard" : "random"; }

Family parse_family(std::string_view text) {
  if (text == "hard") return Family::kHard;
  if (text == "random") return Family::kRandom;
  throw std::invalid_argument("family must be \"hard\" or \"random\"");
}

BenchPlan parse_bench_plan(std::string_view json_text) {
  const json j = parse_plan_json(json_text);
  BenchPlan plan;
  const json* cells = &j;
  if (j.is_object() && j.contains("cells")) {
    for (const auto& [key, value] : j.items()) {
      if (key != "cells" && key != "threads") throw std::invalid_argument("unknown plan key \"" + key + "\"");
    }
    if (j.contains("threads")) {
      plan.threads = get_as<int>(j.at("threads"), "threads");
      if (*plan.threads < 1) throw std::invalid_argument("threads must be positive");
    }
    cells = &j.at("cells");
  }
  if (cells->is_array()) {
    for (const auto& entry : *cells) expand(entry, plan);
  } else {
    expand(*cells, plan);
  }
  if (plan.cells.empty()) throw std::invalid_argument("plan has no cells");
  return plan;
}

BenchCell parse_cell_config(std::string_view json_text, BenchCell defaults) {
  const json j = parse_plan_json(json_text);
  check_keys(j);
  for (const auto key : kCellKeys) {
    const auto it = j.find(std::string(key));
    if (it == j.end()) continue;
    if (it->is_array()) throw std::invalid_argument("\"" + std::string(key) + "\" must be a single value here");
    set_field(defaults, key, *it);
  }
  return defaults;
}

std::string BenchRecord::csv_row() const {
  std::ostringstream out;
  out << variant << ',' << algorithm << ',' << m << ',' << d << ',' << alpha << ',' << w_max << ',' << seed << ','
      << evaluations << ',' << (success ? 1 : 0) << ',' << fixed(wall_ms, 3);
  return out.str();
}

std::vector<BenchRecord> read_bench_csv(std::string_view text) {
  std::vector<BenchRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw std::invalid_argument("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 10) throw std::invalid_argument("CSV row needs 10 fields: " + line);
    BenchRecord r;
    r.variant = std::string(f[0]);
    r.algorithm = std::string(f[1]);
    r.m = parse_number<std::int64_t>(f[2], "m");
    r.d = parse_number<std::int64_t>(f[3], "D");
    r.alpha = parse_number<std::int64_t>(f[4], "alpha");
    r.w_max = parse_number<std::int64_t>(f[5], "wmax");
    r.seed = parse_number<std::uint64_t>(f[6], "seed");
    r.evaluations = parse_number<std::int64_t>(f[7], "evaluations");
    r.success = parse_number<int>(f[8], "success") != 0;
    r.wall_ms = std::strtod(std::string(f[9]).c_str(), nullptr);
    out.push_back(std::move(r));
  }
  if (!header_seen) throw std::invalid_argument("CSV has no header");
  return out;
}

double table_bound(std::int64_t alpha, std::int64_t m, std::int64_t d, std::int64_t w_max) {
  const double a = static_cast<double>(alpha);
  const double am = a * static_cast<double>(m);
  const double adw = a * static_cast<double>(d) * static_cast<double>(w_max);
  return am * log_base(alpha, w_max) * std::log(std::max(am, adw));
}

double hard_budget_shape(std::int64_t alpha, std::int64_t m, std::int64_t w_max) {
  const double core = static_cast<double>(alpha) * static_cast<double>(m) * log_base(alpha, w_max);
  return core * std::log(core);
}

DynamicInstance build_instance(const BenchCell& cell, std::uint64_t seed) {
  if (cell.family == Family::kHard) return hard_instance(cell.variant, static_cast<int>(cell.m), cell.alpha);
  const int n = cell.n > 0 ? cell.n : static_cast<int>(cell.m);
  return random_dynamic_instance(n, cell.m, cell.w_max, cell.variant, cell.d, seed);
}

std::int64_t cell_budget(const BenchCell& cell, const DynamicInstance& inst) {
  if (cell.budget > 0) return cell.budget;
  const double shape = cell.family == Family::kHard ? hard_budget_shape(cell.alpha, cell.m, inst.w_max())
                                                    : table_bound(cell.alpha, cell.m, inst.scale, inst.w_max());
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(cell.budget_factor * shape)));
}

BenchRecord run_trial(const BenchCell& cell, int trial, const TrialOptions& options) {
  const std::uint64_t seed = cell.seed + static_cast<std::uint64_t>(trial);
  const DynamicInstance inst = build_instance(cell, seed);
  const RunConfig config{cell.algorithm, cell.alpha, cell_budget(cell, inst), seed};
  const Alpha alpha = canonicalize_alpha(cell.alpha);

  const auto start = std::chrono::steady_clock::now();
  const auto [evaluations, success] = cell.backend == Backend::kExact
                                          ? run_and_verify(inst, ExactField{alpha}, config)
                                          : run_and_verify(inst, FloatField{alpha}, config);
  const auto stop = std::chrono::steady_clock::now();

  BenchRecord r;
  r.variant = std::string(to_string(cell.variant));
  r.algorithm = std::string(to_string(cell.algorithm));
  r.m = cell.m;
  r.d = inst.scale;
  r.alpha = cell.alpha;
  r.w_max = inst.w_max();
  r.seed = seed;
  r.evaluations = evaluations;
  r.success = success;
  if (options.wall_time) r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

int thread_cap_from_env() {
  if (const char* env = std::getenv("DUALVC_THREADS"); env != nullptr && *env != '\0') {
    int value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
      throw std::invalid_argument("DUALVC_THREADS must be a positive integer");
    }
    return value;
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

std::vector<BenchRecord> run_bench(const BenchPlan& plan, std::ostream& csv, int threads,
                                   const TrialOptions& options) {
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    for (int t = 0; t < plan.cells[c].trials; ++t) tasks.emplace_back(c, t);
  }
  std::vector<std::optional<BenchRecord>> slots(tasks.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next_task{0};
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      {
        std::lock_guard lock(mutex);
        if (failure) return;
      }
      try {
        BenchRecord r = run_trial(plan.cells[tasks[i].first], tasks[i].second, options);
        std::lock_guard lock(mutex);
        slots[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
      }
      ready.notify_all();
    }
  };

  csv << kCsvHeader << '\n' << std::flush;
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);

  std::vector<BenchRecord> records;
  records.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return slots[i].has_value() || failure; });
    if (failure) break;
    records.push_back(std::move(*slots[i]));
    lock.unlock();
    csv << records.back().csv_row() << '\n' << std::flush;
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  csv << "# summary: variant,algorithm,m,D,alpha,wmax,trials,success_rate,median_evaluations,mean_evaluations\n";
  std::size_t first = 0;
  for (const BenchCell& cell : plan.cells) {
    std::vector<double> evals;
    int successes = 0;
    for (int t = 0; t < cell.trials; ++t) {
      evals.push_back(static_cast<double>(records[first + static_cast<std::size_t>(t)].evaluations));
      successes += records[first + static_cast<std::size_t>(t)].success ? 1 : 0;
    }
    const BenchRecord& head = records[first];
    csv << "# " << head.variant << ',' << head.algorithm << ',' << head.m << ',' << head.d << ',' << head.alpha << ','
        << head.w_max << ',' << cell.trials << ',' << fixed(static_cast<double>(successes) / cell.trials, 3) << ','
        << fixed(median_of(evals), 1) << ',' << fixed(mean_of(evals), 1) << '\n';
    first += static_cast<std::size_t>(cell.trials);
  }
  csv << std::flush;
  return records;
}

bool ScalingReport::pass() const {
  bool any = false;
  for (const auto& g : groups) {
    if (!g.enough_data) continue;
    any = true;
    if (!g.pass()) return false;
  }
  return any;
}

std::string ScalingReport::text() const {
  std::ostringstream out;
  for (const auto& g : groups) {
    out << g.variant << ' ' << g.algorithm << " D=" << g.d << " alpha=" << g.alpha;
    if (!g.enough_data) {
      out << ": skipped, fewer than three values of m with repaired trials\n";
      continue;
    }
    out << ": c=" << fixed(g.fitted_constant, 4) << " spread=" << fixed(g.spread, 3)
        << (g.monotone_growth ? " monotone-growth" : "") << (g.pass() ? " PASS" : " FAIL") << '\n';
    for (std::size_t i = 0; i < g.ms.size(); ++i) {
      out << "  m=" << g.ms[i] << " wmax=" << g.w_maxes[i] << " median=" << fixed(g.medians[i], 1)
          << " mean=" << fixed(g.means[i], 1) << " success=" << fixed(g.success_rates[i], 3)
          << " ratio=" << fixed(g.ratios[i], 5) << " untouched=" << fixed(g.zero_fractions[i], 3) << '\n';
    }
    for (const auto m : g.untouched) out << "  m=" << m << " no trial needed a repair\n";
  }
  return out.str();
}

ScalingReport scaling_report(const std::vector<BenchRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::int64_t, std::int64_t>;
  std::map<Key, std::map<std::int64_t, std::vector<const BenchRecord*>>> grouped;
  for (const auto& r : records) grouped[{r.variant, r.algorithm, r.d, r.alpha}][r.m].push_back(&r);

  ScalingReport report;
  bool any = false;
  for (const auto& [key, by_m] : grouped) {
    ScalingGroup g;
    std::tie(g.variant, g.algorithm, g.d, g.alpha) = key;
    for (const auto& [m, rows] : by_m) {
      const std::int64_t w = rows.front()->w_max;
      std::vector<double> evals;
      int successes = 0;
      for (const auto* r : rows) {
        if (r->w_max != w) throw std::invalid_argument("rows with equal m disagree on wmax");
        // A trial whose edit left the old solution maximal says nothing about repair cost.
        if (r->evaluations > 0) evals.push_back(static_cast<double>(r->evaluations));
        successes += r->success ? 1 : 0;
      }
      const double zero_fraction = 1.0 - static_cast<double>(evals.size()) / static_cast<double>(rows.size());
      if (evals.empty()) {
        g.untouched.push_back(m);
        continue;
      }
      g.ms.push_back(m);
      g.zero_fractions.push_back(zero_fraction);
      g.w_maxes.push_back(w);
      g.medians.push_back(median_of(evals));
      g.means.push_back(mean_of(evals));
      g.success_rates.push_back(static_cast<double>(successes) / static_cast<double>(rows.size()));
      g.ratios.push_back(g.medians.back() / table_bound(g.alpha, m, g.d, w));
    }
    g.enough_data = g.ms.size() >= 3;
    if (g.enough_data) {
      any = true;
      double num = 0.0;
      double den = 0.0;
      for (std::size_t i = 0; i < g.ms.size(); ++i) {
        const double b = table_bound(g.alpha, g.ms[i], g.d, g.w_maxes[i]);
        num += g.medians[i] * b;
        den += b * b;
      }
      g.fitted_constant = num / den;
      const auto [lo, hi] = std::minmax_element(g.ratios.begin(), g.ratios.end());
      g.spread = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
      g.monotone_growth = std::adjacent_find(g.ratios.begin(), g.ratios.end(), std::greater_equal<>()) == g.ratios.end();
    }
    report.groups.push_back(std::move(g));
  }
  if (!any) throw std::invalid_argument("insufficient data: no group spans three values of m");
  return report;
}

}  // namespace dualvc
