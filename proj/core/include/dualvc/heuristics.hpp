#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "dualvc/dual.hpp"
#include "dualvc/rng.hpp"

namespace dualvc {

/// The four step-size-adaptive search heuristics.
///
///   kEa        (1+1) EA: each edge mutated with probability 1/m, direction s(Y)
///   kRls       RLS: one uniformly chosen edge, direction s(Y)
///   kEaFifth   (1+1) EA with 1/5-th rule: direction is a fair coin
///   kRlsFifth  RLS with 1/5-th rule: direction is a fair coin
enum class Algorithm { kEa, kRls, kEaFifth, kRlsFifth };

std::string_view to_string(Algorithm a);
/// Accepts ea, rls, ea_fifth, rls_fifth (case-insensitive).
Algorithm parse_algorithm(std::string_view text);

inline bool uses_fifth_rule(Algorithm a) { return a == Algorithm::kEaFifth || a == Algorithm::kRlsFifth; }
inline bool mutates_many(Algorithm a) { return a == Algorithm::kEa || a == Algorithm::kEaFifth; }

/// Per-edge step sizes sigma(e) = alpha^(q(e)/4), stored as the quarter
/// exponent q(e) in [0, q_max], with a table of the materialized values.
template <LpField F>
class StepState {
 public:
  using Value = typename F::Value;

  StepState(std::size_t m, const F& field, std::int64_t w_max)
      : q_(m, 0), q_max_(max_step_exponent(field.alpha.value, w_max)) {
    table_.reserve(static_cast<std::size_t>(q_max_) + 1);
    for (int q = 0; q <= q_max_; ++q) table_.push_back(field.step(q, q_max_));
  }

  [[nodiscard]] int q(std::size_t pos) const { return q_[pos]; }
  [[nodiscard]] int q_max() const { return q_max_; }
  [[nodiscard]] const std::vector<int>& exponents() const { return q_; }
  [[nodiscard]] const Value& sigma(std::size_t pos) const { return table_[static_cast<std::size_t>(q_[pos])]; }

  /// sigma := min(alpha * sigma, alpha^(ceil(log_alpha W_max) + 1))
  void promote(std::size_t pos) { q_[pos] = std::min(q_[pos] + 4, q_max_); }
  /// sigma := max(sigma / alpha, 1)
  void demote_full(std::size_t pos) { q_[pos] = std::max(q_[pos] - 4, 0); }
  /// sigma := max(alpha^(-1/4) * sigma, 1)
  void demote_quarter(std::size_t pos) { q_[pos] = std::max(q_[pos] - 1, 0); }

  [[nodiscard]] int min_exponent() const { return q_.empty() ? 0 : *std::min_element(q_.begin(), q_.end()); }
  [[nodiscard]] int max_exponent() const { return q_.empty() ? 0 : *std::max_element(q_.begin(), q_.end()); }

 private:
  std::vector<int> q_;
  int q_max_;
  std::vector<Value> table_;
};

template <LpField F>
struct EdgeChange {
  std::size_t pos = 0;
  typename F::Value old_value;
  typename F::Value new_value;
};

/// One mutation: the selected edge set I with old and proposed values
/// (proposed = max(old + direction * sigma, 0)), and after selection the
/// verdict and the edges whose step size was demoted.
template <LpField F>
struct MutationRecord {
  std::vector<EdgeChange<F>> changes;
  int direction = 1;
  bool accepted = false;
  std::vector<std::size_t> demoted;

  [[nodiscard]] std::size_t size() const { return changes.size(); }
  void clear() {
    changes.clear();
    demoted.clear();
    accepted = false;
  }
};

namespace detail {

template <LpField F>
void add_change(const DualSolution<F>& y, const StepState<F>& steps, std::size_t pos, int direction,
                MutationRecord<F>& out) {
  const auto& old = y.y(pos);
  typename F::Value proposed = old;
  if (direction > 0) {
    proposed += steps.sigma(pos);
  } else {
    proposed -= steps.sigma(pos);
    if (y.field().sign(proposed) < 0) proposed = y.field().zero();
  }
  out.changes.push_back({pos, old, std::move(proposed)});
}

// Each edge independently with probability 1/m, by geometric gap sampling.
template <LpField F>
void select_each(const DualSolution<F>& y, const StepState<F>& steps, Rng& rng, int direction,
                 MutationRecord<F>& out) {
  const std::size_t m = y.m();
  const double p = 1.0 / static_cast<double>(m);
  std::uint64_t pos = rng.geometric_gap(p);
  while (pos < m) {
    add_change(y, steps, static_cast<std::size_t>(pos), direction, out);
    const std::uint64_t gap = rng.geometric_gap(p);
    if (gap >= m) break;
    pos += 1 + gap;
  }
}

template <LpField F>
void require_edges(const DualSolution<F>& y) {
  if (y.m() == 0) throw std::invalid_argument("mutation needs at least one edge");
}

}  // namespace detail

/// Fills `out` with a fresh proposal of the given algorithm.
template <LpField F>
void propose_into(Algorithm algorithm, const DualSolution<F>& y, const StepState<F>& steps, Rng& rng,
                  MutationRecord<F>& out) {
  detail::require_edges(y);
  out.clear();
  switch (algorithm) {
    case Algorithm::kEa:
      out.direction = y.sign();
      detail::select_each(y, steps, rng, out.direction, out);
      break;
    case Algorithm::kRls: {
      out.direction = y.sign();
      detail::add_change(y, steps, static_cast<std::size_t>(rng.below(y.m())), out.direction, out);
      break;
    }
    case Algorithm::kEaFifth:
      out.direction = rng.coin() ? 1 : -1;
      detail::select_each(y, steps, rng, out.direction, out);
      break;
    case Algorithm::kRlsFifth: {
      const auto pos = static_cast<std::size_t>(rng.below(y.m()));
      out.direction = rng.coin() ? 1 : -1;
      detail::add_change(y, steps, pos, out.direction, out);
      break;
    }
  }
}

template <LpField F>
MutationRecord<F> propose_ea(const DualSolution<F>& y, const StepState<F>& steps, Rng& rng) {
  MutationRecord<F> out;
  propose_into(Algorithm::kEa, y, steps, rng, out);
  return out;
}

template <LpField F>
MutationRecord<F> propose_rls(const DualSolution<F>& y, const StepState<F>& steps, Rng& rng) {
  MutationRecord<F> out;
  propose_into(Algorithm::kRls, y, steps, rng, out);
  return out;
}

template <LpField F>
MutationRecord<F> propose_ea_fifth(const DualSolution<F>& y, const StepState<F>& steps, Rng& rng) {
  MutationRecord<F> out;
  propose_into(Algorithm::kEaFifth, y, steps, rng, out);
  return out;
}

template <LpField F>
MutationRecord<F> propose_rls_fifth(const DualSolution<F>& y, const StepState<F>& steps, Rng& rng) {
  MutationRecord<F> out;
  propose_into(Algorithm::kRlsFifth, y, steps, rng, out);
  return out;
}

/// I': edges of I with an endpoint that violates its constraint under
/// `mutated` (Y'), such that no other edge of I is incident to any violating
/// endpoint of theirs. Returned in the order of I.
template <LpField F>
std::vector<std::size_t> compute_i_prime(const DualSolution<F>& mutated, const MutationRecord<F>& record) {
  std::vector<std::size_t> out;
  const WeightedGraph& g = mutated.graph();
  for (const auto& change : record.changes) {
    const Edge& e = g.edge(change.pos);
    bool any_violating = false;
    bool shared = false;
    for (const Vertex x : {e.u, e.v}) {
      if (!mutated.violates(x)) continue;
      any_violating = true;
      for (const auto& other : record.changes) {
        if (other.pos != change.pos && g.edge(other.pos).touches(x)) shared = true;
      }
    }
    if (any_violating && !shared) out.push_back(change.pos);
  }
  return out;
}

/// Evaluates f(Y', Y) for the proposal (one fitness evaluation), commits it
/// to `y` if accepted, and adapts the step sizes:
///   accepted          q += 4 (capped) for every e in I
///   EA rejected       q -= 4 (floored) for e in I', only when s(Y) > 0
///   RLS rejected      q -= 4 (floored) for the chosen edge, only when s(Y) > 0
///   1/5-th rejected   q -= 1 (floored) for every e in I
/// `record.accepted` and `record.demoted` are filled in.
template <LpField F>
FitnessOutcome<F> select_and_adapt(Algorithm algorithm, DualSolution<F>& y, StepState<F>& steps,
                                   MutationRecord<F>& record) {
  const F& field = y.field();
  const int sign_before = y.sign();

  // Membership in E_G(Y) must be read before Y' is applied.
  thread_local std::vector<char> in_violating;
  in_violating.clear();
  for (const auto& c : record.changes) in_violating.push_back(static_cast<char>(y.edge_violating(c.pos)));

  for (const auto& c : record.changes) y.set(c.pos, c.new_value);

  typename F::Value value = field.zero();
  if (sign_before > 0) {
    for (const auto& c : record.changes) {
      value += c.new_value;
      value -= c.old_value;
    }
    if (y.sign() < 0) value = -value;
  } else {
    typename F::Value disturbed = field.zero();
    for (std::size_t i = 0; i < record.changes.size(); ++i) {
      const auto& c = record.changes[i];
      if (in_violating[i] != 0) {
        value += c.old_value;
        value -= c.new_value;
      } else {
        typename F::Value diff = c.old_value - c.new_value;
        disturbed += field.sign(diff) < 0 ? -diff : diff;
      }
    }
    if (field.sign(disturbed) != 0) {
      const Rational penalty = Rational(static_cast<std::int64_t>(y.m())) * Rational(y.graph().w_max());
      value -= field.scale(disturbed, penalty);
    }
  }
  const bool accept = field.sign(value) >= 0;
  record.accepted = accept;

  if (accept) {
    for (const auto& c : record.changes) steps.promote(c.pos);
    return {std::move(value), true};
  }

  switch (algorithm) {
    case Algorithm::kEa:
      if (sign_before > 0) record.demoted = compute_i_prime(y, record);
      for (const std::size_t pos : record.demoted) steps.demote_full(pos);
      break;
    case Algorithm::kRls:
      if (sign_before > 0) {
        for (const auto& c : record.changes) {
          record.demoted.push_back(c.pos);
          steps.demote_full(c.pos);
        }
      }
      break;
    case Algorithm::kEaFifth:
    case Algorithm::kRlsFifth:
      for (const auto& c : record.changes) {
        record.demoted.push_back(c.pos);
        steps.demote_quarter(c.pos);
      }
      break;
  }
  for (auto it = record.changes.rbegin(); it != record.changes.rend(); ++it) y.set(it->pos, it->old_value);
  return {std::move(value), false};
}

struct RunConfig {
  Algorithm algorithm = Algorithm::kRls;
  std::int64_t alpha = 2;
  std::int64_t budget = 1'000'000;  ///< maximum number of fitness evaluations
  std::uint64_t seed = 0;
  std::int64_t checkpoint_every = 1024;
};

struct Checkpoint {
  std::int64_t evaluations = 0;
  double dual_total = 0.0;
  std::size_t violating = 0;
  int min_exponent = 0;
  int max_exponent = 0;
};

template <LpField F>
struct RunResult {
  std::int64_t evaluations = 0;
  std::int64_t accepted = 0;
  bool success = false;
  DualSolution<F> final_solution;
  std::vector<Checkpoint> trajectory;
};

/// Observer with no-op hooks; `before` sees Y and the fresh proposal, `after`
/// sees the state after selection.
struct NullObserver {
  template <class Y, class R>
  void before(const Y&, const R&) {}
  template <class Y, class R, class O>
  void after(const Y&, const R&, const O&) {}
};

void validate_run_config(const RunConfig& config, std::int64_t w_max);

/// Runs the configured heuristic from `initial` until an MFDS is reached or
/// the evaluation budget is spent. MFDS detection happens once up front and
/// after every accepted transition and is not counted as an evaluation.
/// Deterministic for a fixed (initial, config).
template <LpField F, class Observer = NullObserver>
RunResult<F> run(DualSolution<F> initial, const RunConfig& config, Observer&& observer = {}) {
  const WeightedGraph& g = initial.graph();
  validate_run_config(config, g.w_max());
  if (initial.field().alpha.value != config.alpha) {
    throw std::invalid_argument("solution field and run configuration disagree on alpha");
  }
  StepState<F> steps(initial.m(), initial.field(), g.w_max());
  Rng rng(config.seed);
  RunResult<F> result{0, 0, initial.is_mfds(), std::move(initial), {}};
  DualSolution<F>& y = result.final_solution;

  auto checkpoint = [&] {
    result.trajectory.push_back(
        {result.evaluations, y.total_approx(), y.violating_count(), steps.min_exponent(), steps.max_exponent()});
  };
  checkpoint();

  MutationRecord<F> record;
  while (!result.success && result.evaluations < config.budget) {
    propose_into(config.algorithm, y, steps, rng, record);
    observer.before(std::as_const(y), std::as_const(record));
    const FitnessOutcome<F> outcome = select_and_adapt(config.algorithm, y, steps, record);
    ++result.evaluations;
    observer.after(std::as_const(y), std::as_const(record), outcome);
    if (outcome.accept) {
      ++result.accepted;
      result.success = y.is_mfds();
    }
    if (result.evaluations % config.checkpoint_every == 0) checkpoint();
  }
  if (result.trajectory.back().evaluations != result.evaluations) checkpoint();
  return result;
}

/// Observer that writes one CSV line per evaluation:
/// evaluation,accepted,selected,direction,sign,dual_total
template <LpField F>
class RunLogWriter {
 public:
  RunLogWriter(std::ostream& out, const DualSolution<F>& initial) : out_(out), total_(initial.total_approx()) {
    out_ << "evaluation,accepted,selected,direction,sign,dual_total\n";
  }

  void before(const DualSolution<F>&, const MutationRecord<F>&) {}

  void after(const DualSolution<F>& y, const MutationRecord<F>& record, const FitnessOutcome<F>&) {
    ++evaluation_;
    if (record.accepted) {
      for (const auto& c : record.changes) total_ += F::approx(c.new_value) - F::approx(c.old_value);
    }
    out_ << evaluation_ << ',' << (record.accepted ? 1 : 0) << ',' << record.size() << ',' << record.direction << ','
         << y.sign() << ',' << total_ << '\n';
  }

 private:
  std::ostream& out_;
  std::int64_t evaluation_ = 0;
  double total_ = 0.0;
};

}  // namespace dualvc
