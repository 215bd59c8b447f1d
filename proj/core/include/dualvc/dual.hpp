#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualvc/field.hpp"
#include "dualvc/graph.hpp"

namespace dualvc {

/// Position of a vertex's load relative to its weight.
enum class VertexState : std::int8_t { kSlack, kTight, kViolated };

/// An assignment of non-negative LP values to the edges of a graph, with the
/// per-vertex loads and the derived feasibility/tightness bookkeeping kept up
/// to date under point updates.
template <LpField F>
class DualSolution {
 public:
  using Value = typename F::Value;

  DualSolution(std::shared_ptr<const WeightedGraph> graph, F field);
  DualSolution(std::shared_ptr<const WeightedGraph> graph, F field, std::vector<Value> values);

  [[nodiscard]] const WeightedGraph& graph() const { return *graph_; }
  [[nodiscard]] const std::shared_ptr<const WeightedGraph>& graph_ptr() const { return graph_; }
  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] std::size_t m() const { return y_.size(); }

  [[nodiscard]] const Value& y(std::size_t pos) const { return y_[pos]; }
  [[nodiscard]] std::span<const Value> values() const { return y_; }
  [[nodiscard]] const Value& load(Vertex v) const { return load_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] VertexState state(Vertex v) const { return state_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] bool violates(Vertex v) const { return state(v) == VertexState::kViolated; }
  [[nodiscard]] bool tight(Vertex v) const { return state(v) == VertexState::kTight; }

  /// Member of E_G(Y): incident to a vertex that violates its constraint.
  [[nodiscard]] bool edge_violating(std::size_t pos) const {
    const Edge& e = graph_->edge(pos);
    return violates(e.u) || violates(e.v);
  }
  [[nodiscard]] bool edge_tight(std::size_t pos) const { return tight_ends_[pos] > 0; }

  /// s(Y): -1 if some vertex violates its constraint, else +1.
  [[nodiscard]] int sign() const { return violating_ == 0 ? 1 : -1; }
  [[nodiscard]] bool feasible() const { return violating_ == 0; }
  [[nodiscard]] bool is_mfds() const { return violating_ == 0 && loose_edges_ == 0; }
  [[nodiscard]] std::size_t violating_count() const { return violating_; }

  /// Point update of one LP value. Throws std::invalid_argument for a
  /// negative value.
  void set(std::size_t pos, Value value);

  [[nodiscard]] Value total() const;
  [[nodiscard]] double total_approx() const;

  /// Recomputes every load from scratch and compares exactly with the cache.
  [[nodiscard]] bool cache_coherent() const;

 private:
  void refresh(Vertex v);
  [[nodiscard]] VertexState classify(Vertex v) const;

  std::shared_ptr<const WeightedGraph> graph_;
  F field_;
  std::vector<Value> y_;
  std::vector<Value> load_;
  std::vector<Value> weight_;
  std::vector<VertexState> state_;
  std::vector<std::uint8_t> tight_ends_;
  std::size_t violating_ = 0;
  std::size_t loose_edges_ = 0;
};

template <LpField F>
struct FitnessOutcome {
  typename F::Value value;
  bool accept = false;
};

/// V_G(Y), sorted.
template <LpField F>
std::vector<Vertex> violating_vertices(const DualSolution<F>& y);

/// E_G(Y), as sorted edge positions.
template <LpField F>
std::vector<std::size_t> violating_edges(const DualSolution<F>& y);

template <LpField F>
int sign(const DualSolution<F>& y) {
  return y.sign();
}

/// f(Y', Y): whether `next` is not worse than `current`.
///
///   s(Y) = +1:  s(Y') * sum_e (Y'(e) - Y(e))
///   s(Y) = -1:  sum_{e in E_G(Y)} (Y(e) - Y'(e)) - m * W_max * sum_{e not in E_G(Y)} |Y(e) - Y'(e)|
///
/// Ties are accepted. Throws std::invalid_argument unless both solutions
/// are over the same graph.
template <LpField F>
FitnessOutcome<F> fitness(const DualSolution<F>& current, const DualSolution<F>& next);

template <LpField F>
bool is_mfds(const DualSolution<F>& y) {
  return y.is_mfds();
}

template <LpField F>
struct CoverCertificate {
  std::vector<Vertex> cover;
  std::int64_t weight = 0;
  typename F::Value dual_total;
  bool covers_all_edges = false;
  bool within_factor_two = false;  ///< weight <= 2 * sum_e Y(e)

  [[nodiscard]] bool ok() const { return covers_all_edges && within_factor_two; }
};

/// The tight vertices of an MFDS, with the checks that make them a
/// 2-approximate cover. Throws std::logic_error if `y` is not an MFDS.
template <LpField F>
CoverCertificate<F> extract_cover(const DualSolution<F>& y);

/// Dual dump: one line per edge, "edge_id c0 c1 c2 c3", coefficients of
/// alpha^(k/4) written as p/q, in edge-position order.
std::string dual_dump(const DualSolution<ExactField>& y);

/// Parses a dump against `graph`. Every edge of the graph must appear exactly
/// once; throws std::invalid_argument otherwise.
std::vector<RadicalValue> parse_dual_dump(std::string_view text, const WeightedGraph& graph, const Alpha& alpha);

/// Same as parse_dual_dump but requires rational values (no alpha^(k/4)
/// parts), which is what original MFDS files contain.
std::vector<Rational> parse_rational_dump(std::string_view text, const WeightedGraph& graph);

std::string rational_dump(const WeightedGraph& graph, std::span<const Rational> values);

// ---------------------------------------------------------------------------

template <LpField F>
DualSolution<F>::DualSolution(std::shared_ptr<const WeightedGraph> graph, F field)
    : DualSolution(graph, field, std::vector<Value>(graph->m(), field.zero())) {}

template <LpField F>
DualSolution<F>::DualSolution(std::shared_ptr<const WeightedGraph> graph, F field, std::vector<Value> values)
    : graph_(std::move(graph)), field_(std::move(field)), y_(std::move(values)) {
  const WeightedGraph& g = *graph_;
  if (y_.size() != g.m()) throw std::invalid_argument("dual solution size does not match the edge count");
  load_.assign(g.n(), field_.zero());
  weight_.reserve(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) weight_.push_back(field_.from_rational(Rational(g.weight(static_cast<Vertex>(v)))));
  for (std::size_t pos = 0; pos < y_.size(); ++pos) {
    if (field_.sign(y_[pos]) < 0) throw std::invalid_argument("LP values must be non-negative");
    const Edge& e = g.edge(pos);
    load_[static_cast<std::size_t>(e.u)] += y_[pos];
    load_[static_cast<std::size_t>(e.v)] += y_[pos];
  }
  state_.resize(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) {
    state_[v] = classify(static_cast<Vertex>(v));
    if (state_[v] == VertexState::kViolated) ++violating_;
  }
  tight_ends_.assign(g.m(), 0);
  for (std::size_t pos = 0; pos < g.m(); ++pos) {
    const Edge& e = g.edge(pos);
    tight_ends_[pos] = static_cast<std::uint8_t>(tight(e.u) + tight(e.v));
    if (tight_ends_[pos] == 0) ++loose_edges_;
  }
}

template <LpField F>
VertexState DualSolution<F>::classify(Vertex v) const {
  const auto i = static_cast<std::size_t>(v);
  const int s = field_.sign(load_[i] - weight_[i]);
  if (s > 0) return VertexState::kViolated;
  return s == 0 ? VertexState::kTight : VertexState::kSlack;
}

template <LpField F>
void DualSolution<F>::refresh(Vertex v) {
  const auto i = static_cast<std::size_t>(v);
  const VertexState before = state_[i];
  const VertexState after = classify(v);
  if (before == after) return;
  state_[i] = after;
  if (before == VertexState::kViolated) --violating_;
  if (after == VertexState::kViolated) ++violating_;
  const bool was_tight = before == VertexState::kTight;
  const bool is_tight = after == VertexState::kTight;
  if (was_tight == is_tight) return;
  for (const std::size_t pos : graph_->incident(v)) {
    if (is_tight) {
      if (tight_ends_[pos]++ == 0) --loose_edges_;
    } else {
      if (--tight_ends_[pos] == 0) ++loose_edges_;
    }
  }
}

template <LpField F>
void DualSolution<F>::set(std::size_t pos, Value value) {
  if (field_.sign(value) < 0) throw std::invalid_argument("LP values must be non-negative");
  const Value delta = value - y_[pos];
  y_[pos] = std::move(value);
  const Edge& e = graph_->edge(pos);
  load_[static_cast<std::size_t>(e.u)] += delta;
  load_[static_cast<std::size_t>(e.v)] += delta;
  refresh(e.u);
  refresh(e.v);
}

template <LpField F>
typename F::Value DualSolution<F>::total() const {
  Value sum = field_.zero();
  for (const Value& v : y_) sum += v;
  return sum;
}

template <LpField F>
double DualSolution<F>::total_approx() const {
  double sum = 0.0;
  for (const Value& v : y_) sum += F::approx(v);
  return sum;
}

template <LpField F>
bool DualSolution<F>::cache_coherent() const {
  std::vector<Value> fresh(graph_->n(), field_.zero());
  for (std::size_t pos = 0; pos < y_.size(); ++pos) {
    const Edge& e = graph_->edge(pos);
    fresh[static_cast<std::size_t>(e.u)] += y_[pos];
    fresh[static_cast<std::size_t>(e.v)] += y_[pos];
  }
  for (std::size_t v = 0; v < fresh.size(); ++v) {
    if (field_.sign(fresh[v] - load_[v]) != 0) return false;
    if (state_[v] != classify(static_cast<Vertex>(v))) return false;
  }
  return true;
}

template <LpField F>
std::vector<Vertex> violating_vertices(const DualSolution<F>& y) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < y.graph().n(); ++v) {
    if (y.violates(static_cast<Vertex>(v))) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

template <LpField F>
std::vector<std::size_t> violating_edges(const DualSolution<F>& y) {
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < y.m(); ++pos) {
    if (y.edge_violating(pos)) out.push_back(pos);
  }
  return out;
}

template <LpField F>
FitnessOutcome<F> fitness(const DualSolution<F>& current, const DualSolution<F>& next) {
  if (&current.graph() != &next.graph() && !(current.graph() == next.graph())) {
    throw std::invalid_argument("fitness compares solutions over different graphs");
  }
  const F& field = current.field();
  typename F::Value value = field.zero();
  if (current.sign() > 0) {
    for (std::size_t pos = 0; pos < current.m(); ++pos) value += next.y(pos) - current.y(pos);
    if (next.sign() < 0) value = -value;
  } else {
    typename F::Value kept = field.zero();
    typename F::Value disturbed = field.zero();
    for (std::size_t pos = 0; pos < current.m(); ++pos) {
      if (current.edge_violating(pos)) {
        kept += current.y(pos) - next.y(pos);
      } else {
        auto diff = current.y(pos) - next.y(pos);
        disturbed += field.sign(diff) < 0 ? -diff : diff;
      }
    }
    const Rational penalty = Rational(static_cast<std::int64_t>(current.m())) * Rational(current.graph().w_max());
    value = kept - field.scale(disturbed, penalty);
  }
  const bool accept = field.sign(value) >= 0;
  return {std::move(value), accept};
}

template <LpField F>
CoverCertificate<F> extract_cover(const DualSolution<F>& y) {
  if (!y.is_mfds()) throw std::logic_error("cover extraction requires a maximal feasible dual-solution");
  const WeightedGraph& g = y.graph();
  const F& field = y.field();
  CoverCertificate<F> cert{{}, 0, y.total(), true, false};
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (y.tight(static_cast<Vertex>(v))) {
      cert.cover.push_back(static_cast<Vertex>(v));
      cert.weight += g.weight(static_cast<Vertex>(v));
    }
  }
  for (const Edge& e : g.edges()) {
    if (!y.tight(e.u) && !y.tight(e.v)) cert.covers_all_edges = false;
  }
  const auto doubled = field.scale(cert.dual_total, Rational(2));
  cert.within_factor_two = field.sign(doubled - field.from_rational(Rational(cert.weight))) >= 0;
  return cert;
}

extern template class DualSolution<ExactField>;
extern template class DualSolution<FloatField>;

}  // namespace dualvc
