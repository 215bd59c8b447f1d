#include "dualvc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dualvc::oracle {
namespace {

using Mask = std::uint32_t;

struct Search {
  const WeightedGraph& g;
  std::vector<Mask> adjacency;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  Mask best_cover = 0;

  explicit Search(const WeightedGraph& graph) : g(graph), adjacency(graph.n(), 0) {
    for (const Edge& e : g.edges()) {
      adjacency[static_cast<std::size_t>(e.u)] |= Mask{1} << e.v;
      adjacency[static_cast<std::size_t>(e.v)] |= Mask{1} << e.u;
    }
  }

  // Greedy dual on the edges not yet covered: a lower bound on the weight
  // still needed. Also reports the uncovered edge with the heaviest
  // residual degree to branch on.
  std::int64_t lower_bound(Mask included, Mask excluded, int& branch_vertex) const {
    std::vector<std::int64_t> residual(g.weights().begin(), g.weights().end());
    std::vector<int> degree(g.n(), 0);
    std::int64_t bound = 0;
    branch_vertex = -1;
    for (const Edge& e : g.edges()) {
      const Mask both = (Mask{1} << e.u) | (Mask{1} << e.v);
      if ((included & both) != 0) continue;
      const auto u = static_cast<std::size_t>(e.u);
      const auto v = static_cast<std::size_t>(e.v);
      const std::int64_t raise = std::min(residual[u], residual[v]);
      residual[u] -= raise;
      residual[v] -= raise;
      bound += raise;
      if ((excluded & (Mask{1} << e.u)) == 0) ++degree[u];
      if ((excluded & (Mask{1} << e.v)) == 0) ++degree[v];
    }
    int top = 0;
    for (std::size_t v = 0; v < g.n(); ++v) {
      if (degree[v] > top) {
        top = degree[v];
        branch_vertex = static_cast<int>(v);
      }
    }
    return bound;
  }

  void descend(Mask included, Mask excluded, std::int64_t cost) {
    int v = -1;
    const std::int64_t bound = lower_bound(included, excluded, v);
    if (cost + bound >= best) return;
    if (v < 0) {
      // No uncovered edge left.
      best = cost;
      best_cover = included;
      return;
    }
    const Mask bit = Mask{1} << v;
    descend(included | bit, excluded, cost + g.weight(v));
    // Leaving v out forces every neighbour of v into the cover.
    const Mask forced = adjacency[static_cast<std::size_t>(v)] & ~included;
    if ((forced & excluded) != 0) return;
    std::int64_t extra = 0;
    for (std::size_t u = 0; u < g.n(); ++u) {
      if ((forced >> u) & 1U) extra += g.weight(static_cast<Vertex>(u));
    }
    descend(included | forced, excluded | bit, cost + extra);
  }
};

ExactCoverResult from_mask(const WeightedGraph& g, Mask mask) {
  ExactCoverResult out;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if ((mask >> v) & 1U) {
      out.cover.push_back(static_cast<Vertex>(v));
      out.weight += g.weight(static_cast<Vertex>(v));
    }
  }
  return out;
}

std::vector<RadicalValue> recompute_loads(const WeightedGraph& g, const Alpha& alpha, std::span<const RadicalValue> y) {
  std::vector<RadicalValue> load(g.n(), RadicalValue(alpha));
  for (std::size_t pos = 0; pos < g.m(); ++pos) {
    const Edge& e = g.edge(pos);
    load[static_cast<std::size_t>(e.u)] += y[pos];
    load[static_cast<std::size_t>(e.v)] += y[pos];
  }
  return load;
}

std::vector<bool> violating_edge_mask(const WeightedGraph& g, const std::vector<RadicalValue>& load) {
  std::vector<bool> out(g.m(), false);
  for (std::size_t pos = 0; pos < g.m(); ++pos) {
    const Edge& e = g.edge(pos);
    for (const Vertex x : {e.u, e.v}) {
      const auto& l = load[static_cast<std::size_t>(x)];
      if ((l - RadicalValue(l.alpha(), Rational(g.weight(x)))).sign() > 0) out[pos] = true;
    }
  }
  return out;
}

}  // namespace

ExactCoverResult exact_min_wvc(const WeightedGraph& g) {
  if (g.n() > kMaxExactVertices) throw std::length_error("exact cover oracle is limited to 24 vertices");
  Search search(g);
  search.descend(0, 0, 0);
  return from_mask(g, search.best_cover);
}

ExactCoverResult exhaustive_min_wvc(const WeightedGraph& g) {
  if (g.n() > kMaxExhaustiveVertices) throw std::length_error("exhaustive cover oracle is limited to 20 vertices");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  Mask best_mask = 0;
  const Mask end = Mask{1} << g.n();
  for (Mask mask = 0; mask < end; ++mask) {
    bool covers = true;
    for (const Edge& e : g.edges()) {
      if (((mask >> e.u) & 1U) == 0 && ((mask >> e.v) & 1U) == 0) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    std::int64_t weight = 0;
    for (std::size_t v = 0; v < g.n(); ++v) {
      if ((mask >> v) & 1U) weight += g.weight(static_cast<Vertex>(v));
    }
    if (weight < best) {
      best = weight;
      best_mask = mask;
    }
  }
  return from_mask(g, best_mask);
}

bool is_vertex_cover(const WeightedGraph& g, std::span<const Vertex> cover) {
  std::vector<bool> in(g.n(), false);
  for (const Vertex v : cover) in.at(static_cast<std::size_t>(v)) = true;
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return in[static_cast<std::size_t>(e.u)] || in[static_cast<std::size_t>(e.v)];
  });
}

MfdsVerdict check_mfds_naive(const WeightedGraph& g, std::span<const RadicalValue> y) {
  if (y.size() != g.m()) throw std::invalid_argument("value count does not match the edge count");
  MfdsVerdict verdict;
  if (g.m() == 0) {
    verdict.feasible = verdict.maximal = verdict.within_factor_two = true;
    return verdict;
  }
  const Alpha alpha = y[0].alpha();
  RadicalValue total(alpha);
  for (const auto& v : y) {
    if (v.sign() < 0) return verdict;
    total += v;
  }
  verdict.dual_total = total.to_double();
  const auto load = recompute_loads(g, alpha, y);
  std::vector<bool> tight(g.n(), false);
  verdict.feasible = true;
  for (std::size_t v = 0; v < g.n(); ++v) {
    const int s = (load[v] - RadicalValue(alpha, Rational(g.weight(static_cast<Vertex>(v))))).sign();
    if (s > 0) verdict.feasible = false;
    if (s == 0) {
      tight[v] = true;
      verdict.cover_weight += g.weight(static_cast<Vertex>(v));
    }
  }
  verdict.maximal = std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return tight[static_cast<std::size_t>(e.u)] || tight[static_cast<std::size_t>(e.v)];
  });
  verdict.within_factor_two = (total * Rational(2) - RadicalValue(alpha, Rational(verdict.cover_weight))).sign() >= 0;
  return verdict;
}

bool validate_mfds_naive(const WeightedGraph& g, std::span<const RadicalValue> y) {
  const auto v = check_mfds_naive(g, y);
  return v.feasible && v.maximal;
}

bool validate_mfds_naive(const WeightedGraph& g, std::span<const Rational> y) {
  std::vector<RadicalValue> values;
  values.reserve(y.size());
  for (const auto& r : y) values.emplace_back(canonicalize_alpha(2), r);
  return validate_mfds_naive(g, values);
}

MfdsVerdict check_mfds_tolerant(const WeightedGraph& g, std::span<const double> y, double tau) {
  if (y.size() != g.m()) throw std::invalid_argument("value count does not match the edge count");
  MfdsVerdict verdict;
  std::vector<double> load(g.n(), 0.0);
  for (std::size_t pos = 0; pos < g.m(); ++pos) {
    if (y[pos] < -tau) return verdict;
    load[static_cast<std::size_t>(g.edge(pos).u)] += y[pos];
    load[static_cast<std::size_t>(g.edge(pos).v)] += y[pos];
    verdict.dual_total += y[pos];
  }
  std::vector<bool> tight(g.n(), false);
  verdict.feasible = true;
  for (std::size_t v = 0; v < g.n(); ++v) {
    const double w = static_cast<double>(g.weight(static_cast<Vertex>(v)));
    if (load[v] > w + tau) verdict.feasible = false;
    if (std::abs(load[v] - w) <= tau) {
      tight[v] = true;
      verdict.cover_weight += g.weight(static_cast<Vertex>(v));
    }
  }
  verdict.maximal = std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return tight[static_cast<std::size_t>(e.u)] || tight[static_cast<std::size_t>(e.v)];
  });
  verdict.within_factor_two = static_cast<double>(verdict.cover_weight) <= 2.0 * verdict.dual_total + tau;
  return verdict;
}

FitnessOutcome<ExactField> reference_fitness(const WeightedGraph& g, const Alpha& alpha,
                                             std::span<const RadicalValue> y, std::span<const RadicalValue> yp) {
  if (y.size() != g.m() || yp.size() != g.m()) throw std::invalid_argument("value count does not match the edge count");
  const auto load = recompute_loads(g, alpha, y);
  const auto load_p = recompute_loads(g, alpha, yp);
  const auto violating = violating_edge_mask(g, load);
  const auto violating_p = violating_edge_mask(g, load_p);
  const bool feasible = std::find(violating.begin(), violating.end(), true) == violating.end();
  const bool feasible_p = std::find(violating_p.begin(), violating_p.end(), true) == violating_p.end();
  // Isolated violating vertices cannot exist (loads come from edges), so an
  // empty violating-edge set is the same as feasibility.

  RadicalValue value(alpha);
  if (feasible) {
    for (std::size_t pos = 0; pos < g.m(); ++pos) value = value + (yp[pos] - y[pos]);
    if (!feasible_p) value = RadicalValue(alpha) - value;
  } else {
    RadicalValue kept(alpha);
    RadicalValue disturbed(alpha);
    for (std::size_t pos = 0; pos < g.m(); ++pos) {
      const RadicalValue diff = y[pos] - yp[pos];
      if (violating[pos]) {
        kept = kept + diff;
      } else {
        disturbed = disturbed + (diff.sign() < 0 ? RadicalValue(alpha) - diff : diff);
      }
    }
    const Rational penalty = Rational(static_cast<std::int64_t>(g.m())) * Rational(g.w_max());
    value = kept - disturbed * penalty;
  }
  const bool accept = value.sign() >= 0;
  return {std::move(value), accept};
}

std::vector<std::vector<std::int64_t>> enumerate_mfds(const WeightedGraph& g) {
  if (g.m() > kMaxEnumerationEdges || g.w_max() > kMaxEnumerationWeight) {
    throw std::length_error("MFDS enumeration is limited to m <= 6 and W_max <= 8");
  }
  const std::int64_t top = g.w_max();
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> y(g.m(), 0);
  std::vector<std::int64_t> load(g.n(), 0);
  while (true) {
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t pos = 0; pos < g.m(); ++pos) {
      load[static_cast<std::size_t>(g.edge(pos).u)] += y[pos];
      load[static_cast<std::size_t>(g.edge(pos).v)] += y[pos];
    }
    bool ok = true;
    for (std::size_t v = 0; v < g.n() && ok; ++v) ok = load[v] <= g.weight(static_cast<Vertex>(v));
    for (std::size_t pos = 0; pos < g.m() && ok; ++pos) {
      const Edge& e = g.edge(pos);
      ok = load[static_cast<std::size_t>(e.u)] == g.weight(e.u) || load[static_cast<std::size_t>(e.v)] == g.weight(e.v);
    }
    if (ok) out.push_back(y);
    // Odometer, last coordinate fastest, so output is lexicographic.
    std::size_t k = g.m();
    while (k > 0 && y[k - 1] == top) y[--k] = 0;
    if (k == 0) break;
    ++y[k - 1];
  }
  return out;
}

}  // namespace dualvc::oracle
