#include "dualvc/instances.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "dualvc/oracle.hpp"
#include "dualvc/rng.hpp"

namespace dualvc {
namespace {

constexpr std::uint64_t kGraphSalt = 0x6772617068000001ULL;
constexpr std::uint64_t kEditSalt = 0x6564697400000002ULL;

// k-th pair of the lexicographic enumeration of {(u, v) : u < v < n}.
Edge decode_pair(std::uint64_t k, int n) {
  Vertex u = 0;
  auto row = static_cast<std::uint64_t>(n - 1);
  while (k >= row) {
    k -= row;
    ++u;
    --row;
  }
  return {u, static_cast<Vertex>(u + 1 + static_cast<Vertex>(k))};
}

// k distinct values from [0, n), Floyd's algorithm; returned sorted.
std::vector<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t k, Rng& rng) {
  std::unordered_set<std::uint64_t> chosen;
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    chosen.insert(chosen.contains(t) ? j : t);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
std::vector<T> pick(const std::vector<T>& pool, std::uint64_t k, Rng& rng) {
  if (k > pool.size()) throw std::invalid_argument("edit scale is not feasible for this graph and variant");
  std::vector<T> out;
  for (const auto i : sample_distinct(pool.size(), k, rng)) out.push_back(pool[i]);
  return out;
}

std::vector<Edge> sample_non_edges(const WeightedGraph& g, std::uint64_t k, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(g.n());
  const std::uint64_t pairs = n * (n - 1) / 2;
  if (k > pairs - g.m()) throw std::invalid_argument("edit scale is not feasible for this graph and variant");
  std::vector<Edge> out;
  std::unordered_set<std::uint64_t> taken;
  while (out.size() < k) {
    const Edge e = decode_pair(rng.below(pairs), static_cast<int>(n));
    const std::uint64_t key = static_cast<std::uint64_t>(e.u) * n + static_cast<std::uint64_t>(e.v);
    if (g.find(e) || taken.contains(key)) continue;
    taken.insert(key);
    out.push_back(e);
  }
  return out;
}

Edit edge_edit(const WeightedGraph& g, std::uint64_t adds, std::uint64_t removes, Rng& rng) {
  std::vector<std::size_t> positions(g.m());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  const auto dropped = pick(positions, removes, rng);
  std::vector<Edge> edges;
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < g.m(); ++pos) {
    if (next < dropped.size() && dropped[next] == pos) {
      ++next;
      continue;
    }
    edges.push_back(g.edge(pos));
  }
  for (const Edge& e : sample_non_edges(g, adds, rng)) edges.push_back(e);
  return Edit::replace_edges(std::move(edges));
}

Edit weight_edit(const WeightedGraph& g, std::uint64_t raises, std::uint64_t lowers, Rng& rng) {
  std::vector<std::int64_t> weights(g.weights().begin(), g.weights().end());
  std::vector<Vertex> can_raise;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (weights[v] < g.w_max()) can_raise.push_back(static_cast<Vertex>(v));
  }
  const auto up = pick(can_raise, raises, rng);
  std::vector<Vertex> can_lower;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (weights[v] > 1 && !std::binary_search(up.begin(), up.end(), static_cast<Vertex>(v))) {
      can_lower.push_back(static_cast<Vertex>(v));
    }
  }
  const auto down = pick(can_lower, lowers, rng);
  for (const Vertex v : up) {
    auto& w = weights[static_cast<std::size_t>(v)];
    w += 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(g.w_max() - w)));
  }
  for (const Vertex v : down) {
    auto& w = weights[static_cast<std::size_t>(v)];
    w = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(w - 1)));
  }
  return Edit::replace_weights(std::move(weights));
}

}  // namespace

DynamicInstance make_dynamic_instance(const WeightedGraph& g, std::vector<Rational> y_orig, const Edit& edit,
                                      std::optional<std::int64_t> w_max) {
  if (y_orig.size() != g.m()) throw std::invalid_argument("Y_orig size does not match the edge count");
  // Y_orig is checked by the dual layer and, independently, by the oracle.
  const auto original_check = std::make_shared<const WeightedGraph>(g);
  std::vector<RadicalValue> values;
  values.reserve(y_orig.size());
  for (const auto& r : y_orig) values.emplace_back(canonicalize_alpha(2), r);
  const DualSolution<ExactField> y(original_check, ExactField{canonicalize_alpha(2)}, values);
  if (!y.is_mfds() || !oracle::validate_mfds_naive(g, std::span<const Rational>(y_orig))) {
    throw std::invalid_argument("Y_orig is not a maximal feasible dual-solution of the original graph");
  }

  const EditResult probe = apply_edit(g, edit);
  std::int64_t bound = std::max(g.w_max(), probe.graph.w_max());
  if (w_max) {
    if (*w_max < bound) throw std::invalid_argument("requested W_max is below the largest weight");
    bound = *w_max;
  }
  const WeightedGraph base = g.with_w_max(bound);
  EditResult result = apply_edit(base, edit);

  DynamicInstance inst;
  inst.original = std::make_shared<const WeightedGraph>(base);
  inst.updated = std::make_shared<const WeightedGraph>(std::move(result.graph));
  inst.y_orig = std::move(y_orig);
  inst.edit = edit;
  inst.variant = result.variant(edit.kind);
  inst.scale = result.scale;
  inst.added = std::move(result.added);
  inst.removed = std::move(result.removed);
  inst.raised = std::move(result.raised);
  inst.lowered = std::move(result.lowered);
  return inst;
}

std::vector<Rational> greedy_mfds(const WeightedGraph& g) {
  std::vector<std::int64_t> residual(g.weights().begin(), g.weights().end());
  std::vector<Rational> y;
  y.reserve(g.m());
  for (const Edge& e : g.edges()) {
    auto& ru = residual[static_cast<std::size_t>(e.u)];
    auto& rv = residual[static_cast<std::size_t>(e.v)];
    const std::int64_t raise = std::min(ru, rv);
    ru -= raise;
    rv -= raise;
    y.emplace_back(raise);
  }
  return y;
}

WeightedGraph make_gs(int m, std::int64_t w_max) {
  if (m < 2) throw std::invalid_argument("G_s needs m >= 2");
  std::vector<std::int64_t> weights(2 * static_cast<std::size_t>(m), 1);
  weights[0] = weights[1] = w_max;
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.emplace_back(2 * i, 2 * i + 1);
  return WeightedGraph(std::move(weights), std::move(edges), w_max);
}

WeightedGraph make_gs_prime(int m, std::int64_t w_max) {
  const WeightedGraph gs = make_gs(m, w_max);
  std::vector<std::int64_t> weights(gs.weights().begin(), gs.weights().end());
  weights.push_back(w_max);
  std::vector<Edge> edges(gs.edges().begin(), gs.edges().end());
  edges.emplace_back(0, 2 * m);
  return WeightedGraph(std::move(weights), std::move(edges), w_max);
}

std::int64_t checked_power(std::int64_t alpha, int m) {
  std::int64_t out = 1;
  for (int i = 0; i < m; ++i) {
    if (__builtin_mul_overflow(out, alpha, &out)) throw std::overflow_error("alpha^m does not fit in 64 bits");
  }
  return out;
}

DynamicInstance hard_instance(Variant variant, int m, std::int64_t alpha) {
  if (m < 2) throw std::invalid_argument("hard instances need m >= 2");
  canonicalize_alpha(alpha);
  const std::int64_t w_max = checked_power(alpha, m);
  const auto um = static_cast<std::size_t>(m);
  switch (variant) {
    case Variant::kEdgePlus: {
      const WeightedGraph gs = make_gs(m, w_max);
      std::vector<Edge> rest(gs.edges().begin() + 1, gs.edges().end());
      const WeightedGraph g(std::vector<std::int64_t>(gs.weights().begin(), gs.weights().end()), rest, w_max);
      std::vector<Edge> all = rest;
      all.push_back(gs.edge(0));
      return make_dynamic_instance(g, std::vector<Rational>(um - 1, Rational(1)), Edit::replace_edges(all), w_max);
    }
    case Variant::kEdgeMinus: {
      const WeightedGraph g = make_gs_prime(m, w_max);
      std::vector<Rational> y(um, Rational(1));
      y.push_back(Rational(w_max - 1));
      std::vector<Edge> kept(g.edges().begin(), g.edges().begin() + m);
      return make_dynamic_instance(g, std::move(y), Edit::replace_edges(kept), w_max);
    }
    case Variant::kWeightPlus: {
      const WeightedGraph gs = make_gs(m, w_max);
      std::vector<std::int64_t> weights(gs.weights().begin(), gs.weights().end());
      weights[0] = weights[1] = 1;
      const WeightedGraph g(weights, std::vector<Edge>(gs.edges().begin(), gs.edges().end()), w_max);
      return make_dynamic_instance(g, std::vector<Rational>(um, Rational(1)),
                                   Edit::replace_weights(std::vector<std::int64_t>(gs.weights().begin(), gs.weights().end())),
                                   w_max);
    }
    case Variant::kWeightMinus: {
      const WeightedGraph g = make_gs_prime(m, w_max);
      std::vector<Rational> y(um, Rational(1));
      y.push_back(Rational(w_max - 1));
      std::vector<std::int64_t> weights(g.weights().begin(), g.weights().end());
      weights.back() = 1;
      return make_dynamic_instance(g, std::move(y), Edit::replace_weights(std::move(weights)), w_max);
    }
    default:
      throw std::invalid_argument("hard instances exist for E+, E-, W+ and W- only");
  }
}

WeightedGraph random_instance(int n, std::int64_t m, std::int64_t w_max, std::uint64_t seed) {
  if (n < 0 || m < 0 || w_max < 1) throw std::invalid_argument("random instance needs n, m >= 0 and W_max >= 1");
  const auto pairs = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(std::max(n - 1, 0)) / 2;
  if (static_cast<std::uint64_t>(m) > pairs) throw std::invalid_argument("m exceeds n(n-1)/2");
  Rng rng(seed ^ kGraphSalt);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (const auto k : sample_distinct(pairs, static_cast<std::uint64_t>(m), rng)) edges.push_back(decode_pair(k, n));
  std::vector<std::int64_t> weights;
  weights.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) weights.push_back(1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(w_max))));
  return WeightedGraph(std::move(weights), std::move(edges), w_max);
}

Edit random_edit(const WeightedGraph& g, Variant variant, std::int64_t d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("edit scale D must be at least 1");
  Rng rng(seed ^ kEditSalt);
  const auto ud = static_cast<std::uint64_t>(d);
  auto split = [&](std::uint64_t& up, std::uint64_t& down) {
    if (ud == 1) {
      const bool heads = rng.coin();
      up = heads ? 1 : 0;
      down = heads ? 0 : 1;
    } else {
      up = (ud + 1) / 2;
      down = ud / 2;
    }
  };
  std::uint64_t up = 0;
  std::uint64_t down = 0;
  switch (variant) {
    case Variant::kEdgePlus:
      return edge_edit(g, ud, 0, rng);
    case Variant::kEdgeMinus:
      return edge_edit(g, 0, ud, rng);
    case Variant::kEdge:
      split(up, down);
      return edge_edit(g, up, down, rng);
    case Variant::kWeightPlus:
      return weight_edit(g, ud, 0, rng);
    case Variant::kWeightMinus:
      return weight_edit(g, 0, ud, rng);
    case Variant::kWeight:
      split(up, down);
      return weight_edit(g, up, down, rng);
  }
  throw std::invalid_argument("unknown variant");
}

DynamicInstance random_dynamic_instance(int n, std::int64_t m, std::int64_t w_max, Variant variant, std::int64_t d,
                                        std::uint64_t seed) {
  const WeightedGraph g = random_instance(n, m, w_max, seed);
  return make_dynamic_instance(g, greedy_mfds(g), random_edit(g, variant, d, seed), w_max);
}

}  // namespace dualvc
