#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dualvc/dual.hpp"
#include "dualvc/graph.hpp"
#include "dualvc/rational.hpp"

namespace dualvc {

/// A dynamic problem instance: original graph G with an MFDS Y_orig, an
/// edit, and the edited graph G*. Both graphs carry the same W_max, the
/// largest weight over G and G* (or larger if requested).
struct DynamicInstance {
  std::shared_ptr<const WeightedGraph> original;
  std::shared_ptr<const WeightedGraph> updated;
  std::vector<Rational> y_orig;  ///< by edge position in `original`
  Edit edit;
  Variant variant = Variant::kEdgePlus;
  std::int64_t scale = 0;  ///< D
  std::vector<Edge> added;
  std::vector<Edge> removed;
  std::vector<Vertex> raised;
  std::vector<Vertex> lowered;

  [[nodiscard]] std::int64_t w_max() const { return updated->w_max(); }
};

/// Validates Y_orig (dual layer and naive oracle) and applies the edit.
/// Throws std::invalid_argument if Y_orig is not an MFDS of g.
DynamicInstance make_dynamic_instance(const WeightedGraph& g, std::vector<Rational> y_orig, const Edit& edit,
                                      std::optional<std::int64_t> w_max = std::nullopt);

/// Y_init: Y_orig on E* ∩ E, 0 on E* \ E.
template <LpField F>
DualSolution<F> initial_solution(const DynamicInstance& inst, const F& field) {
  const WeightedGraph& g = *inst.updated;
  std::vector<typename F::Value> values;
  values.reserve(g.m());
  for (std::size_t pos = 0; pos < g.m(); ++pos) {
    const auto old = inst.original->position_of(g.id(pos));
    values.push_back(old ? field.from_rational(inst.y_orig[*old]) : field.zero());
  }
  return DualSolution<F>(inst.updated, field, std::move(values));
}

/// Primal-dual greedy: edges in position order, each raised by the smaller
/// residual of its endpoints. Always an MFDS.
std::vector<Rational> greedy_mfds(const WeightedGraph& g);

/// G_s: m disjoint edges e_i = [2i, 2i+1]; e_1's endpoints weigh W_max, the
/// rest 1. Throws for m < 2.
WeightedGraph make_gs(int m, std::int64_t w_max);

/// G'_s: G_s plus vertex 2m of weight W_max and e'_1 = [0, 2m], so vertex 0
/// is shared by e_1 and e'_1.
WeightedGraph make_gs_prime(int m, std::int64_t w_max);

/// The four adversarial instances with W_max = alpha^m. Variant must be one
/// of E+, E-, W+, W-.
DynamicInstance hard_instance(Variant variant, int m, std::int64_t alpha);

/// alpha^m, throwing std::overflow_error if it does not fit in int64.
std::int64_t checked_power(std::int64_t alpha, int m);

/// Uniform simple graph with exactly m edges and weights uniform on [1, W_max].
WeightedGraph random_instance(int n, std::int64_t m, std::int64_t w_max, std::uint64_t seed);

/// Random edit of scale exactly D whose diff sets match the variant. For the
/// mixed variants (E, W) with D >= 2, ceil(D/2) changes go up and floor(D/2)
/// down; with D = 1 a fair coin picks the direction.
Edit random_edit(const WeightedGraph& g, Variant variant, std::int64_t d, std::uint64_t seed);

/// random_instance + greedy Y_orig + random_edit, with independent streams
/// derived from `seed`.
DynamicInstance random_dynamic_instance(int n, std::int64_t m, std::int64_t w_max, Variant variant, std::int64_t d,
                                        std::uint64_t seed);

}  // namespace dualvc
