#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dualvc/dual.hpp"
#include "dualvc/graph.hpp"
#include "dualvc/radical.hpp"

/// Slow validators that share no caches with the dual layer. Everything here
/// is recomputed from the graph and the raw LP values on every call.
namespace dualvc::oracle {

struct ExactCoverResult {
  std::vector<Vertex> cover;  ///< sorted
  std::int64_t weight = 0;
};

inline constexpr std::size_t kMaxExactVertices = 24;
inline constexpr std::size_t kMaxExhaustiveVertices = 20;
inline constexpr std::size_t kMaxEnumerationEdges = 6;
inline constexpr std::int64_t kMaxEnumerationWeight = 8;

/// Minimum weight vertex cover by branch-and-bound, pruning with the value of
/// a greedy dual-solution on the residual graph. Throws std::length_error
/// when n > 24.
ExactCoverResult exact_min_wvc(const WeightedGraph& g);

/// Minimum weight vertex cover by scanning all 2^n subsets (n <= 20).
ExactCoverResult exhaustive_min_wvc(const WeightedGraph& g);

bool is_vertex_cover(const WeightedGraph& g, std::span<const Vertex> cover);

struct MfdsVerdict {
  bool feasible = false;
  bool maximal = false;  ///< every edge has a tight endpoint
  std::int64_t cover_weight = 0;  ///< weight of the tight vertices
  double dual_total = 0.0;
  bool within_factor_two = false;  ///< cover_weight <= 2 * sum_e Y(e), decided exactly

  [[nodiscard]] bool pass() const { return feasible && maximal && within_factor_two; }
};

/// Full recomputation of loads, feasibility, tightness and the 2*sum(Y)
/// certificate. `y` is indexed by edge position and must be non-negative.
MfdsVerdict check_mfds_naive(const WeightedGraph& g, std::span<const RadicalValue> y);
bool validate_mfds_naive(const WeightedGraph& g, std::span<const RadicalValue> y);
bool validate_mfds_naive(const WeightedGraph& g, std::span<const Rational> y);

/// Tolerant check for float-backend results: load <= W + tau for
/// feasibility and |load - W| <= tau for tightness.
MfdsVerdict check_mfds_tolerant(const WeightedGraph& g, std::span<const double> y, double tau);

/// f(Y', Y) recomputed from scratch (no cached loads).
FitnessOutcome<ExactField> reference_fitness(const WeightedGraph& g, const Alpha& alpha,
                                             std::span<const RadicalValue> y, std::span<const RadicalValue> yp);

/// All integer-valued MFDS of g over the grid [0, W_max]^m, in lexicographic
/// order. Requires m <= 6 and W_max <= 8; throws std::length_error otherwise.
std::vector<std::vector<std::int64_t>> enumerate_mfds(const WeightedGraph& g);

}  // namespace dualvc::oracle
