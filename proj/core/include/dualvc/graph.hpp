#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dualvc {

using Vertex = std::int32_t;
using EdgeId = std::int64_t;

/// Unordered vertex pair, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  [[nodiscard]] bool touches(Vertex x) const { return u == x || v == x; }
  [[nodiscard]] bool shares_endpoint(const Edge& o) const { return touches(o.u) || touches(o.v); }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple vertex-weighted graph with positive integer weights.
///
/// Edges are addressed two ways: by dense position 0..m-1 (what the solvers
/// index arrays with) and by a stable EdgeId that survives graph edits for
/// edges present before and after the edit. `w_max` is the weight bound of
/// the dynamic instance the graph belongs to and may exceed the largest
/// weight actually present.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Edge ids are assigned 0..m-1 in the given order.
  WeightedGraph(std::vector<std::int64_t> weights, std::vector<Edge> edges,
                std::optional<std::int64_t> w_max = std::nullopt);
  WeightedGraph(std::vector<std::int64_t> weights, std::vector<Edge> edges, std::vector<EdgeId> ids,
                EdgeId next_id, std::optional<std::int64_t> w_max = std::nullopt);

  [[nodiscard]] std::size_t n() const { return weights_.size(); }
  [[nodiscard]] std::size_t m() const { return edges_.size(); }
  [[nodiscard]] std::int64_t weight(Vertex v) const { return weights_.at(static_cast<std::size_t>(v)); }
  [[nodiscard]] std::span<const std::int64_t> weights() const { return weights_; }
  [[nodiscard]] const Edge& edge(std::size_t pos) const { return edges_[pos]; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] EdgeId id(std::size_t pos) const { return ids_[pos]; }
  [[nodiscard]] std::span<const EdgeId> ids() const { return ids_; }
  [[nodiscard]] EdgeId next_id() const { return next_id_; }
  [[nodiscard]] std::int64_t w_max() const { return w_max_; }
  [[nodiscard]] std::int64_t max_weight() const;

  /// Positions of edges incident to v. Throws std::out_of_range for unknown v.
  [[nodiscard]] std::span<const std::size_t> incident(Vertex v) const;
  [[nodiscard]] std::optional<std::size_t> find(const Edge& e) const;
  [[nodiscard]] std::optional<std::size_t> position_of(EdgeId id) const;

  /// Copy with a raised weight bound; throws if below the largest weight.
  [[nodiscard]] WeightedGraph with_w_max(std::int64_t w_max) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  void build_index();

  std::vector<std::int64_t> weights_;
  std::vector<Edge> edges_;
  std::vector<EdgeId> ids_;
  EdgeId next_id_ = 0;
  std::int64_t w_max_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> adjacency_;
  std::unordered_map<std::uint64_t, std::size_t> by_pair_;
  std::unordered_map<EdgeId, std::size_t> by_id_;
};

/// E_G(v), as edge positions.
std::span<const std::size_t> incident_edges(const WeightedGraph& g, Vertex v);

/// E_G(S): edges sharing an endpoint with some edge of S, excluding S. Sorted.
std::vector<std::size_t> edge_neighborhood(const WeightedGraph& g, std::span<const std::size_t> edge_set);

/// Full replacement of either the edge set or the weight function.
struct Edit {
  enum class Kind { kEdges, kWeights };

  Kind kind = Kind::kEdges;
  std::vector<Edge> edges;
  std::vector<std::int64_t> weights;

  static Edit replace_edges(std::vector<Edge> edges) { return Edit{Kind::kEdges, std::move(edges), {}}; }
  static Edit replace_weights(std::vector<std::int64_t> weights) {
    return Edit{Kind::kWeights, {}, std::move(weights)};
  }
  friend bool operator==(const Edit&, const Edit&) = default;
};

/// The six dynamic problem variants.
enum class Variant { kEdgePlus, kEdgeMinus, kEdge, kWeightPlus, kWeightMinus, kWeight };

std::string_view to_string(Variant v);
/// Accepts "E+", "E-", "E", "W+", "W-", "W". Throws std::invalid_argument.
Variant parse_variant(std::string_view text);
inline bool is_edge_variant(Variant v) {
  return v == Variant::kEdgePlus || v == Variant::kEdgeMinus || v == Variant::kEdge;
}

struct EditResult {
  WeightedGraph graph;
  std::int64_t scale = 0;  ///< D
  std::vector<Edge> added;     ///< E+ = E* \ E
  std::vector<Edge> removed;   ///< E- = E \ E*
  std::vector<Vertex> raised;  ///< V+ = {v : W*(v) > W(v)}
  std::vector<Vertex> lowered; ///< V- = {v : W*(v) < W(v)}

  /// Variant implied by the diff sets. An edit with no change is classified
  /// as the "+" variant of its kind, since its "-" set is empty.
  [[nodiscard]] Variant variant(Edit::Kind kind) const;
};

/// Applies an edit. Edges kept from g keep their ids and relative order;
/// added edges follow in the order they appear in the edit and receive fresh
/// ids starting at g.next_id(). The new graph's w_max is max(g.w_max(), its
/// largest weight). Throws std::invalid_argument for self-loops, duplicate
/// edges, out-of-range vertices, wrong weight-vector length or weights < 1.
EditResult apply_edit(const WeightedGraph& g, const Edit& edit);

}  // namespace dualvc
