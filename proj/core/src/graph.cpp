#include "dualvc/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace dualvc {
namespace {

std::uint64_t pair_key(const Edge& e) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.u)) << 32) | static_cast<std::uint32_t>(e.v);
}

void check_weights(std::span<const std::int64_t> weights) {
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (weights[v] < 1) throw std::invalid_argument("vertex " + std::to_string(v) + " has non-positive weight");
  }
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<std::int64_t> weights, std::vector<Edge> edges,
                             std::optional<std::int64_t> w_max)
    : weights_(std::move(weights)), edges_(std::move(edges)) {
  ids_.resize(edges_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) ids_[i] = static_cast<EdgeId>(i);
  next_id_ = static_cast<EdgeId>(edges_.size());
  w_max_ = std::max<std::int64_t>(max_weight(), w_max.value_or(1));
  if (w_max && *w_max < max_weight()) throw std::invalid_argument("w_max below the largest vertex weight");
  build_index();
}

WeightedGraph::WeightedGraph(std::vector<std::int64_t> weights, std::vector<Edge> edges, std::vector<EdgeId> ids,
                             EdgeId next_id, std::optional<std::int64_t> w_max)
    : weights_(std::move(weights)), edges_(std::move(edges)), ids_(std::move(ids)), next_id_(next_id) {
  if (ids_.size() != edges_.size()) throw std::invalid_argument("edge id list does not match edge list");
  w_max_ = std::max<std::int64_t>(max_weight(), w_max.value_or(1));
  if (w_max && *w_max < max_weight()) throw std::invalid_argument("w_max below the largest vertex weight");
  build_index();
}

void WeightedGraph::build_index() {
  check_weights(weights_);
  const auto n_vertices = static_cast<Vertex>(weights_.size());
  offsets_.assign(weights_.size() + 1, 0);
  by_pair_.clear();
  by_pair_.reserve(edges_.size());
  by_id_.clear();
  by_id_.reserve(edges_.size());
  for (std::size_t pos = 0; pos < edges_.size(); ++pos) {
    const Edge& e = edges_[pos];
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v >= n_vertices) throw std::invalid_argument("edge endpoint out of range");
    if (!by_pair_.emplace(pair_key(e), pos).second) {
      throw std::invalid_argument("duplicate edge [" + std::to_string(e.u) + "," + std::to_string(e.v) + "]");
    }
    if (ids_[pos] >= next_id_ || !by_id_.emplace(ids_[pos], pos).second) {
      throw std::invalid_argument("invalid or duplicate edge id");
    }
    ++offsets_[static_cast<std::size_t>(e.u) + 1];
    ++offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  for (std::size_t v = 0; v < weights_.size(); ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.assign(2 * edges_.size(), 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t pos = 0; pos < edges_.size(); ++pos) {
    adjacency_[fill[static_cast<std::size_t>(edges_[pos].u)]++] = pos;
    adjacency_[fill[static_cast<std::size_t>(edges_[pos].v)]++] = pos;
  }
}

std::int64_t WeightedGraph::max_weight() const {
  return weights_.empty() ? 1 : *std::max_element(weights_.begin(), weights_.end());
}

std::span<const std::size_t> WeightedGraph::incident(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= weights_.size()) {
    throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
  const auto i = static_cast<std::size_t>(v);
  return std::span<const std::size_t>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::optional<std::size_t> WeightedGraph::find(const Edge& e) const {
  const auto it = by_pair_.find(pair_key(e));
  if (it == by_pair_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WeightedGraph::position_of(EdgeId id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

WeightedGraph WeightedGraph::with_w_max(std::int64_t w_max) const {
  return WeightedGraph(weights_, edges_, ids_, next_id_, w_max);
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  return a.weights_ == b.weights_ && a.edges_ == b.edges_ && a.ids_ == b.ids_ && a.next_id_ == b.next_id_ &&
         a.w_max_ == b.w_max_;
}

std::span<const std::size_t> incident_edges(const WeightedGraph& g, Vertex v) { return g.incident(v); }

std::vector<std::size_t> edge_neighborhood(const WeightedGraph& g, std::span<const std::size_t> edge_set) {
  std::set<std::size_t> members(edge_set.begin(), edge_set.end());
  std::set<std::size_t> out;
  for (const std::size_t pos : members) {
    if (pos >= g.m()) throw std::out_of_range("edge position out of range");
    for (const Vertex x : {g.edge(pos).u, g.edge(pos).v}) {
      for (const std::size_t other : g.incident(x)) {
        if (!members.contains(other)) out.insert(other);
      }
    }
  }
  return {out.begin(), out.end()};
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kEdgePlus: return "E+";
    case Variant::kEdgeMinus: return "E-";
    case Variant::kEdge: return "E";
    case Variant::kWeightPlus: return "W+";
    case Variant::kWeightMinus: return "W-";
    case Variant::kWeight: return "W";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  for (const Variant v : {Variant::kEdgePlus, Variant::kEdgeMinus, Variant::kEdge, Variant::kWeightPlus,
                          Variant::kWeightMinus, Variant::kWeight}) {
    if (to_string(v) == text) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(text) + "' (expected E+, E-, E, W+, W-, W)");
}

Variant EditResult::variant(Edit::Kind kind) const {
  if (kind == Edit::Kind::kEdges) {
    if (removed.empty()) return Variant::kEdgePlus;
    return added.empty() ? Variant::kEdgeMinus : Variant::kEdge;
  }
  if (lowered.empty()) return Variant::kWeightPlus;
  return raised.empty() ? Variant::kWeightMinus : Variant::kWeight;
}

EditResult apply_edit(const WeightedGraph& g, const Edit& edit) {
  EditResult out;
  if (edit.kind == Edit::Kind::kWeights) {
    if (edit.weights.size() != g.n()) throw std::invalid_argument("weight edit must list one weight per vertex");
    check_weights(edit.weights);
    for (std::size_t v = 0; v < g.n(); ++v) {
      const auto x = static_cast<Vertex>(v);
      if (edit.weights[v] > g.weight(x)) out.raised.push_back(x);
      if (edit.weights[v] < g.weight(x)) out.lowered.push_back(x);
    }
    out.scale = static_cast<std::int64_t>(out.raised.size() + out.lowered.size());
    const std::int64_t bound = std::max(g.w_max(), *std::max_element(edit.weights.begin(), edit.weights.end()));
    out.graph = WeightedGraph(edit.weights, {g.edges().begin(), g.edges().end()}, {g.ids().begin(), g.ids().end()},
                              g.next_id(), bound);
    return out;
  }

  // Validate E* as a simple edge set on the same vertex set.
  WeightedGraph target(std::vector<std::int64_t>(g.weights().begin(), g.weights().end()), edit.edges);
  std::vector<Edge> kept;
  std::vector<EdgeId> kept_ids;
  for (std::size_t pos = 0; pos < g.m(); ++pos) {
    if (target.find(g.edge(pos))) {
      kept.push_back(g.edge(pos));
      kept_ids.push_back(g.id(pos));
    } else {
      out.removed.push_back(g.edge(pos));
    }
  }
  EdgeId next = g.next_id();
  for (const Edge& e : edit.edges) {
    if (!g.find(e)) {
      out.added.push_back(e);
      kept.push_back(e);
      kept_ids.push_back(next++);
    }
  }
  out.scale = static_cast<std::int64_t>(out.added.size() + out.removed.size());
  out.graph = WeightedGraph(std::vector<std::int64_t>(g.weights().begin(), g.weights().end()), std::move(kept),
                            std::move(kept_ids), next, g.w_max());
  return out;
}

}  // namespace dualvc
