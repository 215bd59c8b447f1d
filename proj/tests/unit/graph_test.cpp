#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "dualvc/graph.hpp"
#include "dualvc/graph_io.hpp"
#include "dualvc/instances.hpp"

using namespace dualvc;

namespace {

std::vector<std::size_t> sorted(std::span<const std::size_t> s) {
  std::vector<std::size_t> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

WeightedGraph path4() { return WeightedGraph({1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 3}}); }

}  // namespace

TEST(WeightedGraph, RejectsMalformedInput) {
  EXPECT_THROW(WeightedGraph({1, 1}, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph({1, 1}, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph({1, 1}, {{0, 2}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph({0, 1}, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph({5, 1}, {{0, 1}}, 4), std::invalid_argument);
}

TEST(WeightedGraph, IncidentEdges) {
  const WeightedGraph gs = make_gs(4, 16);
  // e_2 = [2,3] at position 1.
  EXPECT_EQ(sorted(incident_edges(gs, 2)), std::vector<std::size_t>{1});
  const WeightedGraph iso({1, 1, 1}, {{0, 1}});
  EXPECT_TRUE(incident_edges(iso, 2).empty());
  EXPECT_THROW(incident_edges(iso, 3), std::out_of_range);
  const WeightedGraph gp = make_gs_prime(4, 16);
  EXPECT_EQ(sorted(incident_edges(gp, 0)), (std::vector<std::size_t>{0, 4}));
}

TEST(WeightedGraph, EdgeNeighborhood) {
  const WeightedGraph gp = make_gs_prime(4, 16);
  const std::vector<std::size_t> e1_prime{4};
  EXPECT_EQ(edge_neighborhood(gp, e1_prime), std::vector<std::size_t>{0});
  const std::vector<std::size_t> all{0, 1, 2, 3, 4};
  EXPECT_TRUE(edge_neighborhood(gp, all).empty());
  const WeightedGraph p = path4();
  const std::vector<std::size_t> middle{1};
  EXPECT_EQ(edge_neighborhood(p, middle), (std::vector<std::size_t>{0, 2}));
}

TEST(ApplyEdit, AddingE1ToGsMinusE1) {
  const WeightedGraph gs = make_gs(4, 16);
  std::vector<Edge> rest(gs.edges().begin() + 1, gs.edges().end());
  const WeightedGraph g(std::vector<std::int64_t>(gs.weights().begin(), gs.weights().end()), rest);
  auto all = rest;
  all.push_back({0, 1});
  const EditResult r = apply_edit(g, Edit::replace_edges(all));
  EXPECT_EQ(r.scale, 1);
  EXPECT_EQ(r.added, std::vector<Edge>{Edge(0, 1)});
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(r.variant(Edit::Kind::kEdges), Variant::kEdgePlus);
  // Kept edges keep ids, the new edge gets a fresh one.
  for (std::size_t pos = 0; pos < g.m(); ++pos) EXPECT_EQ(r.graph.id(pos), g.id(pos));
  EXPECT_EQ(r.graph.id(3), 3);
}

TEST(ApplyEdit, IdentityAndRemoval) {
  const WeightedGraph p = path4();
  const EditResult same = apply_edit(p, Edit::replace_edges({p.edges().begin(), p.edges().end()}));
  EXPECT_EQ(same.scale, 0);
  EXPECT_EQ(same.graph, p);
  const EditResult cut = apply_edit(p, Edit::replace_edges({{2, 3}, {0, 1}}));
  EXPECT_EQ(cut.scale, 1);
  EXPECT_EQ(cut.variant(Edit::Kind::kEdges), Variant::kEdgeMinus);
  EXPECT_EQ(cut.graph.id(0), 0);  // [0,1] keeps id 0, original order kept
  EXPECT_EQ(cut.graph.id(1), 2);
  const EditResult both = apply_edit(p, Edit::replace_edges({{0, 1}, {1, 2}, {0, 3}}));
  EXPECT_EQ(both.scale, 2);
  EXPECT_EQ(both.variant(Edit::Kind::kEdges), Variant::kEdge);
}

TEST(ApplyEdit, WeightEdits) {
  WeightedGraph g({1, 1, 1, 1}, {{0, 1}, {2, 3}});
  const EditResult up = apply_edit(g, Edit::replace_weights({16, 16, 1, 1}));
  EXPECT_EQ(up.scale, 2);
  EXPECT_TRUE(up.lowered.empty());
  EXPECT_EQ(up.raised, (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(up.variant(Edit::Kind::kWeights), Variant::kWeightPlus);
  EXPECT_EQ(up.graph.w_max(), 16);
  const EditResult mixed = apply_edit(up.graph, Edit::replace_weights({1, 16, 3, 1}));
  EXPECT_EQ(mixed.variant(Edit::Kind::kWeights), Variant::kWeight);
  EXPECT_EQ(mixed.scale, 2);
  EXPECT_EQ(mixed.graph.w_max(), 16);  // W_max covers both graphs
  EXPECT_THROW(apply_edit(g, Edit::replace_weights({1, 0, 1, 1})), std::invalid_argument);
  EXPECT_THROW(apply_edit(g, Edit::replace_weights({1, 1})), std::invalid_argument);
  EXPECT_THROW(apply_edit(g, Edit::replace_edges({{0, 1}, {1, 0}})), std::invalid_argument);
}

TEST(ApplyEdit, DiffSizeEqualsScaleOnRandomEdits) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const WeightedGraph g = random_instance(12, 20, 50, seed);
    for (const Variant v : {Variant::kEdgePlus, Variant::kEdgeMinus, Variant::kEdge, Variant::kWeightPlus,
                            Variant::kWeightMinus, Variant::kWeight}) {
      const std::int64_t d = 1 + static_cast<std::int64_t>(seed % 5);
      const Edit edit = random_edit(g, v, d, seed);
      const EditResult r = apply_edit(g, edit);
      ASSERT_EQ(r.scale, d);
      if (is_edge_variant(v)) {
        ASSERT_EQ(static_cast<std::int64_t>(r.added.size() + r.removed.size()), d);
      } else {
        ASSERT_EQ(static_cast<std::int64_t>(r.raised.size() + r.lowered.size()), d);
      }
      const Variant tag = r.variant(edit.kind);
      if (d >= 2 || (v != Variant::kEdge && v != Variant::kWeight)) {
        ASSERT_EQ(tag, v);
      }
      // Adjacency index equals a full rebuild.
      const WeightedGraph rebuilt(std::vector<std::int64_t>(r.graph.weights().begin(), r.graph.weights().end()),
                                  std::vector<Edge>(r.graph.edges().begin(), r.graph.edges().end()),
                                  std::vector<EdgeId>(r.graph.ids().begin(), r.graph.ids().end()), r.graph.next_id(),
                                  r.graph.w_max());
      for (std::size_t u = 0; u < r.graph.n(); ++u) {
        ASSERT_EQ(sorted(r.graph.incident(static_cast<Vertex>(u))), sorted(rebuilt.incident(static_cast<Vertex>(u))));
      }
    }
  }
}

TEST(GraphIo, RoundTripIsBitExact) {
  const WeightedGraph g = make_gs_prime(3, 8);
  const std::string text = instance_to_json(g);
  EXPECT_EQ(text, R"({"n":7,"weights":[8,8,1,1,1,1,8],"edges":[[0,1],[2,3],[4,5],[0,6]]})");
  EXPECT_EQ(instance_from_json(text), g);
  EXPECT_EQ(instance_to_json(instance_from_json(text)), text);

  const WeightedGraph padded = WeightedGraph({1, 1}, {{0, 1}}, 64);
  EXPECT_EQ(instance_from_json(instance_to_json(padded)).w_max(), 64);

  const Edit e = Edit::replace_weights({3, 1, 4});
  EXPECT_EQ(edit_to_json(e), R"({"kind":"weights","weights":[3,1,4]})");
  EXPECT_EQ(edit_from_json(edit_to_json(e)), e);
  const Edit f = Edit::replace_edges({{1, 2}});
  EXPECT_EQ(edit_from_json(edit_to_json(f)), f);

  const auto dir = std::filesystem::temp_directory_path() / "dualvc_graph_test";
  std::filesystem::create_directories(dir);
  write_instance(dir / "g.json", g);
  EXPECT_EQ(read_instance(dir / "g.json"), g);
}

TEST(GraphIo, MalformedInputRejected) {
  EXPECT_THROW(instance_from_json("{"), std::invalid_argument);
  EXPECT_THROW(instance_from_json(R"({"n":2,"weights":[1],"edges":[]})"), std::invalid_argument);
  EXPECT_THROW(instance_from_json(R"({"n":2,"weights":[1,1],"edges":[[0]]})"), std::invalid_argument);
  EXPECT_THROW(edit_from_json(R"({"kind":"vertices"})"), std::invalid_argument);
}

TEST(Variant, Names) {
  for (const Variant v : {Variant::kEdgePlus, Variant::kEdgeMinus, Variant::kEdge, Variant::kWeightPlus,
                          Variant::kWeightMinus, Variant::kWeight}) {
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
  EXPECT_THROW(parse_variant("X"), std::invalid_argument);
}
