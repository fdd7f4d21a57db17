#include <gtest/gtest.h>

#include <set>

#include "kcdecomp/gadgets.hpp"
#include "kcdecomp/oracle.hpp"
#include "kcdecomp/treedecomp.hpp"

using namespace kcdecomp;

namespace {

OracleBudget propagate() {
  OracleBudget b;
  b.search = DecomposeSearch::propagate;
  return b;
}

// Edge-count recursion E_0 = kc, E_i = (k-1) E_{i-1} + c^i, evaluated independently.
long long expected_edges(int i, int k, int c) {
  long long e = static_cast<long long>(k) * c;
  long long power = 1;
  for (int level = 1; level <= i; ++level) {
    power *= c;
    e = (k - 1) * e + power;
  }
  return e;
}

long long power(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

TEST(BuildH, SpecExamples) {
  const GadgetGraph h0 = build_H(0, 2, 3);
  EXPECT_EQ(h0.graph.edge_count(), 6);
  EXPECT_EQ(h0.outlets.size(), 1u);
  EXPECT_EQ(h0.graph.max_degree(), 6);

  const GadgetGraph h1 = build_H(1, 2, 3);
  EXPECT_EQ(h1.graph.edge_count(), 9);
  EXPECT_EQ(h1.outlets.size(), 3u);

  const GadgetGraph h2 = build_H(2, 2, 2);
  EXPECT_EQ(h2.graph.edge_count(), 10);
  EXPECT_EQ(h2.outlets.size(), 4u);
}

TEST(BuildH, SizesOutletsAndBipartiteness) {
  for (int k = 2; k <= 4; ++k)
    for (int c = 2; c <= 4; ++c)
      for (int i = 0; i <= 3; ++i) {
        const GadgetGraph h = build_H(i, k, c);
        EXPECT_EQ(h.graph.edge_count(), expected_edges(i, k, c));
        EXPECT_EQ(gadget_edge_count(i, k, c), expected_edges(i, k, c));
        EXPECT_LE(h.graph.edge_count(), power(c + k, i + 2));
        EXPECT_EQ(h.outlets.size(), static_cast<std::size_t>(power(c, i)));
        EXPECT_EQ(std::set<EdgeId>(h.outlets.begin(), h.outlets.end()).size(), h.outlets.size());
        EXPECT_TRUE(h.graph.is_bipartite());
        EXPECT_TRUE(h.graph.is_connected());
        for (std::size_t t = 0; t < h.outlets.size(); ++t) EXPECT_EQ(h.graph.degree(h.free_end(t)), 1);
      }
}

TEST(BuildH, ParameterErrors) {
  EXPECT_THROW(build_H(-1, 2, 2), ParameterError);
  EXPECT_THROW(build_H(0, 1, 2), ParameterError);
  EXPECT_THROW(build_H(0, 2, 1), ParameterError);
  EXPECT_THROW(build_H(40, 3, 3), ParameterError);
}

TEST(ColorH, EveryComponentIsAFullStarAndOutletsShareAColor) {
  for (int k = 2; k <= 3; ++k)
    for (int c = 2; c <= 3; ++c)
      for (int i = 0; i <= 3; ++i)
        for (Color outlet = 0; outlet < k; ++outlet) {
          const GadgetGraph h = build_H(i, k, c);
          const EdgeColoring coloring = color_H(i, k, c, outlet);
          const PartitionReport r = evaluate_partition(h.graph, coloring);
          EXPECT_TRUE(r.all_star_forests());
          for (const auto& sizes : r.per_color_component_sizes)
            for (int s : sizes) EXPECT_EQ(s, c);
          for (EdgeId e : h.outlets) EXPECT_EQ(coloring.colors[e], outlet);
        }
}

TEST(ForcedPartitions, EveryPartitionOfSmallGadgetsIsForced) {
  const std::vector<std::array<int, 3>> cases{{2, 2, 0}, {2, 2, 1}, {2, 2, 2}, {2, 3, 0}, {2, 3, 1}, {3, 2, 0}, {3, 2, 1}};
  for (const auto& [k, c, i] : cases) {
    const GadgetGraph h = build_H(i, k, c);
    std::uint64_t seen = 0;
    for_each_decomposition(h.graph, k, c, Restriction::any_subgraph, [&](const std::vector<Color>& colors) {
      ++seen;
      const PartitionReport r = evaluate_partition(h.graph, {k, colors});
      for (const auto& sizes : r.per_color_component_sizes)
        for (int s : sizes) EXPECT_EQ(s, c);
      EXPECT_TRUE(r.all_star_forests());
      for (EdgeId e : h.outlets) EXPECT_EQ(colors[e], colors[h.outlets.front()]);
      return true;
    });
    EXPECT_GT(seen, 0u) << k << c << i;
  }
}

TEST(SmallestExponent, Values) {
  EXPECT_EQ(smallest_exponent(2, 1), 0);
  EXPECT_EQ(smallest_exponent(2, 2), 1);
  EXPECT_EQ(smallest_exponent(2, 5), 3);
  EXPECT_EQ(smallest_exponent(3, 9), 2);
  EXPECT_EQ(smallest_exponent(3, 10), 3);
  EXPECT_EQ(smallest_exponent(2, BigInt(1) << 100), 100);
}

TEST(BuildG2, SingleHyperedge) {
  const Hypergraph3 h{3, {{0, 1, 2}}};
  const ReductionGraph g = build_G2(h, 2);
  EXPECT_EQ(g.level, 0);
  EXPECT_EQ(g.graph.edge_count(), 15);
  EXPECT_TRUE(g.graph.is_bipartite());
  EXPECT_TRUE(brute_hypergraph_2color(h));
  EXPECT_TRUE(brute_decompose(g.graph, 2, 2, Restriction::any_subgraph, propagate()));
}

TEST(BuildG2, HubsTakeBetweenOneAndCMinusOneOutletsPerVertex) {
  const Hypergraph3 h{6, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}, {0, 1, 5}}};
  for (int c = 2; c <= 5; ++c) {
    const ReductionGraph g = build_G2(h, c);
    EXPECT_TRUE(g.graph.is_bipartite());
    std::set<EdgeId> used;
    ASSERT_EQ(g.hubs.size(), h.hyperedges.size());
    for (const Hub& hub : g.hubs) {
      EXPECT_EQ(static_cast<int>(hub.edges.size()), c + 1);
      EXPECT_EQ(g.graph.degree(hub.center), c + 1);
      int total = 0;
      for (int share : hub.outlets_per_vertex) {
        EXPECT_GE(share, 1);
        EXPECT_LE(share, c - 1);
        total += share;
      }
      EXPECT_EQ(total, c + 1);
      for (EdgeId e : hub.edges) EXPECT_TRUE(used.insert(e).second);
    }
    for (const GadgetCopy& copy : g.copies) EXPECT_LE(copy.outlets_used, copy.outlets.size());
  }
}

TEST(BuildG2, Errors) {
  EXPECT_THROW(build_G2({3, {}}, 2), ParameterError);
  EXPECT_THROW(build_G2({3, {{0, 1, 2}}}, 1), ParameterError);
  EXPECT_THROW(build_G2({3, {{0, 1, 1}}}, 2), ModelError);
  EXPECT_THROW(build_G2({2, {{0, 1, 2}}}, 2), ModelError);
}

TEST(BuildGk, SingleEdge) {
  const ReductionGraph g = build_Gk(make_path(1), 3, 2);
  EXPECT_EQ(g.graph.edge_count(), 12);
  EXPECT_EQ(g.graph.vertex_count(), 13);
  EXPECT_TRUE(g.graph.is_bipartite());
  EXPECT_TRUE(brute_decompose(g.graph, 3, 2, Restriction::any_subgraph, propagate()));
}

TEST(BuildGk, TriangleAndK4) {
  const Graph triangle = make_cycle(3);
  EXPECT_TRUE(brute_kcolor(triangle, 3));
  const ReductionGraph gt = build_Gk(triangle, 3, 2);
  EXPECT_TRUE(gt.graph.is_bipartite());
  EXPECT_TRUE(brute_decompose(gt.graph, 3, 2, Restriction::any_subgraph, propagate()));

  const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_FALSE(brute_kcolor(k4, 3));
  const ReductionGraph g4 = build_Gk(k4, 3, 2);
  EXPECT_TRUE(g4.graph.is_bipartite());
  EXPECT_FALSE(brute_decompose(g4.graph, 3, 2, Restriction::any_subgraph, propagate()));
}

TEST(BuildGk, Errors) {
  EXPECT_THROW(build_Gk(make_path(1), 2, 2), ParameterError);
  EXPECT_THROW(build_Gk(make_path(1), 3, 1), ParameterError);
}

TEST(BinpackTree, SpecExamples) {
  const BinPackingInstance fits{{2, 1}, 2, 2};
  const Graph t = build_tree_from_binpack(fits);
  EXPECT_EQ(t.edge_count(), 7);
  EXPECT_TRUE(t.is_tree());
  EXPECT_TRUE(brute_binpack(fits));
  EXPECT_TRUE(brute_decompose(t, 2, 2, Restriction::any_subgraph, propagate()));
  EXPECT_TRUE(decide_kc(t, 2, 2));

  const BinPackingInstance stuck{{2, 2, 2}, 2, 3};
  const Graph u = build_tree_from_binpack(stuck);
  EXPECT_EQ(u.edge_count(), 15);
  EXPECT_FALSE(brute_binpack(stuck));
  EXPECT_FALSE(brute_decompose(u, 2, 3, Restriction::any_subgraph, propagate()));
  EXPECT_FALSE(decide_kc(u, 2, 3));
}

TEST(BinpackTree, EdgeCountAndErrors) {
  const BinPackingInstance inst{{3, 1, 2, 2}, 3, 4};
  EXPECT_EQ(build_tree_from_binpack(inst).edge_count(), 4 * 2 * 4 + 8);
  EXPECT_THROW(build_tree_from_binpack({{}, 2, 2}), ParameterError);
  EXPECT_THROW(build_tree_from_binpack({{1}, 1, 2}), ParameterError);
}
