#pragma once

#include <array>
#include <vector>

#include "kcdecomp/binpack.hpp"
#include "kcdecomp/model.hpp"

namespace kcdecomp {

/// Bipartite building block with an ordered list of outlet edges.
///
/// Every outlet is stored as Edge{inner, free}: edge(outlet).v is the free end
/// that recursive constructions and reductions attach to.
struct GadgetGraph {
  Graph graph;
  std::vector<EdgeId> outlets;
  std::size_t outlet_cursor = 0;  // next unused outlet

  Vertex free_end(std::size_t outlet) const { return graph.edge(outlets[outlet]).v; }
};

/// 3-uniform hypergraph; every hyperedge has three distinct vertices.
struct Hypergraph3 {
  int vertex_count = 0;
  std::vector<std::array<Vertex, 3>> hyperedges;

  void validate() const;
  int max_degree() const;
};

/// Where each source vertex (and, for G_2, each hyperedge) landed in a
/// reduction graph.
struct GadgetCopy {
  Vertex first_vertex = 0;
  int vertex_count = 0;
  EdgeId first_edge = 0;
  int edge_count = 0;
  std::vector<EdgeId> outlets;       // outlet edge ids in the reduction graph
  std::size_t outlets_used = 0;
};

struct Hub {
  Vertex center = 0;
  std::vector<EdgeId> edges;
  std::array<int, 3> outlets_per_vertex{};  // contribution of each hyperedge vertex
};

struct ReductionGraph {
  Graph graph;
  int level = 0;  // j, the recursion depth of the per-vertex gadgets
  std::vector<GadgetCopy> copies;  // one per source vertex
  std::vector<Hub> hubs;           // G_2 only, one per hyperedge
};

/// H_i(k, c): i >= 0, k >= 2, c >= 2.
GadgetGraph build_H(int i, int k, int c);

/// Number of edges of H_i(k, c) from the recursive count, without building it.
BigInt gadget_edge_count(int i, int k, int c);

/// Smallest j with c^j >= target (0 when target <= 1).
int smallest_exponent(int c, const BigInt& target);

/// Reduction from 2-colorability of a 3-uniform hypergraph (k = 2).
ReductionGraph build_G2(const Hypergraph3& h, int c);

/// Reduction from k-colorability of a graph, k >= 3.
ReductionGraph build_Gk(const Graph& g, int k, int c);

/// Tree of one star with (k-1)c + w_i edges per item, one leaf of each star
/// merged into a shared center (vertex 0).
Graph build_tree_from_binpack(const BinPackingInstance& inst);

/// Recursive coloring of H_i: every component a K_{1,c}, all outlets share
/// outlet_color.
EdgeColoring color_H(int i, int k, int c, Color outlet_color = 0);

}  // namespace kcdecomp
