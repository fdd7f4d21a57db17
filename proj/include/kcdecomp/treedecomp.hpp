#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kcdecomp/binpack.hpp"
#include "kcdecomp/model.hpp"

namespace kcdecomp {

/// The packing chosen at an internal vertex for its final parent-edge label.
///
/// Items are the child edges in child order followed by the parent-edge item
/// (weight c - s + 1) at index child_edges.size().
struct VertexPacking {
  Vertex vertex = -1;
  int s = 0;
  std::vector<EdgeId> child_edges;
  PackingCertificate packing;

  int parent_item() const { return static_cast<int>(child_edges.size()); }
};

struct LabelResult {
  // s(e) per edge: 1..c when known, c+1 at the abort edge, 0 if never reached
  std::vector<int> labels;
  std::vector<std::optional<VertexPacking>> packings;  // per vertex
  std::optional<EdgeId> aborted_at;

  bool complete() const { return !aborted_at.has_value(); }
};

/// One item of weight s(f) per child edge, then the parent item c - s + 1.
BinPackingInstance child_items(std::span<const int> child_labels, int s, int k, int c);

/// Post-order labelling of a rooted tree. Stops at the first edge whose
/// probe at s = c fails.
LabelResult compute_labels(const RootedTree& t, int k, int c);

/// Colors the tree top-down from stored vertex packings. The root edge gets
/// color 0; at each vertex the bin holding the parent item keeps the parent
/// edge's color and the remaining bins take the other colors in order.
EdgeColoring extract_coloring(const RootedTree& t,
                              std::span<const std::optional<VertexPacking>> packings, int k);

/// Exact (k,c)-decomposition of a tree; nullopt when none exists. Throws
/// NotATree for other graphs.
std::optional<EdgeColoring> decide_kc(const Graph& t, int k, int c);

}  // namespace kcdecomp
