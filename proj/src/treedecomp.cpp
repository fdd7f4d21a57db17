#include "kcdecomp/treedecomp.hpp"

#include <algorithm>
#include <stdexcept>

namespace kcdecomp {

BinPackingInstance child_items(std::span<const int> child_labels, int s, int k, int c) {
  if (s < 1 || s > c) throw ParameterError("candidate size must lie in [1, c]");
  BinPackingInstance inst;
  inst.k = k;
  inst.c = c;
  inst.weights.assign(child_labels.begin(), child_labels.end());
  inst.weights.push_back(c - s + 1);
  return inst;
}

LabelResult compute_labels(const RootedTree& t, int k, int c) {
  if (k < 1 || c < 1) throw ParameterError("k and c must be positive");
  const Graph& g = t.underlying;
  LabelResult result;
  result.labels.assign(static_cast<std::size_t>(g.edge_count()), 0);
  result.packings.assign(static_cast<std::size_t>(g.vertex_count()), std::nullopt);

  for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it) {
    const Vertex v = *it;
    if (v == t.root) continue;
    const EdgeId up = t.parent[v].edge;
    if (t.is_leaf(v)) {
      result.labels[up] = 1;
      continue;
    }

    VertexPacking packing;
    packing.vertex = v;
    std::vector<int> child_labels;
    for (Vertex child : t.children[v]) {
      packing.child_edges.push_back(t.parent[child].edge);
      child_labels.push_back(result.labels[t.parent[child].edge]);
    }

    FptResult at_c = solve_fpt(child_items(child_labels, c, k, c));
    if (!at_c.feasible()) {
      result.labels[up] = c + 1;
      result.aborted_at = up;
      return result;
    }
    // feasibility only grows with s, so bisect for the smallest feasible size
    int infeasible = 0;
    int feasible = c;
    PackingCertificate best = std::move(*at_c.certificate);
    while (feasible - infeasible > 1) {
      const int mid = infeasible + (feasible - infeasible) / 2;
      FptResult probe = solve_fpt(child_items(child_labels, mid, k, c));
      if (probe.feasible()) {
        feasible = mid;
        best = std::move(*probe.certificate);
      } else {
        infeasible = mid;
      }
    }
    result.labels[up] = feasible;
    packing.s = feasible;
    packing.packing = std::move(best);
    result.packings[v] = std::move(packing);
  }
  return result;
}

EdgeColoring extract_coloring(const RootedTree& t,
                              std::span<const std::optional<VertexPacking>> packings, int k) {
  const Graph& g = t.underlying;
  EdgeColoring coloring{k, std::vector<Color>(static_cast<std::size_t>(g.edge_count()), -1)};
  for (const Vertex v : t.preorder) {
    if (v == t.root) {
      coloring.colors[t.parent[t.children[v].front()].edge] = 0;
      continue;
    }
    if (t.is_leaf(v)) continue;
    const auto& stored = packings[v];
    if (!stored || stored->vertex != v)
      throw std::logic_error("no stored packing for vertex " + std::to_string(v));
    const Color parent_color = coloring.colors[t.parent[v].edge];
    const auto& bins = stored->packing.bins;

    std::size_t parent_bin = bins.size();
    for (std::size_t b = 0; b < bins.size(); ++b)
      if (std::find(bins[b].begin(), bins[b].end(), stored->parent_item()) != bins[b].end())
        parent_bin = b;
    if (parent_bin == bins.size() || static_cast<int>(bins.size()) > k)
      throw std::logic_error("inconsistent packing at vertex " + std::to_string(v));

    Color next = 0;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      Color color = parent_color;
      if (b != parent_bin) {
        if (next == parent_color) ++next;
        color = next++;
      }
      for (int item : bins[b]) {
        if (item == stored->parent_item()) continue;
        coloring.colors[stored->child_edges.at(static_cast<std::size_t>(item))] = color;
      }
    }
  }
  if (std::find(coloring.colors.begin(), coloring.colors.end(), -1) != coloring.colors.end())
    throw std::logic_error("extraction left an edge uncolored");
  return coloring;
}

std::optional<EdgeColoring> decide_kc(const Graph& t, int k, int c) {
  if (k < 1 || c < 1) throw ParameterError("k and c must be positive");
  const auto rooted = root_at_leaf(t);
  if (!rooted) return EdgeColoring{k, {}};
  if (k == 1) {
    if (t.edge_count() > c) return std::nullopt;
    return EdgeColoring{1, std::vector<Color>(static_cast<std::size_t>(t.edge_count()), 0)};
  }
  const LabelResult labels = compute_labels(*rooted, k, c);
  if (!labels.complete()) return std::nullopt;
  return extract_coloring(*rooted, labels.packings, k);
}

}  // namespace kcdecomp
