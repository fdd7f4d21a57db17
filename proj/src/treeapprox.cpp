#include "kcdecomp/treeapprox.hpp"

#include <algorithm>

namespace kcdecomp {

namespace {

// Root edge color 0; at every other vertex child j gets the (j / group)-th
// color of 0..colors-1 with the parent edge's color skipped.
EdgeColoring grouped_coloring(const RootedTree& t, int colors, int group) {
  const Graph& g = t.underlying;
  EdgeColoring coloring{colors, std::vector<Color>(static_cast<std::size_t>(g.edge_count()), -1)};
  for (const Vertex v : t.preorder) {
    if (v == t.root) {
      coloring.colors[t.parent[t.children[v].front()].edge] = 0;
      continue;
    }
    const Color parent_color = coloring.colors[t.parent[v].edge];
    const auto& children = t.children[v];
    for (std::size_t j = 0; j < children.size(); ++j) {
      Color color = static_cast<Color>(j / static_cast<std::size_t>(group));
      if (color >= parent_color) ++color;
      coloring.colors[t.parent[children[j]].edge] = color;
    }
  }
  return coloring;
}

}  // namespace

int mcd_greedy_color_bound(int delta, int c) {
  if (delta <= 0) return 0;
  return ceil_div(delta - 1, c) + 1;
}

SearchBracket initial_bracket(int delta, int k) {
  const int lower = ceil_div(delta, k);
  return {lower - 1, std::max(lower, ceil_div(delta - 1, k - 1))};
}

EdgeColoring mcd_greedy(const Graph& t, int c) {
  if (c < 1) throw ParameterError("c must be positive");
  const auto rooted = root_at_leaf(t);
  if (!rooted) return EdgeColoring{0, {}};
  return grouped_coloring(*rooted, mcd_greedy_color_bound(t.max_degree(), c), c);
}

EdgeColoring msd_greedy2(const Graph& t, int k) {
  if (k < 2) throw ParameterError("the 2-approximation needs k >= 2");
  const auto rooted = root_at_leaf(t);
  if (!rooted) return EdgeColoring{k, {}};
  const int group = std::max(1, ceil_div(t.max_degree() - 1, k - 1));
  return grouped_coloring(*rooted, k, group);
}

PtasDecision ptas_subroutine(const RootedTree& t, int k, int c, const Rational& eps) {
  if (k < 1 || c < 1) throw ParameterError("k and c must be positive");
  check_epsilon(eps);
  const Graph& g = t.underlying;
  PtasDecision decision;
  decision.approx_labels.assign(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<std::optional<VertexPacking>> packings(static_cast<std::size_t>(g.vertex_count()));

  for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it) {
    const Vertex v = *it;
    if (v == t.root) continue;
    const EdgeId up = t.parent[v].edge;
    if (t.is_leaf(v)) {
      decision.approx_labels[up] = 1;
      continue;
    }
    VertexPacking packing;
    packing.vertex = v;
    std::vector<int> child_labels;
    for (Vertex child : t.children[v]) {
      packing.child_edges.push_back(t.parent[child].edge);
      child_labels.push_back(decision.approx_labels[t.parent[child].edge]);
    }

    DualResult at_c = dual_decide(child_items(child_labels, c, k, c), eps);
    if (!at_c.yes()) {
      decision.aborted_at = up;
      return decision;
    }
    // (no, yes) bracket from certified answers; s = 0 counts as "no"
    int no = 0;
    int yes = c;
    PackingCertificate best = std::move(*at_c.certificate);
    while (yes - no > 1) {
      const int mid = no + (yes - no) / 2;
      DualResult probe = dual_decide(child_items(child_labels, mid, k, c), eps);
      if (probe.yes()) {
        yes = mid;
        best = std::move(*probe.certificate);
      } else {
        no = mid;
      }
    }
    decision.approx_labels[up] = yes;
    packing.s = yes;
    packing.packing = std::move(best);
    packings[v] = std::move(packing);
  }
  decision.fits = true;
  decision.coloring = extract_coloring(t, packings, k);
  return decision;
}

PtasSearch msd_ptas_search(const Graph& t, int k, const Rational& eps) {
  if (k < 2) throw ParameterError("the approximation scheme needs k >= 2");
  check_epsilon(eps);
  const auto rooted = root_at_leaf(t);
  if (!rooted) return {EdgeColoring{k, {}}, {0, 0}};

  // hi starts out achieved by the greedy coloring, which is kept until a
  // probe certifies something smaller
  PtasSearch search{msd_greedy2(t, k), initial_bracket(t.max_degree(), k)};
  SearchBracket& bracket = search.bracket;
  while (bracket.hi - bracket.lo > 1) {
    const int mid = bracket.lo + (bracket.hi - bracket.lo) / 2;
    PtasDecision decision = ptas_subroutine(*rooted, k, mid, eps);
    if (decision.fits) {
      bracket.hi = mid;
      search.coloring = std::move(*decision.coloring);
    } else {
      bracket.lo = mid;
    }
  }
  return search;
}

EdgeColoring msd_ptas(const Graph& t, int k, const Rational& eps) {
  return msd_ptas_search(t, k, eps).coloring;
}

}  // namespace kcdecomp
