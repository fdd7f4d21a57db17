#include "trees.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace kcdecomp::test_support {

namespace {

std::string encode(const Graph& t, Vertex v, Vertex from) {
  std::vector<std::string> parts;
  for (EdgeId e : t.incident(v)) {
    const Vertex w = t.edge(e).other(v);
    if (w != from) parts.push_back(encode(t, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

std::vector<Vertex> centres(const Graph& t) {
  const int n = t.vertex_count();
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer)
      for (EdgeId e : t.incident(v)) {
        const Vertex w = t.edge(e).other(v);
        if (--deg[w] == 1) next.push_back(w);
      }
    layer = std::move(next);
  }
  return layer;
}

}  // namespace

std::string canonical_form(const Graph& t) {
  std::string best;
  for (Vertex c : centres(t)) {
    std::string code = encode(t, c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::vector<Graph> unlabeled_trees(int min_vertices, int max_vertices) {
  std::vector<Graph> out;
  std::vector<Graph> level{Graph(1, {})};
  for (int n = 1; n <= max_vertices; ++n) {
    if (n > 1) {
      std::set<std::string> seen;
      std::vector<Graph> next;
      for (const Graph& t : level) {
        for (Vertex v = 0; v < t.vertex_count(); ++v) {
          std::vector<Edge> edges = t.edges();
          edges.push_back({v, n - 1});
          Graph grown(n, std::move(edges));
          if (seen.insert(canonical_form(grown)).second) next.push_back(std::move(grown));
        }
      }
      level = std::move(next);
    }
    if (n >= min_vertices) out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Graph random_labeled_tree(int n, std::mt19937_64& rng) {
  if (n == 2) return Graph(2, {{0, 1}});
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  for (int& x : code) x = pick(rng);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : code) ++degree[x];

  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<Edge> edges;
  for (int x : code) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.push_back({leaf, x});
    if (--degree[x] == 1) leaves.insert(x);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.push_back({a, b});
  return Graph(n, std::move(edges));
}

}  // namespace kcdecomp::test_support
