#include "kcdecomp/model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace kcdecomp {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 0) throw ModelError("negative vertex count");
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_)
      throw ModelError("edge " + std::to_string(i) + " has an endpoint out of range");
    if (e.u == e.v) throw ModelError("edge " + std::to_string(i) + " is a self-loop");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
      throw ModelError("edge " + std::to_string(i) + " is parallel to an earlier edge");
  }
  adj_offset_.assign(static_cast<std::size_t>(vertex_count_) + 1, 0);
  for (const Edge& e : edges_) {
    ++adj_offset_[e.u + 1];
    ++adj_offset_[e.v + 1];
  }
  std::partial_sum(adj_offset_.begin(), adj_offset_.end(), adj_offset_.begin());
  adj_.resize(adj_offset_.back());
  std::vector<std::size_t> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (EdgeId id = 0; id < edge_count(); ++id) {
    adj_[fill[edges_[id].u]++] = id;
    adj_[fill[edges_[id].v]++] = id;
  }
}

std::span<const EdgeId> Graph::incident(Vertex x) const {
  return {adj_.data() + adj_offset_[x], adj_offset_[x + 1] - adj_offset_[x]};
}

int Graph::max_degree() const {
  int best = 0;
  for (Vertex x = 0; x < vertex_count_; ++x) best = std::max(best, degree(x));
  return best;
}

bool Graph::is_connected() const {
  if (vertex_count_ <= 1) return true;
  DisjointSets sets(vertex_count_);
  int components = vertex_count_;
  for (const Edge& e : edges_)
    if (sets.unite(e.u, e.v)) --components;
  return components == 1;
}

bool Graph::is_tree() const {
  if (vertex_count_ == 0) return edges_.empty();
  return edge_count() == vertex_count_ - 1 && is_connected();
}

bool Graph::is_bipartite() const {
  std::vector<int> side(static_cast<std::size_t>(vertex_count_), -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < vertex_count_; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (EdgeId id : incident(x)) {
        Vertex y = edges_[id].other(x);
        if (side[y] == -1) {
          side[y] = 1 - side[x];
          stack.push_back(y);
        } else if (side[y] == side[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

Graph make_path(int edge_count) {
  std::vector<Edge> edges;
  for (int i = 0; i < edge_count; ++i) edges.push_back({i, i + 1});
  return Graph(edge_count + 1, std::move(edges));
}

Graph make_star(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, std::move(edges));
}

Graph make_cycle(int length) {
  if (length < 3) throw ModelError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < length; ++i) edges.push_back({i, (i + 1) % length});
  return Graph(length, std::move(edges));
}

Vertex RootedTree::lower(EdgeId e) const {
  const Edge& edge = underlying.edge(e);
  return parent[edge.u].edge == e ? edge.u : edge.v;
}

std::optional<RootedTree> root_at_leaf(const Graph& t) {
  if (!t.is_tree()) throw NotATree("graph is not a tree");
  if (t.edge_count() == 0) return std::nullopt;

  RootedTree rooted;
  rooted.underlying = t;
  const int n = t.vertex_count();
  for (Vertex x = 0; x < n; ++x) {
    if (t.degree(x) == 1) {
      rooted.root = x;
      break;
    }
  }
  rooted.parent.assign(n, ParentLink{});
  rooted.children.assign(n, {});

  std::vector<Vertex> stack{rooted.root};
  std::vector<bool> visited(n, false);
  visited[rooted.root] = true;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    rooted.preorder.push_back(x);
    for (EdgeId id : t.incident(x)) {
      Vertex y = t.edge(id).other(x);
      if (visited[y]) continue;
      visited[y] = true;
      rooted.parent[y] = {x, id};
      rooted.children[x].push_back(y);
    }
    // push in reverse so the lowest edge index is visited first
    for (auto it = rooted.children[x].rbegin(); it != rooted.children[x].rend(); ++it)
      stack.push_back(*it);
  }
  return rooted;
}

int EdgeColoring::used_colors() const {
  std::set<Color> used(colors.begin(), colors.end());
  return static_cast<int>(used.size());
}

bool PartitionReport::all_forests() const {
  return std::all_of(is_forest_per_color.begin(), is_forest_per_color.end(),
                     [](bool b) { return b; });
}

bool PartitionReport::all_star_forests() const {
  return std::all_of(is_star_forest_per_color.begin(), is_star_forest_per_color.end(),
                     [](bool b) { return b; });
}

PartitionReport evaluate_partition(const Graph& g, const EdgeColoring& coloring) {
  if (coloring.k < 0) throw MalformedColoring("negative color count");
  if (static_cast<int>(coloring.colors.size()) != g.edge_count())
    throw MalformedColoring("coloring covers " + std::to_string(coloring.colors.size()) +
                            " edges but the graph has " + std::to_string(g.edge_count()));
  for (std::size_t i = 0; i < coloring.colors.size(); ++i) {
    if (coloring.colors[i] < 0 || coloring.colors[i] >= coloring.k)
      throw MalformedColoring("edge " + std::to_string(i) + " has color " +
                              std::to_string(coloring.colors[i]) + " outside [0, " +
                              std::to_string(coloring.k) + ")");
  }

  PartitionReport report;
  const auto k = static_cast<std::size_t>(coloring.k);
  report.per_color_component_sizes.assign(k, {});
  report.is_forest_per_color.assign(k, true);
  report.is_star_forest_per_color.assign(k, true);

  for (Color color = 0; color < coloring.k; ++color) {
    DisjointSets sets(g.vertex_count());
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      if (coloring.colors[id] != color) continue;
      const Edge& e = g.edge(id);
      sets.unite(e.u, e.v);
      ++degree[e.u];
      ++degree[e.v];
    }
    // per root: edge count, vertex count, max degree
    struct Tally {
      int edges = 0;
      int vertices = 0;
      int max_degree = 0;
    };
    std::vector<Tally> tally(static_cast<std::size_t>(g.vertex_count()));
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      if (coloring.colors[id] == color) ++tally[sets.find(g.edge(id).u)].edges;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      if (degree[x] == 0) continue;
      Tally& t = tally[sets.find(x)];
      ++t.vertices;
      t.max_degree = std::max(t.max_degree, degree[x]);
    }
    auto& sizes = report.per_color_component_sizes[color];
    for (const Tally& t : tally) {
      if (t.edges == 0) continue;
      sizes.push_back(t.edges);
      const bool tree = t.edges == t.vertices - 1;
      if (!tree) report.is_forest_per_color[color] = false;
      if (!tree || t.max_degree != t.edges) report.is_star_forest_per_color[color] = false;
      report.max_component_size = std::max(report.max_component_size, t.edges);
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
  }
  return report;
}

}  // namespace kcdecomp
