#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcdecomp {

using Vertex = int;
using EdgeId = int;
using Color = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Errors shared by every module. Answers such as "infeasible" are never
// reported through exceptions.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MalformedColoring : public ModelError {
 public:
  using ModelError::ModelError;
};

class NotATree : public ModelError {
 public:
  using ModelError::ModelError;
};

class ParameterError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Simple undirected graph with stable edge indices.
///
/// Self-loops and parallel edges are rejected at construction. Certificates
/// elsewhere in the library refer to edges by their index in edges().
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Incident edge ids of x, in increasing edge-index order.
  std::span<const EdgeId> incident(Vertex x) const;
  int degree(Vertex x) const { return static_cast<int>(incident(x).size()); }
  int max_degree() const;

  bool is_connected() const;
  bool is_tree() const;
  bool is_bipartite() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offset_;
  std::vector<EdgeId> adj_;
};

Graph make_path(int edge_count);
Graph make_star(int leaves);  // center 0, leaves 1..leaves
Graph make_cycle(int length);

struct ParentLink {
  Vertex parent = -1;
  EdgeId edge = -1;
};

/// A tree oriented toward a degree-1 root.
struct RootedTree {
  Graph underlying;
  Vertex root = 0;
  std::vector<ParentLink> parent;            // parent[root] = {-1, -1}
  std::vector<std::vector<Vertex>> children;  // ordered by connecting edge index
  std::vector<Vertex> preorder;

  /// Vertex whose parent edge is e.
  Vertex lower(EdgeId e) const;
  bool is_leaf(Vertex x) const { return children[static_cast<std::size_t>(x)].empty(); }
};

/// Roots t at its lowest-indexed degree-1 vertex.
///
/// Returns nullopt for a tree without edges (callers treat it as trivially
/// decomposable). Throws NotATree when t is disconnected or cyclic.
std::optional<RootedTree> root_at_leaf(const Graph& t);

struct EdgeColoring {
  int k = 0;
  std::vector<Color> colors;  // indexed by edge id

  int used_colors() const;
};

struct PartitionReport {
  std::vector<std::vector<int>> per_color_component_sizes;  // sorted descending
  int max_component_size = 0;
  std::vector<bool> is_forest_per_color;
  std::vector<bool> is_star_forest_per_color;

  bool all_forests() const;
  bool all_star_forests() const;
};

/// Component analysis of every color class. Throws MalformedColoring when the
/// coloring does not cover exactly the edges of g with colors in [0, k).
PartitionReport evaluate_partition(const Graph& g, const EdgeColoring& coloring);

}  // namespace kcdecomp
