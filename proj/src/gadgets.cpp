#include "kcdecomp/gadgets.hpp"

#include <algorithm>
#include <map>

namespace kcdecomp {

namespace {

constexpr long long kMaxGadgetEdges = 20'000'000;

class GraphBuilder {
 public:
  Vertex add_vertex() { return vertex_count_++; }

  EdgeId add_edge(Vertex u, Vertex v) {
    edges_.push_back({u, v});
    return static_cast<EdgeId>(edges_.size() - 1);
  }

  // Copies src into the builder. Vertices listed in glue are identified with
  // existing vertices instead of getting fresh ids. Returns the vertex map.
  std::vector<Vertex> embed(const Graph& src, const std::map<Vertex, Vertex>& glue = {}) {
    std::vector<Vertex> map(static_cast<std::size_t>(src.vertex_count()));
    for (Vertex x = 0; x < src.vertex_count(); ++x) {
      auto it = glue.find(x);
      map[x] = it != glue.end() ? it->second : add_vertex();
    }
    for (const Edge& e : src.edges()) add_edge(map[e.u], map[e.v]);
    return map;
  }

  int vertex_count() const { return vertex_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  Graph build() && { return Graph(vertex_count_, std::move(edges_)); }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
};

void check_gadget_params(int i, int k, int c) {
  if (i < 0) throw ParameterError("gadget level must be nonnegative");
  if (k < 2) throw ParameterError("gadgets need k >= 2");
  if (c < 2) throw ParameterError("gadgets need c >= 2");
  if (gadget_edge_count(i, k, c) > kMaxGadgetEdges)
    throw ParameterError("gadget H_" + std::to_string(i) + " is too large to build");
}

GadgetCopy embed_copy(GraphBuilder& builder, const GadgetGraph& gadget,
                      const std::map<Vertex, Vertex>& glue = {}) {
  GadgetCopy copy;
  copy.first_vertex = builder.vertex_count();
  copy.first_edge = builder.edge_count();
  builder.embed(gadget.graph, glue);
  copy.vertex_count = builder.vertex_count() - copy.first_vertex;
  copy.edge_count = gadget.graph.edge_count();
  for (EdgeId outlet : gadget.outlets) copy.outlets.push_back(copy.first_edge + outlet);
  return copy;
}

}  // namespace

void Hypergraph3::validate() const {
  if (vertex_count < 0) throw ModelError("negative vertex count");
  for (std::size_t i = 0; i < hyperedges.size(); ++i) {
    const auto& e = hyperedges[i];
    for (Vertex x : e)
      if (x < 0 || x >= vertex_count)
        throw ModelError("hyperedge " + std::to_string(i) + " has a vertex out of range");
    if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2])
      throw ModelError("hyperedge " + std::to_string(i) + " repeats a vertex");
  }
}

int Hypergraph3::max_degree() const {
  std::vector<int> degree(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& e : hyperedges)
    for (Vertex x : e) ++degree[x];
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

BigInt gadget_edge_count(int i, int k, int c) {
  BigInt edges = BigInt(k) * c;
  BigInt outlets = 1;
  for (int level = 1; level <= i; ++level) {
    outlets *= c;
    edges = (k - 1) * edges + outlets;
  }
  return edges;
}

int smallest_exponent(int c, const BigInt& target) {
  if (c < 2) throw ParameterError("base must be at least 2");
  int j = 0;
  BigInt power = 1;
  while (power < target) {
    power *= c;
    ++j;
  }
  return j;
}

GadgetGraph build_H(int i, int k, int c) {
  check_gadget_params(i, k, c);
  if (i == 0) {
    GadgetGraph h0;
    h0.graph = make_star(k * c);
    h0.outlets = {0};
    return h0;
  }

  const GadgetGraph inner = build_H(i - 1, k, c);
  GraphBuilder builder;
  const std::vector<Vertex> first = builder.embed(inner.graph);
  std::vector<Vertex> centers;
  std::map<Vertex, Vertex> glue;
  for (std::size_t t = 0; t < inner.outlets.size(); ++t) {
    centers.push_back(first[inner.free_end(t)]);
    glue[inner.free_end(t)] = centers.back();
  }
  for (int copy = 1; copy < k - 1; ++copy) builder.embed(inner.graph, glue);

  GadgetGraph out;
  for (Vertex center : centers) {
    for (int leaf = 0; leaf < c; ++leaf)
      out.outlets.push_back(builder.add_edge(center, builder.add_vertex()));
  }
  out.graph = std::move(builder).build();
  return out;
}

EdgeColoring color_H(int i, int k, int c, Color outlet_color) {
  check_gadget_params(i, k, c);
  if (outlet_color < 0 || outlet_color >= k) throw ParameterError("outlet color out of range");
  EdgeColoring coloring{k, {}};
  if (i == 0) {
    for (int j = 0; j < k * c; ++j) coloring.colors.push_back((outlet_color + j / c) % k);
    return coloring;
  }
  // copies of H_{i-1} take the other k-1 colors on their outlets; the new
  // stars take outlet_color
  for (Color other = 0; other < k; ++other) {
    if (other == outlet_color) continue;
    const EdgeColoring inner = color_H(i - 1, k, c, other);
    coloring.colors.insert(coloring.colors.end(), inner.colors.begin(), inner.colors.end());
  }
  BigInt outlets = 1;
  for (int level = 0; level < i; ++level) outlets *= c;
  coloring.colors.insert(coloring.colors.end(), outlets.convert_to<std::size_t>(), outlet_color);
  return coloring;
}

ReductionGraph build_G2(const Hypergraph3& h, int c) {
  h.validate();
  if (c < 2) throw ParameterError("G_2 needs c >= 2");
  if (h.hyperedges.empty()) throw ParameterError("G_2 needs at least one hyperedge");

  ReductionGraph out;
  out.level = smallest_exponent(c, BigInt(c - 1) * h.max_degree());
  const GadgetGraph gadget = build_H(out.level, 2, c);
  GraphBuilder builder;
  for (Vertex x = 0; x < h.vertex_count; ++x) out.copies.push_back(embed_copy(builder, gadget));

  for (const auto& he : h.hyperedges) {
    Hub hub;
    hub.center = builder.add_vertex();
    const int base = (c + 1) / 3;
    const int extra = (c + 1) % 3;
    for (int t = 0; t < 3; ++t) {
      const int share = std::clamp(base + (t < extra ? 1 : 0), 1, c - 1);
      hub.outlets_per_vertex[t] = share;
      GadgetCopy& copy = out.copies[he[t]];
      for (int n = 0; n < share; ++n) {
        if (copy.outlets_used == copy.outlets.size())
          throw std::logic_error("gadget copy ran out of outlets");
        const EdgeId outlet = copy.outlets[copy.outlets_used++];
        const Vertex free = gadget.graph.edge(outlet - copy.first_edge).v;
        hub.edges.push_back(builder.add_edge(hub.center, copy.first_vertex + free));
      }
    }
    out.hubs.push_back(std::move(hub));
  }
  out.graph = std::move(builder).build();
  return out;
}

ReductionGraph build_Gk(const Graph& g, int k, int c) {
  if (k < 3) throw ParameterError("G_k needs k >= 3");
  if (c < 2) throw ParameterError("G_k needs c >= 2");

  ReductionGraph out;
  out.level = smallest_exponent(c, BigInt(g.max_degree()));
  const GadgetGraph gadget = build_H(out.level, k, c);

  // outlet t of vertex x serves edge uses[x][t]
  std::vector<std::vector<EdgeId>> uses(static_cast<std::size_t>(g.vertex_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    uses[g.edge(e).u].push_back(e);
    uses[g.edge(e).v].push_back(e);
  }
  std::vector<Vertex> junction(static_cast<std::size_t>(g.edge_count()), -1);
  GraphBuilder builder;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    std::map<Vertex, Vertex> glue;
    for (std::size_t t = 0; t < uses[x].size(); ++t)
      if (junction[uses[x][t]] != -1) glue[gadget.free_end(t)] = junction[uses[x][t]];
    GadgetCopy copy;
    copy.first_vertex = builder.vertex_count();
    copy.first_edge = builder.edge_count();
    const std::vector<Vertex> map = builder.embed(gadget.graph, glue);
    copy.vertex_count = builder.vertex_count() - copy.first_vertex;
    copy.edge_count = gadget.graph.edge_count();
    for (EdgeId outlet : gadget.outlets) copy.outlets.push_back(copy.first_edge + outlet);
    copy.outlets_used = uses[x].size();
    for (std::size_t t = 0; t < uses[x].size(); ++t)
      if (junction[uses[x][t]] == -1) junction[uses[x][t]] = map[gadget.free_end(t)];
    out.copies.push_back(std::move(copy));
  }
  out.graph = std::move(builder).build();
  return out;
}

Graph build_tree_from_binpack(const BinPackingInstance& inst) {
  inst.validate();
  if (inst.weights.empty()) throw ParameterError("the tree reduction needs at least one item");
  if (inst.k < 2) throw ParameterError("the tree reduction needs k >= 2");
  long long total = 0;
  for (Weight w : inst.weights) total += (inst.k - 1) * inst.c + w;
  if (total > kMaxGadgetEdges) throw ParameterError("tree would be too large to build");

  GraphBuilder builder;
  const Vertex center = builder.add_vertex();
  for (Weight w : inst.weights) {
    const Vertex hub = builder.add_vertex();
    builder.add_edge(hub, center);
    for (Weight leaf = 1; leaf < (inst.k - 1) * inst.c + w; ++leaf)
      builder.add_edge(hub, builder.add_vertex());
  }
  return std::move(builder).build();
}

}  // namespace kcdecomp
