#include "kcdecomp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace kcdecomp {

namespace {

void check_decompose_args(const Graph& g, int k, int c) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (c < 1) throw ParameterError("c must be at least 1");
  (void)g;
}

void check_enumeration_budget(const Graph& g, int k, const OracleBudget& budget) {
  if (g.edge_count() > budget.max_edges)
    throw BudgetExceeded("enumeration over " + std::to_string(g.edge_count()) +
                         " edges exceeds the budget of " + std::to_string(budget.max_edges));
  if (k > budget.max_colors)
    throw BudgetExceeded("enumeration with " + std::to_string(k) +
                         " colors exceeds the budget of " + std::to_string(budget.max_colors));
}

// One connected component of a single color class.
struct ComponentProbe {
  std::vector<Vertex> vertices;
  int edges = 0;
  int max_degree = 0;
  bool cyclic = false;
};

class PropagatingSearch {
 public:
  PropagatingSearch(const Graph& g, int k, int c, Restriction r, std::uint64_t max_nodes,
                    bool order_pendants)
      : g_(g), k_(k), c_(c), r_(r), max_nodes_(max_nodes),
        mark_(g.vertex_count(), 0),
        inside_(g.vertex_count(), 0),
        group_of_(g.edge_count(), -1) {
    if (order_pendants) group_pendants();
  }

  std::optional<std::vector<Color>> run() {
    State state;
    state.colors.assign(g_.edge_count(), -1);
    state.domain.assign(g_.edge_count(), full_mask());
    // with pendant ordering in force, sort each group first and then rename
    // colors so that edge 0 has color 0; groups stay sorted
    if (!groups_.empty() && !assign(state, 0, 0)) return std::nullopt;
    if (solve(state)) return state.colors;
    return std::nullopt;
  }

 private:
  using Mask = std::uint64_t;

  struct State {
    std::vector<Color> colors;
    std::vector<Mask> domain;
    int used = 0;  // colors 0..used-1 have appeared
  };

  Mask full_mask() const { return k_ >= 64 ? ~Mask{0} : (Mask{1} << k_) - 1; }

  // Edges to degree-1 vertices hanging off the same vertex are swapped by an
  // automorphism, so their colors may be taken nondecreasing in index order.
  void group_pendants() {
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      std::vector<EdgeId> group;
      for (EdgeId e : g_.incident(v))
        if (g_.degree(g_.edge(e).other(v)) == 1 && g_.degree(v) > 1) group.push_back(e);
      if (group.size() < 2) continue;
      for (std::size_t i = 0; i < group.size(); ++i) {
        group_of_[group[i]] = static_cast<int>(groups_.size());
        position_.emplace(group[i], i);
      }
      groups_.push_back(std::move(group));
    }
  }

  // Keeps colors nondecreasing along e's pendant group.
  bool order_group(State& s, EdgeId e, Color x, std::vector<std::pair<EdgeId, Color>>& queue) {
    if (group_of_[e] < 0) return true;
    const auto& group = groups_[group_of_[e]];
    const std::size_t at = position_.at(e);
    const Mask below = (Mask{1} << x) - 1;
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i == at) continue;
      const EdgeId f = group[i];
      const Mask keep = i < at ? (below | (Mask{1} << x)) : ~below;
      if (s.colors[f] != -1) {
        if (!(keep & (Mask{1} << s.colors[f]))) return false;
        continue;
      }
      const Mask before = s.domain[f];
      s.domain[f] &= keep;
      if (s.domain[f] == 0) return false;
      if (s.domain[f] != before && (s.domain[f] & (s.domain[f] - 1)) == 0)
        queue.emplace_back(f, std::countr_zero(s.domain[f]));
    }
    return true;
  }

  // Every uncolored edge at v joins v's component in its color, so together
  // they cannot exceed the room left in those components.
  bool capacity_ok(const State& s, Vertex v) {
    int uncolored = 0;
    Mask offered = 0;
    for (EdgeId f : g_.incident(v))
      if (s.colors[f] == -1) {
        ++uncolored;
        offered |= s.domain[f];
      }
    if (uncolored == 0) return true;
    int room = 0;
    for (Color x = 0; x < k_ && room < uncolored; ++x)
      if (offered & (Mask{1} << x)) room += c_ - probe(s, v, x).edges;
    return room >= uncolored;
  }

  ComponentProbe probe(const State& s, Vertex start, Color x) {
    ComponentProbe out;
    ++stamp_;
    std::vector<Vertex> stack{start};
    mark_[start] = stamp_;
    int endpoint_sum = 0;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      out.vertices.push_back(u);
      int deg = 0;
      for (EdgeId id : g_.incident(u)) {
        if (s.colors[id] != x) continue;
        ++deg;
        Vertex w = g_.edge(id).other(u);
        if (mark_[w] != stamp_) {
          mark_[w] = stamp_;
          stack.push_back(w);
        }
      }
      endpoint_sum += deg;
      out.max_degree = std::max(out.max_degree, deg);
    }
    out.edges = endpoint_sum / 2;
    out.cyclic = out.edges >= static_cast<int>(out.vertices.size());
    return out;
  }

  bool component_ok(const ComponentProbe& comp) const {
    if (comp.edges > c_) return false;
    if (r_ == Restriction::any_subgraph) return true;
    if (comp.cyclic) return false;
    if (r_ == Restriction::star_forest && comp.max_degree != comp.edges) return false;
    return true;
  }

  // Assign and propagate to a fixpoint; false on contradiction.
  bool assign(State& s, EdgeId e, Color x) {
    std::vector<std::pair<EdgeId, Color>> queue{{e, x}};
    while (!queue.empty()) {
      auto [edge, color] = queue.back();
      queue.pop_back();
      if (s.colors[edge] == color) continue;
      if (s.colors[edge] != -1) return false;
      s.colors[edge] = color;
      s.domain[edge] = Mask{1} << color;
      s.used = std::max(s.used, color + 1);
      if (!order_group(s, edge, color, queue)) return false;

      const ComponentProbe comp = probe(s, g_.edge(edge).u, color);
      if (!component_ok(comp)) return false;
      ++inside_stamp_;
      for (Vertex u : comp.vertices) inside_[u] = inside_stamp_;
      for (Vertex u : comp.vertices) {
        for (EdgeId f : g_.incident(u)) {
          if (s.colors[f] != -1 || !(s.domain[f] & (Mask{1} << color))) continue;
          const Vertex y = g_.edge(f).other(u);
          const bool drop = inside_[y] == inside_stamp_
                                ? comp.edges + 1 > c_ || r_ != Restriction::any_subgraph
                                : comp.edges + probe(s, y, color).edges + 1 > c_;
          if (!drop) continue;
          s.domain[f] &= ~(Mask{1} << color);
          if (s.domain[f] == 0) return false;
          if ((s.domain[f] & (s.domain[f] - 1)) == 0)
            queue.emplace_back(f, std::countr_zero(s.domain[f]));
        }
      }
    }
    return true;
  }

  bool solve(State& s) {
    if (++nodes_ > max_nodes_)
      throw BudgetExceeded("propagating search exceeded " + std::to_string(max_nodes_) +
                           " nodes");
    // smallest domain first, then the edge touching the most colored edges
    EdgeId pick = -1;
    int best = 1 << 30;
    int best_touch = -1;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      if (s.colors[e] != -1) continue;
      const int size = std::popcount(s.domain[e] & allowed(s));
      if (size > best) continue;
      int touch = 0;
      for (Vertex end : {g_.edge(e).u, g_.edge(e).v})
        for (EdgeId f : g_.incident(end)) touch += s.colors[f] != -1;
      if (size < best || touch > best_touch) {
        best = size;
        best_touch = touch;
        pick = e;
      }
    }
    if (pick == -1) return true;
    for (Vertex v = 0; v < g_.vertex_count(); ++v)
      if (!capacity_ok(s, v)) return false;
    const Mask options = s.domain[pick] & allowed(s);
    for (Color x = 0; x < k_; ++x) {
      if (!(options & (Mask{1} << x))) continue;
      State next = s;
      if (assign(next, pick, x) && solve(next)) {
        s = std::move(next);
        return true;
      }
    }
    return false;
  }

  // Unused colors are interchangeable: only the first of them is tried. Not
  // combined with pendant ordering, which is not invariant under relabelling.
  Mask allowed(const State& s) const {
    if (!groups_.empty()) return full_mask();
    const int limit = std::min(k_, s.used + 1);
    return limit >= 64 ? ~Mask{0} : (Mask{1} << limit) - 1;
  }

  const Graph& g_;
  int k_;
  int c_;
  Restriction r_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
  std::vector<unsigned> inside_;
  unsigned inside_stamp_ = 0;
  std::vector<int> group_of_;
  std::vector<std::vector<EdgeId>> groups_;
  std::unordered_map<EdgeId, std::size_t> position_;
};

// Odometer step over colors[from..]; false once every position wrapped.
bool advance(std::vector<Color>& colors, std::size_t from, int k) {
  for (std::size_t i = colors.size(); i-- > from;) {
    if (++colors[i] < k) return true;
    colors[i] = 0;
  }
  return false;
}

bool place_items(const std::vector<std::pair<Weight, int>>& items, std::size_t next,
                 std::vector<Weight>& loads, std::vector<std::vector<int>>& bins, Weight c,
                 bool prune) {
  if (next == items.size()) return true;
  const auto [w, index] = items[next];
  for (std::size_t b = 0; b < loads.size(); ++b) {
    if (loads[b] + w > c) continue;
    if (prune) {
      // bins with equal load are interchangeable
      bool repeat = false;
      for (std::size_t earlier = 0; earlier < b && !repeat; ++earlier)
        repeat = loads[earlier] == loads[b];
      if (repeat) continue;
    }
    loads[b] += w;
    bins[b].push_back(index);
    if (place_items(items, next + 1, loads, bins, c, prune)) return true;
    loads[b] -= w;
    bins[b].pop_back();
  }
  return false;
}

}  // namespace

bool coloring_satisfies(const Graph& g, const std::vector<Color>& colors, int k, int c,
                        Restriction r) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> parent(n), edges(n), degree(n), max_deg(n);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Color color = 0; color < k; ++color) {
    std::iota(parent.begin(), parent.end(), 0);
    std::fill(degree.begin(), degree.end(), 0);
    bool cycle = false;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      if (colors[id] != color) continue;
      const Edge& e = g.edge(id);
      ++degree[e.u];
      ++degree[e.v];
      const int a = find(e.u), b = find(e.v);
      if (a == b) {
        cycle = true;
      } else {
        parent[b] = a;
      }
    }
    if (cycle && r != Restriction::any_subgraph) return false;
    std::fill(edges.begin(), edges.end(), 0);
    std::fill(max_deg.begin(), max_deg.end(), 0);
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      if (colors[id] != color) continue;
      if (++edges[find(g.edge(id).u)] > c) return false;
    }
    if (r == Restriction::star_forest) {
      for (std::size_t x = 0; x < n; ++x) {
        const int root = find(static_cast<int>(x));
        max_deg[root] = std::max(max_deg[root], degree[x]);
      }
      for (std::size_t x = 0; x < n; ++x)
        if (edges[x] > 0 && max_deg[x] != edges[x]) return false;
    }
  }
  return true;
}

std::optional<EdgeColoring> brute_decompose(const Graph& g, int k, int c, Restriction r,
                                            const OracleBudget& budget) {
  check_decompose_args(g, k, c);
  if (g.edge_count() == 0) return EdgeColoring{k, {}};

  if (budget.search == DecomposeSearch::propagate) {
    if (k > 64) throw BudgetExceeded("propagating search supports at most 64 colors");
    PropagatingSearch search(g, k, c, r, budget.max_nodes, budget.order_pendants);
    if (auto colors = search.run()) return EdgeColoring{k, std::move(*colors)};
    return std::nullopt;
  }

  check_enumeration_budget(g, k, budget);
  std::vector<Color> colors(g.edge_count(), 0);
  do {
    if (coloring_satisfies(g, colors, k, c, r)) return EdgeColoring{k, colors};
  } while (advance(colors, 1, k));
  return std::nullopt;
}

std::uint64_t for_each_decomposition(const Graph& g, int k, int c, Restriction r,
                                     const std::function<bool(const std::vector<Color>&)>& visit,
                                     const OracleBudget& budget) {
  check_decompose_args(g, k, c);
  check_enumeration_budget(g, k, budget);
  std::vector<Color> colors(g.edge_count(), 0);
  std::uint64_t count = 0;
  do {
    if (coloring_satisfies(g, colors, k, c, r)) {
      ++count;
      if (!visit(colors)) break;
    }
  } while (advance(colors, 0, k));
  return count;
}

std::optional<PackingCertificate> brute_binpack(const BinPackingInstance& inst,
                                                const OracleBudget& budget) {
  inst.validate();
  if (inst.weights.size() > budget.max_items)
    throw BudgetExceeded("brute-force packing of " + std::to_string(inst.weights.size()) +
                         " items exceeds the budget of " + std::to_string(budget.max_items));
  std::vector<std::pair<Weight, int>> items;
  for (std::size_t i = 0; i < inst.weights.size(); ++i)
    items.emplace_back(inst.weights[i], static_cast<int>(i));
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  // more bins than items never helps
  const auto bins_used =
      static_cast<std::size_t>(std::min<Weight>(inst.k, static_cast<Weight>(items.size())));
  std::vector<Weight> loads(bins_used, 0);
  std::vector<std::vector<int>> bins(bins_used);
  if (!place_items(items, 0, loads, bins, inst.c, budget.prune_symmetry)) return std::nullopt;
  PackingCertificate cert;
  for (auto& bin : bins) {
    std::sort(bin.begin(), bin.end());
    cert.bins.push_back(std::move(bin));
  }
  cert.bins.resize(static_cast<std::size_t>(inst.k));
  return cert;
}

bool brute_hypergraph_2color(const Hypergraph3& h, const OracleBudget& budget) {
  h.validate();
  if (h.vertex_count > budget.max_hypergraph_vertices)
    throw BudgetExceeded("too many hypergraph vertices for enumeration");
  const int n = h.vertex_count;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (const auto& e : h.hyperedges) {
      const auto bit = [&](Vertex x) { return (mask >> x) & 1; };
      if (bit(e[0]) == bit(e[1]) && bit(e[1]) == bit(e[2])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool brute_kcolor(const Graph& g, int k, const OracleBudget& budget) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (g.vertex_count() > budget.max_vertices)
    throw BudgetExceeded("too many vertices for enumeration");
  if (g.vertex_count() == 0) return true;
  std::vector<Color> colors(g.vertex_count(), 0);
  do {
    bool ok = true;
    for (const Edge& e : g.edges())
      if (colors[e.u] == colors[e.v]) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (advance(colors, 0, k));
  return false;
}

int brute_mcd_opt(const Graph& t, int c, const OracleBudget& budget) {
  if (!t.is_tree()) throw NotATree("graph is not a tree");
  if (t.edge_count() == 0) return 0;
  for (int k = 1;; ++k)
    if (brute_decompose(t, k, c, Restriction::any_subgraph, budget)) return k;
}

int brute_msd_opt(const Graph& t, int k, const OracleBudget& budget) {
  if (!t.is_tree()) throw NotATree("graph is not a tree");
  if (t.edge_count() == 0) return 0;
  int lo = 0, hi = t.edge_count();  // lo infeasible (or zero), hi feasible
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (brute_decompose(t, k, mid, Restriction::any_subgraph, budget)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace kcdecomp
