#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

#include "kcdecomp/binpack.hpp"
#include "kcdecomp/gadgets.hpp"
#include "kcdecomp/model.hpp"

namespace kcdecomp {

// Brute-force reference implementations. They are the ground truth for tests
// and refuse (BudgetExceeded) rather than answer outside their budget.

enum class Restriction { any_subgraph, forest, star_forest };

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DecomposeSearch {
  // k^(|E|-1) odometer over all colorings with edge 0 fixed to color 0.
  enumerate,
  // Backtracking with component-size propagation and color-symmetry breaking.
  propagate,
};

struct OracleBudget {
  int max_edges = 16;  // enumerate only
  int max_colors = 3;  // enumerate only
  DecomposeSearch search = DecomposeSearch::enumerate;
  std::uint64_t max_nodes = 20'000'000;  // propagate only
  bool order_pendants = true;            // propagate only: leaf symmetry
  std::size_t max_items = 12;            // brute_binpack
  int max_vertices = 14;                 // brute_kcolor
  int max_hypergraph_vertices = 24;      // brute_hypergraph_2color
  bool prune_symmetry = true;            // brute_binpack bin symmetry
};

/// Whether colors realise a decomposition with component size <= c whose
/// color classes satisfy r.
bool coloring_satisfies(const Graph& g, const std::vector<Color>& colors, int k, int c,
                        Restriction r);

std::optional<EdgeColoring> brute_decompose(const Graph& g, int k, int c,
                                            Restriction r = Restriction::any_subgraph,
                                            const OracleBudget& budget = {});

/// Visits every valid coloring (no symmetry reduction). Budget as enumerate.
/// Returns the number visited; the visitor may return false to stop early.
std::uint64_t for_each_decomposition(const Graph& g, int k, int c, Restriction r,
                                     const std::function<bool(const std::vector<Color>&)>& visit,
                                     const OracleBudget& budget = {});

std::optional<PackingCertificate> brute_binpack(const BinPackingInstance& inst,
                                                const OracleBudget& budget = {});

bool brute_hypergraph_2color(const Hypergraph3& h, const OracleBudget& budget = {});
bool brute_kcolor(const Graph& g, int k, const OracleBudget& budget = {});

/// Optimum colors at component size c (0 for a tree without edges).
int brute_mcd_opt(const Graph& t, int c, const OracleBudget& budget = {.search = DecomposeSearch::propagate});

/// Optimum component size with k colors (0 for a tree without edges).
int brute_msd_opt(const Graph& t, int k, const OracleBudget& budget = {.search = DecomposeSearch::propagate});

}  // namespace kcdecomp
