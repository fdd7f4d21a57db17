#pragma once

#include <optional>
#include <vector>

#include "kcdecomp/dualapprox.hpp"
#include "kcdecomp/model.hpp"
#include "kcdecomp/treedecomp.hpp"

namespace kcdecomp {

/// ceil(a / b) for a >= 0, b > 0.
constexpr int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// Colors used by mcd_greedy on a tree of maximum degree delta.
int mcd_greedy_color_bound(int delta, int c);

/// Binary-search range (lo, hi] for the optimal component size with k colors:
/// lo = ceil(delta/k) - 1 is certified infeasible, hi = ceil((delta-1)/(k-1))
/// is achieved by msd_greedy2.
struct SearchBracket {
  int lo = 0;
  int hi = 0;
};

SearchBracket initial_bracket(int delta, int k);

/// Pre-order greedy: each vertex splits its child edges into groups of at
/// most c, one color per group, never reusing its parent edge's color.
/// Uses at most ceil((delta-1)/c) + 1 colors; every component is a star.
EdgeColoring mcd_greedy(const Graph& t, int c);

/// k colors, component size at most max(1, ceil((delta-1)/(k-1))).
EdgeColoring msd_greedy2(const Graph& t, int k);

struct PtasDecision {
  bool fits = false;  // true: c* <= (1+eps)c with coloring; false: c* > c
  std::optional<EdgeColoring> coloring;
  std::vector<int> approx_labels;  // s~(e), 0 where never reached
  std::optional<EdgeId> aborted_at;
};

/// Approximate labelling at candidate size c driven by dual_decide.
PtasDecision ptas_subroutine(const RootedTree& t, int k, int c, const Rational& eps);

struct PtasSearch {
  EdgeColoring coloring;
  SearchBracket bracket;  // final; component size <= (1+eps) * bracket.hi
};

PtasSearch msd_ptas_search(const Graph& t, int k, const Rational& eps);

/// k colors with component size at most (1+eps) times the optimum.
EdgeColoring msd_ptas(const Graph& t, int k, const Rational& eps);

}  // namespace kcdecomp
