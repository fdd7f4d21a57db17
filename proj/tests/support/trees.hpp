#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kcdecomp/model.hpp"

namespace kcdecomp::test_support {

/// Every tree on n vertices up to isomorphism, for n in [min_vertices, max_vertices].
std::vector<Graph> unlabeled_trees(int min_vertices, int max_vertices);

/// Uniform labeled tree on n >= 2 vertices from a random Prüfer sequence.
Graph random_labeled_tree(int n, std::mt19937_64& rng);

/// Isomorphism-invariant string for a tree (centre-rooted AHU code).
std::string canonical_form(const Graph& t);

}  // namespace kcdecomp::test_support
