#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trichrome/graph.h"
#include "trichrome/sat.h"

namespace trichrome::brute {

// Plain backtracking, exponential in the input size. Used by the `oracle`
// subcommand and by bench; independent of the branching solvers.

/// Lists indexed by vertex; returns a color per vertex.
std::optional<std::vector<int>> list_coloring(const Graph &g, const std::vector<std::vector<int>> &lists);

/// Colors 1..3 per edge (input order); adjacent edges and each diff pair
/// differ.
std::optional<std::vector<int>> edge_coloring(const std::vector<std::pair<int, int>> &edges,
                                              const std::vector<std::pair<int, int>> &diffs);

std::optional<sat::Model> sat(const sat::Cnf &f);

} // namespace trichrome::brute
