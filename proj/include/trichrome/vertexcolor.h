#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trichrome/cspsolver.h"
#include "trichrome/graph.h"

namespace trichrome::vertexcolor {

/// Colors 1..3 per vertex.
using Coloring = std::vector<int>;

bool is_proper_coloring(const Graph &g, const Coloring &c);

/// A smaller graph together with the vertex each original vertex maps to.
struct GraphImage {
	Graph graph;
	std::vector<int> image;
};

/// Degree-3 structures: if the degree-3 vertices contain a cycle or a tree
/// of eight or more vertices, branch on which two neighbors of one such
/// vertex share a color. Children are solvable iff the input is; a coloring
/// of a child pulls back through `image`. nullopt when no trigger holds.
std::optional<std::vector<GraphImage>> reduce_degree3_structures(const Graph &g);

/// Whether a cycle or a tree of >= 8 vertices exists among degree-3 vertices.
bool has_degree3_structure(const Graph &g);

struct BushyTree {
	int root = -1;
	std::vector<int> internal; // root first
	std::vector<int> leaves;
	std::vector<std::pair<int, int>> edges; // (parent, child)
};

struct BushyForest {
	std::vector<BushyTree> trees;
	std::vector<bool> member; // indexed by vertex
};

/// Greedy maximal bushy forest: root a tree at any vertex with >= 4
/// neighbors outside the forest, then promote leaves with >= 3 outside
/// neighbors until none remain.
BushyForest find_bushy_forest(const Graph &g);

/// Empty string when the forest is valid and maximal, else a reason.
std::string check_bushy_forest(const Graph &g, const BushyForest &f);

struct HeightTwoTree {
	int root = -1;
	std::vector<int> children;
	std::vector<std::pair<int, int>> grandchildren; // (grandchild, its parent child)
	int capacity = 0;
};

struct HeightTwoForest {
	std::vector<HeightTwoTree> trees;
	int singletons = 0; // candidates the flow left unassigned
};

/// Claws packed in G - F become height-one trees; vertices not adjacent to
/// F and not in a claw are assigned as grandchildren by integral max flow,
/// capacity 5 for trees holding a vertex of degree >= 4, else 3. Vertices
/// the flow cannot place become single-vertex trees.
HeightTwoForest build_height2_forest(const Graph &g, const BushyForest &f);

std::string check_height2_forest(const Graph &g, const BushyForest &f, const HeightTwoForest &h);

struct ForestAccounting {
	int p = 0, q = 0, r = 0, s = 0, t = 0;
	double log_cost = 0.0; // natural log of 3^p 2^q L^s (3 L^3)^(t/7)

	int n() const { return p + q + r + s + t; }
	double predicted_cost() const;
	/// predicted_cost^(1/n); 1 for n = 0.
	double base() const;
	bool constraint_triple_holds() const;
};

ForestAccounting accounting(const Graph &g, const BushyForest &f);
/// Direct evaluation of the cost formula.
ForestAccounting accounting_from_counts(int p, int q, int r, int s, int t);

/// Vertices to precolor: internal vertices of F plus, for each height-two
/// tree, the subset of root and children with the smallest predicted cost.
std::vector<int> select_precolored(const Graph &g, const BushyForest &f, const HeightTwoForest &h);

struct ColorStats {
	std::uint64_t peeled = 0;
	std::uint64_t degree3_branches = 0;
	std::uint64_t precolorings = 0; // colorings of S tried
	std::uint64_t csp_calls = 0;
	std::uint64_t flow_singletons = 0;
	cspsolver::SearchStats csp;
	std::vector<ForestAccounting> covers;
};

struct ColorOptions {
	bool parallel = false;
	bool degree3_reductions = true;
};

struct ColorResult {
	std::optional<Coloring> coloring;
	ColorStats stats;
};

/// Colorings of S are enumerated; each residue goes to the CSP solver.
std::optional<Coloring> enumerate_and_solve(const Graph &g, const std::vector<int> &s, ColorStats &stats,
                                            const ColorOptions &options = {});

ColorResult solve_3coloring(const Graph &g, const ColorOptions &options = {});

/// Lists of at most 3 colors each, drawn from any palette.
ColorResult solve_list_coloring(const Graph &g, const std::vector<std::vector<int>> &lists,
                                const ColorOptions &options = {});

} // namespace trichrome::vertexcolor
