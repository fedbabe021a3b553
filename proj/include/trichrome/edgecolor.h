#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "trichrome/graph.h"
#include "trichrome/vertexcolor.h"

namespace trichrome::edgecolor {

/// Multigraph with stable edge ids and difference constraints between
/// edges. Edges and vertices are never renumbered; removal clears flags.
class EdgeInstance {
public:
	EdgeInstance() = default;
	explicit EdgeInstance(int vertex_count);

	/// Edges are numbered 0..m-1 in input order. Simple graphs only; diffs
	/// name edge indices.
	static EdgeInstance build(int vertex_count, const std::vector<std::pair<int, int>> &edges,
	                          const std::vector<std::pair<int, int>> &diffs = {});

	int add_edge(int u, int v);
	void add_difference(int e, int f);
	void remove_edge(int e);
	void remove_vertex(int v); // must be isolated

	int vertex_slots() const { return static_cast<int>(vertex_alive_.size()); }
	int edge_slots() const { return static_cast<int>(ends_.size()); }
	bool vertex_alive(int v) const { return vertex_alive_.at(v); }
	bool edge_alive(int e) const { return edge_alive_.at(e); }
	std::pair<int, int> ends(int e) const { return ends_.at(e); }
	int live_vertices() const;
	int live_edges() const;

	/// Live edges at v, ascending.
	std::vector<int> incident(int v) const;
	int degree(int v) const { return static_cast<int>(incident(v).size()); }
	/// Number of live edges sharing an endpoint with e.
	int adjacent_count(int e) const;
	const std::set<int> &differences(int e) const { return diffs_.at(e); }
	bool constrained(int e) const { return !diffs_.at(e).empty(); }

	/// Edges with exactly 3 and exactly 4 adjacent edges.
	std::pair<int, int> m3_m4() const;

private:
	std::vector<bool> vertex_alive_;
	std::vector<std::pair<int, int>> ends_;
	std::vector<bool> edge_alive_;
	std::vector<std::set<int>> diffs_;
};

/// Colors 1..3 indexed by edge id; 0 for edges not colored.
using EdgeColoring = std::vector<int>;

bool is_valid_coloring(const EdgeInstance &inst, const EdgeColoring &c);

struct Normalized {
	EdgeInstance instance;
	std::vector<int> removed; // in removal order
};

/// nullopt when some vertex has degree >= 4. Otherwise strips unconstrained
/// edges with at most two adjacent edges until none remain.
std::optional<Normalized> normalize(const EdgeInstance &inst);

/// Colors removed edges in reverse removal order with the least free color.
void extend_greedily(const EdgeInstance &original, const std::vector<int> &removed, EdgeColoring &c);

struct SpliceChild {
	EdgeInstance instance;
	int merged_first = -1;  // identifies a with c (child 1) or a with d (child 2)
	int merged_second = -1; // the other identification
	bool feasible = true;   // false when a merge would close a loop or join constrained edges
};

struct Splice {
	int edge = -1;
	int a = -1, b = -1, c = -1, d = -1; // a, b at the first endpoint; c, d at the second
	std::vector<SpliceChild> children;  // exactly two

	/// Colors a, b, c, d and the spliced edge from a coloring of child `k`.
	void back_map(int k, EdgeColoring &coloring) const;
};

/// e must be live and unconstrained with both endpoints of degree 3 and four
/// distinct other edges; nullopt otherwise.
std::optional<Splice> splice(const EdgeInstance &inst, int e);
bool splice_applies(const EdgeInstance &inst, int e);

/// Vertex-disjoint spliceable edges: a maximum matching among candidates.
std::vector<int> select_splices(const EdgeInstance &inst);

/// Vertices are live edges; graph edges join adjacent or constrained edges.
/// `edge_of[i]` gives the edge id of line-graph vertex i.
Graph line_graph(const EdgeInstance &inst, std::vector<int> &edge_of);

struct EdgeStats {
	int m3 = 0, m4 = 0;
	int selected_splices = 0;
	std::uint64_t splice_children = 0;
	std::uint64_t residues = 0;
	std::uint64_t pruned_edges = 0;
	vertexcolor::ColorStats color;
};

struct EdgeResult {
	std::optional<EdgeColoring> coloring; // indexed like the input edges
	EdgeStats stats;
};

EdgeResult solve_3edge(const EdgeInstance &inst, const vertexcolor::ColorOptions &options = {});

} // namespace trichrome::edgecolor
