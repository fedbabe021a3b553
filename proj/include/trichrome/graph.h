#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace trichrome {

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
	Graph() = default;
	explicit Graph(int n);

	int num_vertices() const { return static_cast<int>(adj_.size()); }
	std::size_t num_edges() const { return edge_count_; }

	/// Returns false if the edge was already present. Self-loops and
	/// out-of-range endpoints throw std::invalid_argument.
	bool add_edge(int u, int v);
	bool has_edge(int u, int v) const;
	const std::vector<int> &neighbors(int v) const { return adj_.at(v); }
	int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
	int max_degree() const;

	/// Edges as (u, v) with u < v, sorted.
	std::vector<std::pair<int, int>> edges() const;

	/// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
	Graph induced(std::span<const int> vertices) const;

	bool operator==(const Graph &) const = default;

private:
	std::vector<std::vector<int>> adj_;
	std::size_t edge_count_ = 0;
};

// --- bipartite matching -----------------------------------------------------

/// Maximum-cardinality matching by repeated augmenting paths. `edges` are
/// (left, right) index pairs. Returns, for each left vertex, its matched
/// right vertex or -1. Deterministic for a given edge order.
std::vector<int> max_bipartite_matching(int left_count, int right_count,
                                        std::span<const std::pair<int, int>> edges);

// --- integral maximum flow --------------------------------------------------

struct Arc {
	int from;
	int to;
	std::int64_t capacity;
};

struct FlowNetwork {
	int node_count = 0;
	int source = 0;
	int sink = 0;
	std::vector<Arc> arcs;

	int add_node() { return node_count++; }
	int add_arc(int from, int to, std::int64_t capacity);
};

struct Flow {
	std::int64_t value = 0;
	std::vector<std::int64_t> arc_flow; // parallel to FlowNetwork::arcs
};

/// Shortest augmenting paths (Edmonds-Karp). Flow on every arc is integral.
Flow max_flow_integer(const FlowNetwork &network);

/// Capacity and conservation check, used by tests and debug assertions.
bool is_feasible_flow(const FlowNetwork &network, const Flow &flow);

// --- K_{1,3} packing ----------------------------------------------------------

struct Claw {
	int center;
	std::array<int, 3> leaves;
};

/// Vertex-disjoint claws (center adjacent to all three leaves), maximal in
/// the sense that no claw can be removed and replaced by two or more claws
/// on the freed and unused vertices. Restricted to `allowed` vertices when
/// the mask is nonempty.
std::vector<Claw> k13_packing(const Graph &g, const std::vector<bool> &allowed = {});

} // namespace trichrome
