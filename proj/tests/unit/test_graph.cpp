#include "doctest.h"
#include "../support/oracles.h"
#include "trichrome/generate.h"
#include "trichrome/graph.h"

#include <set>

using namespace trichrome;

namespace {

bool valid_claw(const Graph &g, const Claw &c) {
	std::set<int> s = {c.center, c.leaves[0], c.leaves[1], c.leaves[2]};
	if (s.size() != 4) return false;
	for (int l : c.leaves)
		if (!g.has_edge(c.center, l)) return false;
	return true;
}

// Exhaustive search: can some claw of the packing be swapped for two
// disjoint claws inside its own vertices plus the uncovered ones?
bool exchange_possible(const Graph &g, const std::vector<Claw> &packing, const std::vector<bool> &allowed) {
	const int n = g.num_vertices();
	std::vector<int> owner(n, -1);
	for (std::size_t i = 0; i < packing.size(); ++i) {
		owner[packing[i].center] = static_cast<int>(i);
		for (int l : packing[i].leaves) owner[l] = static_cast<int>(i);
	}
	for (std::size_t i = 0; i < packing.size(); ++i) {
		std::vector<bool> free(n);
		for (int v = 0; v < n; ++v) free[v] = (owner[v] < 0 || owner[v] == static_cast<int>(i)) && (allowed.empty() || allowed[v]);
		std::vector<std::array<int, 4>> claws;
		for (int c = 0; c < n; ++c) {
			if (!free[c]) continue;
			std::vector<int> nb;
			for (int u : g.neighbors(c))
				if (free[u]) nb.push_back(u);
			for (std::size_t a = 0; a < nb.size(); ++a)
				for (std::size_t b = a + 1; b < nb.size(); ++b)
					for (std::size_t d = b + 1; d < nb.size(); ++d) claws.push_back({c, nb[a], nb[b], nb[d]});
		}
		for (std::size_t x = 0; x < claws.size(); ++x)
			for (std::size_t y = x + 1; y < claws.size(); ++y) {
				bool disjoint = true;
				for (int p : claws[x])
					for (int q : claws[y]) disjoint = disjoint && p != q;
				if (disjoint) return true;
			}
	}
	return false;
}

// no claw fits entirely in uncovered allowed vertices
bool greedy_maximal(const Graph &g, const std::vector<Claw> &packing, const std::vector<bool> &allowed) {
	const int n = g.num_vertices();
	std::vector<bool> used(n, false);
	for (const auto &c : packing) {
		used[c.center] = true;
		for (int l : c.leaves) used[l] = true;
	}
	for (int c = 0; c < n; ++c) {
		if (used[c] || (!allowed.empty() && !allowed[c])) continue;
		int k = 0;
		for (int u : g.neighbors(c)) k += !used[u] && (allowed.empty() || allowed[u]);
		if (k >= 3) return false;
	}
	return true;
}

Graph from_edges(int n, const oracle::Edges &e) {
	Graph g(n);
	for (auto [u, v] : e) g.add_edge(u, v);
	return g;
}

} // namespace

TEST_CASE("graph basics") {
	Graph g(4);
	CHECK(g.add_edge(0, 1));
	CHECK_FALSE(g.add_edge(1, 0));
	CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
	CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
	g.add_edge(1, 2);
	CHECK(g.num_edges() == 2);
	CHECK(g.degree(1) == 2);
	CHECK(g.max_degree() == 2);
	CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
	std::vector<int> keep = {2, 1};
	Graph h = g.induced(keep);
	CHECK(h.num_vertices() == 2);
	CHECK(h.has_edge(0, 1));
	CHECK(h.num_edges() == 1);
}

TEST_CASE("bipartite matching") {
	std::vector<std::pair<int, int>> k33;
	for (int a = 0; a < 3; ++a)
		for (int b = 0; b < 3; ++b) k33.push_back({a, b});
	auto m = max_bipartite_matching(3, 3, k33);
	CHECK(std::count_if(m.begin(), m.end(), [](int x) { return x >= 0; }) == 3);
	std::vector<std::pair<int, int>> star = {{0, 0}, {0, 1}, {0, 2}, {0, 3}};
	auto s = max_bipartite_matching(1, 4, star);
	CHECK(s[0] >= 0);

	std::mt19937_64 rng(51);
	for (int it = 0; it < 1500; ++it) {
		int l = 1 + it % 7, r = 1 + (it / 7) % 7;
		oracle::Edges e;
		for (int a = 0; a < l; ++a)
			for (int b = 0; b < r; ++b)
				if (rng() % 3 == 0) e.push_back({a, b});
		auto match = max_bipartite_matching(l, r, e);
		std::set<int> rights;
		int size = 0;
		for (int a = 0; a < l; ++a) {
			if (match[a] < 0) continue;
			++size;
			CHECK(std::find(e.begin(), e.end(), std::pair(a, match[a])) != e.end());
			CHECK(rights.insert(match[a]).second);
		}
		CHECK(size == oracle::max_matching_size(l, r, e));
		CHECK(max_bipartite_matching(l, r, e) == match);
	}
}

TEST_CASE("integral max flow") {
	FlowNetwork one;
	one.source = one.add_node();
	one.sink = one.add_node();
	one.add_arc(0, 1, 5);
	CHECK(max_flow_integer(one).value == 5);

	std::mt19937_64 rng(52);
	for (int it = 0; it < 800; ++it) {
		int nodes = 2 + it % 7;
		FlowNetwork net;
		for (int i = 0; i < nodes; ++i) net.add_node();
		net.source = 0;
		net.sink = nodes - 1;
		std::vector<oracle::RawArc> raw;
		for (int a = 0; a < nodes; ++a)
			for (int b = 0; b < nodes; ++b)
				if (a != b && rng() % 3 == 0) {
					long long cap = static_cast<long long>(rng() % 6);
					net.add_arc(a, b, cap);
					raw.push_back({a, b, cap});
				}
		auto f = max_flow_integer(net);
		CHECK(is_feasible_flow(net, f));
		CHECK(f.value == oracle::min_cut(nodes, 0, nodes - 1, raw));
	}
}

TEST_CASE("three trees with capacities 5, 3, 3") {
	// source -> candidate (1) -> adjacent tree (1) -> sink (capacity)
	FlowNetwork net;
	net.source = net.add_node();
	net.sink = net.add_node();
	const int caps[3] = {5, 3, 3};
	int tree[3];
	for (int i = 0; i < 3; ++i) {
		tree[i] = net.add_node();
		net.add_arc(tree[i], net.sink, caps[i]);
	}
	std::vector<std::vector<int>> arcs_to(3);
	for (int c = 0; c < 14; ++c) {
		int v = net.add_node();
		net.add_arc(net.source, v, 1);
		for (int i = 0; i < 3; ++i)
			if ((c + i) % 3 != 2) arcs_to[i].push_back(net.add_arc(v, tree[i], 1));
	}
	auto f = max_flow_integer(net);
	CHECK(is_feasible_flow(net, f));
	CHECK(f.value == 11);
	for (int i = 0; i < 3; ++i) {
		std::int64_t load = 0;
		for (int a : arcs_to[i]) {
			CHECK((f.arc_flow[a] == 0 || f.arc_flow[a] == 1));
			load += f.arc_flow[a];
		}
		CHECK(load <= caps[i]);
	}
}

TEST_CASE("claw packing fixtures") {
	Graph k13(4);
	for (int l = 1; l <= 3; ++l) k13.add_edge(0, l);
	auto p = k13_packing(k13);
	REQUIRE(p.size() == 1);
	CHECK(p[0].center == 0);
	Graph path(6);
	for (int v = 0; v + 1 < 6; ++v) path.add_edge(v, v + 1);
	CHECK(k13_packing(path).empty());
}

TEST_CASE("claw packing is exchange-maximal") {
	int exchanges_possible_greedy = 0;
	for (int it = 0; it < 300; ++it) {
		int n = 4 + 2 * (it % 5); // 4..12, even for cubic graphs
		Graph g = it % 3 == 0 ? gen::random_regular(n, 3, 1000 + it)
		                      : gen::random_graph(n, 0.2 + 0.1 * (it % 4), 2000 + it);
		std::vector<bool> allowed;
		if (it % 4 == 3) {
			allowed.assign(n, true);
			for (int v = 0; v < n; v += 3) allowed[v] = false;
		}
		auto packing = k13_packing(g, allowed);
		std::set<int> seen;
		for (const auto &c : packing) {
			CHECK(valid_claw(g, c));
			CHECK(seen.insert(c.center).second);
			if (!allowed.empty()) CHECK(allowed[c.center]);
			for (int l : c.leaves) {
				CHECK(seen.insert(l).second);
				if (!allowed.empty()) CHECK(allowed[l]);
			}
		}
		CHECK(greedy_maximal(g, packing, allowed));
		CHECK_FALSE(exchange_possible(g, packing, allowed));
		// the check is not vacuous: one greedy claw per component often blocks two
		std::vector<Claw> first;
		if (!packing.empty()) first.push_back(packing.front());
		exchanges_possible_greedy += exchange_possible(g, first, allowed);
	}
	CHECK(exchanges_possible_greedy > 20);
}
