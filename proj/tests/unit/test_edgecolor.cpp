#include "doctest.h"
#include "../support/oracles.h"
#include "trichrome/edgecolor.h"

using namespace trichrome;
using namespace trichrome::edgecolor;

namespace {

// Oracle view of a live instance: edges renumbered densely.
bool oracle_colorable(const EdgeInstance &inst) {
	std::vector<int> index(inst.edge_slots(), -1);
	oracle::Edges edges;
	for (int e = 0; e < inst.edge_slots(); ++e) {
		if (!inst.edge_alive(e)) continue;
		index[e] = static_cast<int>(edges.size());
		edges.push_back(inst.ends(e));
	}
	// parallel edges are adjacent through their shared endpoints, which the
	// oracle's endpoint test already sees
	std::vector<std::pair<int, int>> diffs;
	for (int e = 0; e < inst.edge_slots(); ++e)
		if (inst.edge_alive(e))
			for (int f : inst.differences(e))
				if (e < f) diffs.push_back({index[e], index[f]});
	return oracle::edge_colorable(inst.vertex_slots(), edges, diffs);
}

oracle::Edges k33() {
	oracle::Edges e;
	for (int i = 0; i < 3; ++i)
		for (int j = 3; j < 6; ++j) e.push_back({i, j});
	return e;
}

} // namespace

TEST_CASE("fixtures") {
	CHECK(solve_3edge(EdgeInstance::build(4, oracle::complete(4))).coloring.has_value());
	CHECK(solve_3edge(EdgeInstance::build(6, k33())).coloring.has_value());
	REQUIRE_FALSE(oracle::edge_colorable(10, oracle::petersen()));
	CHECK_FALSE(solve_3edge(EdgeInstance::build(10, oracle::petersen())).coloring.has_value());
	CHECK_FALSE(solve_3edge(EdgeInstance::build(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})).coloring.has_value());
}

TEST_CASE("normalize strips a path") {
	auto inst = EdgeInstance::build(4, {{0, 1}, {1, 2}, {2, 3}});
	auto n = normalize(inst);
	REQUIRE(n);
	CHECK(n->instance.live_edges() == 0);
	EdgeColoring c(3, 0);
	extend_greedily(inst, n->removed, c);
	CHECK(is_valid_coloring(inst, c));
}

TEST_CASE("splice on K4") {
	auto k4 = EdgeInstance::build(4, oracle::complete(4));
	auto s = splice(k4, 0);
	REQUIRE(s);
	REQUIRE(s->children.size() == 2);
	bool any = false;
	for (auto &ch : s->children) {
		if (!ch.feasible) continue;
		CHECK(ch.instance.live_edges() == k4.live_edges() - 3);
		CHECK(ch.instance.live_vertices() == k4.live_vertices() - 2);
		any = any || oracle_colorable(ch.instance);
	}
	CHECK(any);
	CHECK(select_splices(k4).size() >= 1);
}

TEST_CASE("splice is exact on random cubic-ish graphs") {
	std::mt19937_64 rng(17);
	int tried = 0;
	for (int it = 0; it < 600; ++it) {
		int n = 4 + it % 7;
		auto e = oracle::random_subcubic(rng, n, 4 * n);
		auto inst = EdgeInstance::build(n, e);
		for (int id = 0; id < inst.edge_slots(); ++id) {
			auto s = splice(inst, id);
			if (!s) continue;
			++tried;
			bool any = false;
			for (int k = 0; k < 2; ++k) {
				auto &ch = s->children[k];
				if (!ch.feasible) continue;
				CHECK(ch.instance.live_edges() == inst.live_edges() - 3);
				CHECK(ch.instance.live_vertices() == inst.live_vertices() - 2);
				if (!oracle_colorable(ch.instance)) continue;
				any = true;
				auto r = solve_3edge(ch.instance);
				REQUIRE(r.coloring);
				EdgeColoring col = *r.coloring;
				s->back_map(k, col);
				col.resize(inst.edge_slots());
				CHECK(is_valid_coloring(inst, col));
			}
			CHECK(any == oracle::edge_colorable(n, e));
			break;
		}
	}
	CHECK(tried > 100);
}

TEST_CASE("selected splices are vertex-disjoint and applicable") {
	std::mt19937_64 rng(19);
	for (int it = 0; it < 200; ++it) {
		int n = 6 + it % 15;
		auto inst = EdgeInstance::build(n, oracle::random_subcubic(rng, n, 5 * n));
		auto sel = select_splices(inst);
		std::set<int> used;
		for (int e : sel) {
			CHECK(splice_applies(inst, e));
			auto [u, v] = inst.ends(e);
			CHECK(used.insert(u).second);
			CHECK(used.insert(v).second);
		}
	}
}

TEST_CASE("solver agrees with brute force") {
	std::mt19937_64 rng(23);
	std::bernoulli_distribution coin(0.3);
	for (int it = 0; it < 400; ++it) {
		int n = 2 + it % 9;
		auto e = oracle::random_subcubic(rng, n, 3 * n);
		std::vector<std::pair<int, int>> diffs;
		if (it % 2 && e.size() >= 2) {
			std::uniform_int_distribution<int> pick(0, static_cast<int>(e.size()) - 1);
			for (int k = 0; k < 2; ++k) {
				int a = pick(rng), b = pick(rng);
				if (a != b) diffs.push_back({a, b});
			}
		}
		auto inst = EdgeInstance::build(n, e, diffs);
		auto r = solve_3edge(inst);
		CHECK(r.coloring.has_value() == oracle::edge_colorable(n, e, diffs));
		if (r.coloring) CHECK(is_valid_coloring(inst, *r.coloring));
	}
}
