#include "doctest.h"
#include "../support/oracles.h"
#include "../support/reduce.h"
#include "trichrome/vertexcolor.h"
#include "trichrome/workfactor.h"

using namespace trichrome;
using namespace trichrome::vertexcolor;

namespace {

Graph make_graph(int n, const oracle::Edges &e) {
	Graph g(n);
	for (auto [u, v] : e) g.add_edge(u, v);
	return g;
}

oracle::Edges edges_of(const Graph &g) { return g.edges(); }

} // namespace

TEST_CASE("fixtures") {
	CHECK(solve_3coloring(make_graph(3, oracle::complete(3))).coloring.has_value());
	CHECK_FALSE(solve_3coloring(make_graph(4, oracle::complete(4))).coloring.has_value());
	oracle::Edges c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
	CHECK(solve_3coloring(make_graph(5, c5)).coloring.has_value());
	Graph pet = make_graph(10, oracle::petersen());
	REQUIRE(oracle::list_colorable(10, oracle::petersen()));
	auto r = solve_3coloring(pet);
	REQUIRE(r.coloring);
	CHECK(is_proper_coloring(pet, *r.coloring));
}

TEST_CASE("bushy forest basics") {
	Graph star(5);
	for (int i = 1; i <= 4; ++i) star.add_edge(0, i);
	auto f = find_bushy_forest(star);
	REQUIRE(f.trees.size() == 1);
	auto a = accounting(star, f);
	CHECK(a.p == 1);
	CHECK(a.q == 0);
	CHECK(a.r == 4);
	CHECK(check_bushy_forest(star, f).empty());

	oracle::Edges path{{0, 1}, {1, 2}, {2, 3}};
	CHECK(find_bushy_forest(make_graph(4, path)).trees.empty());
}

TEST_CASE("accounting formula") {
	auto worst = accounting_from_counts(0, 3, 6, 12, 28);
	CHECK(worst.n() == 49);
	CHECK(worst.base() == doctest::Approx(reference_constant("coloring_base")).epsilon(1e-9));
	CHECK(worst.base() == doctest::Approx(1.3289).epsilon(1e-4));
	CHECK(worst.constraint_triple_holds());
	CHECK(accounting_from_counts(1, 0, 0, 0, 0).predicted_cost() == doctest::Approx(3.0));
}

TEST_CASE("height-two forest on the flow figure shape") {
	// Three claws; the first is next to a degree-4 vertex.
	Graph g(20);
	auto claw = [&](int c, int a, int b, int d) {
		g.add_edge(c, a);
		g.add_edge(c, b);
		g.add_edge(c, d);
	};
	claw(0, 1, 2, 3);
	claw(4, 5, 6, 7);
	claw(8, 9, 10, 11);
	g.add_edge(1, 19);
	g.add_edge(2, 19);
	g.add_edge(3, 19);
	g.add_edge(1, 18);
	for (int v = 12; v <= 16; ++v) {
		g.add_edge(2, v);
		if (v < 15) g.add_edge(5, v);
	}
	g.add_edge(9, 17);
	BushyForest empty;
	empty.member.assign(20, false);
	auto h = build_height2_forest(g, empty);
	CHECK(check_height2_forest(g, empty, h).empty());
	for (auto &t : h.trees) CHECK(static_cast<int>(t.grandchildren.size()) <= t.capacity);
}

TEST_CASE("degree-3 branches preserve colorability") {
	std::mt19937_64 rng(5);
	int branched = 0;
	for (int it = 0; it < 400; ++it) {
		int n = 5 + it % 4;
		Graph g = make_graph(n, it % 2 ? oracle::random_subcubic(rng, n, 3 * n) : oracle::random_graph(rng, n, 0.45));
		auto kids = reduce_degree3_structures(g);
		if (!kids) continue;
		++branched;
		bool any = false;
		for (auto &k : *kids) {
			CHECK(k.graph.num_vertices() == n - 1);
			any = any || oracle::list_colorable(k.graph.num_vertices(), edges_of(k.graph));
		}
		CHECK(any == oracle::list_colorable(n, edges_of(g)));
	}
	CHECK(branched > 100);
}

TEST_CASE("structural invariants on reduced random graphs") {
	std::mt19937_64 rng(99);
	int covers = 0;
	for (int it = 0; it < 300; ++it) {
		int n = 10 + it % 21;
		auto r = reduced(make_graph(n, oracle::random_graph(rng, n, 0.15 + 0.01 * (it % 20))));
		if (!r || r->num_vertices() == 0) continue;
		const Graph &g = *r;
		auto f = find_bushy_forest(g);
		CHECK(check_bushy_forest(g, f) == "");
		auto h = build_height2_forest(g, f);
		CHECK(check_height2_forest(g, f, h) == "");
		auto a = accounting(g, f);
		CHECK(a.n() == g.num_vertices());
		INFO("p q r s t = ", a.p, " ", a.q, " ", a.r, " ", a.s, " ", a.t);
		CHECK(a.constraint_triple_holds());
		++covers;
	}
	CHECK(covers > 100);
}

TEST_CASE("pipeline agrees with brute force") {
	std::mt19937_64 rng(123);
	for (int it = 0; it < 400; ++it) {
		int n = 1 + it % 10;
		auto e = oracle::random_graph(rng, n, 0.2 + 0.05 * (it % 8));
		Graph g = make_graph(n, e);
		auto r = solve_3coloring(g);
		CHECK(r.coloring.has_value() == oracle::list_colorable(n, e));
		if (r.coloring) CHECK(oracle::proper_coloring(n, e, *r.coloring));
		for (auto &a : r.stats.covers) CHECK(a.constraint_triple_holds());
	}
}

TEST_CASE("list coloring agrees with brute force") {
	std::mt19937_64 rng(321);
	std::uniform_int_distribution<int> col(1, 5), len(1, 3);
	for (int it = 0; it < 300; ++it) {
		int n = 1 + it % 8;
		auto e = oracle::random_graph(rng, n, 0.4);
		std::vector<std::vector<int>> lists(n);
		for (auto &l : lists) {
			std::set<int> s;
			int k = len(rng);
			while (static_cast<int>(s.size()) < k) s.insert(col(rng));
			l.assign(s.begin(), s.end());
		}
		auto r = solve_list_coloring(make_graph(n, e), lists);
		CHECK(r.coloring.has_value() == oracle::list_colorable(n, e, lists));
	}
}
