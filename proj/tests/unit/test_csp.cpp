#include "doctest.h"
#include "../support/convert.h"
#include "trichrome/csp.h"
#include "trichrome/graph.h"

#include <random>

using namespace trichrome;
using namespace trichrome::csp;

namespace {

// raw copy of `p` with color c removed from v
oracle::RawCsp without(const oracle::RawCsp &p, int v, int c) {
	oracle::RawCsp q = p;
	std::erase(q.domains[v], c);
	std::erase_if(q.constraints, [&](auto &e) { return e.first == oracle::RawPair{v, c} || e.second == oracle::RawPair{v, c}; });
	return q;
}

// structural invariants: constraints join allowed colors of two active
// variables, partner lists are symmetric and size matches its definition
void check_invariants(const Instance &inst) {
	double size = 0;
	const double e = inst.epsilon();
	std::size_t half = 0;
	for (int v = 0; v < inst.num_vars(); ++v) {
		if (!inst.active(v)) continue;
		int k = inst.domain_size(v);
		size += k == 2 || k == 3 ? 1 : k >= 4 ? k - 2 - e : 0;
		for (int c : inst.domain(v))
			for (Pair q : inst.partners({v, c})) {
				REQUIRE(inst.active(q.var));
				CHECK(q.var != v);
				CHECK(inst.allows(q.var, q.color));
				const auto &back = inst.partners(q);
				CHECK(std::find(back.begin(), back.end(), Pair{v, c}) != back.end());
				++half;
			}
	}
	CHECK(half == 2 * inst.constraint_count());
	CHECK(inst.constraints().size() == inst.constraint_count());
	CHECK(inst.size() == doctest::Approx(size));
}

} // namespace

TEST_CASE("build and size") {
	auto three = Instance::build({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {});
	CHECK(three.size() == 3.0);
	auto four = Instance::build({{0, 1, 2, 3}}, {}, 0.095543);
	CHECK(four.size() == doctest::Approx(1.904457));
	std::vector<Constraint> dup = {make_constraint({0, 1}, {1, 1}), make_constraint({1, 1}, {0, 1})};
	auto d = Instance::build({{0, 1}, {1, 2}}, dup);
	CHECK(d.constraint_count() == 1);
	std::vector<Constraint> dangling = {make_constraint({0, 5}, {1, 1})};
	CHECK_THROWS_AS(Instance::build({{0, 1}, {1}}, dangling), BuildError);
	std::vector<Constraint> undeclared = {make_constraint({0, 0}, {3, 0})};
	CHECK_THROWS_AS(Instance::build({{0, 1}, {0}}, undeclared), BuildError);
	CHECK_THROWS_AS(Instance::build({{1, 1}}, {}), BuildError);
	CHECK_THROWS_AS(make_constraint({2, 0}, {2, 1}), BuildError);
}

TEST_CASE("is_solution fixtures") {
	auto free = Instance::build({{0, 1}, {2, 3}}, {});
	CHECK(is_solution(free, {1, 2}));
	CHECK_FALSE(is_solution(free, {2, 2}));
	std::vector<Constraint> one = {make_constraint({0, 1}, {1, 1})};
	auto inst = Instance::build({{1, 2}, {1, 2}}, one);
	CHECK_FALSE(is_solution(inst, {1, 1}));
	CHECK(is_solution(inst, {1, 2}));
	CHECK_THROWS_AS(is_solution(inst, {1}), ContractViolation);
}

TEST_CASE("assign and propagate") {
	std::vector<Constraint> none;
	auto a = Instance::build({{0, 1, 2}, {0, 1, 2}}, none);
	auto r = assign_and_propagate(a, 0, 1);
	REQUIRE(r);
	CHECK(r->size() == doctest::Approx(a.size() - a.contribution(0)));
	CHECK(r->domain(1) == std::vector<int>{0, 1, 2});

	std::vector<Constraint> kill = {make_constraint({0, 1}, {1, 1})};
	auto b = Instance::build({{1, 2}, {1}}, kill);
	CHECK_FALSE(assign_and_propagate(b, 0, 1));
	CHECK_THROWS_AS(assign_and_propagate(a, 0, 7), ContractViolation);

	std::mt19937_64 rng(41);
	for (int it = 0; it < 600; ++it) {
		int n = 2 + it % 5;
		auto raw = oracle::random_csp(rng, n, {2, 3, 4}, 0.15 + 0.05 * (it % 4));
		auto inst = to_instance(raw);
		int v = static_cast<int>(rng() % n);
		int c = raw.domains[v][rng() % raw.domains[v].size()];
		auto child = assign_and_propagate(inst, v, c);
		auto forced = raw;
		forced.domains[v] = {c};
		bool expect = oracle::solvable(forced);
		bool got = child && brute_force_solve(*child).has_value();
		CHECK(got == expect);
		if (got) {
			auto sol = brute_force_solve(*child);
			CHECK(is_solution(inst, *sol));
			CHECK((*sol)[v] == c);
			CHECK(child->size() <= inst.size() + 1e-12);
			check_invariants(*child);
		}
	}
}

TEST_CASE("delete color") {
	auto a = Instance::build({{0, 1, 2}}, {});
	auto r = delete_color(a, 0, 2);
	REQUIRE(r);
	CHECK(r->domain_size(0) == 2);
	CHECK(r->size() == 1.0);
	auto last = Instance::build({{0}, {0, 1}}, {});
	CHECK_FALSE(delete_color(last, 0, 0));

	std::mt19937_64 rng(42);
	for (int it = 0; it < 600; ++it) {
		int n = 2 + it % 5;
		auto raw = oracle::random_csp(rng, n, {2, 3, 4}, 0.1 + 0.05 * (it % 4));
		auto inst = to_instance(raw);
		int v = static_cast<int>(rng() % n);
		int c = raw.domains[v][rng() % raw.domains[v].size()];
		auto child = delete_color(inst, v, c);
		auto avoided = without(raw, v, c);
		std::uint64_t expect = avoided.domains[v].empty() ? 0 : oracle::count_solutions(avoided);
		std::uint64_t got = child ? count_solutions(*child) : 0;
		CHECK(got == expect);
		if (child) {
			CHECK(child->size() <= inst.size() + 1e-12);
			check_invariants(*child);
			if (auto sol = brute_force_solve(*child)) {
				CHECK(is_solution(inst, *sol));
				CHECK((*sol)[v] != c);
			}
		}
	}
}

TEST_CASE("merge isolated pair") {
	std::mt19937_64 rng(43);
	const double e = Instance::build({{0}}, {}).epsilon();
	int merged = 0;
	for (int it = 0; it < 500; ++it) {
		int n = 2 + it % 5;
		auto raw = oracle::random_csp(rng, n, {3, 4}, 0.12);
		raw.domains[0] = {0, 1, 2};
		raw.domains[1] = {0, 1, 2};
		std::erase_if(raw.constraints, [&](auto &c) {
			auto bad = [&](oracle::RawPair p) {
				return (p.var <= 1 && p.color >= 3) || (p.var == 0 && p.color == 0) || (p.var == 1 && p.color == 0);
			};
			return bad(c.first) || bad(c.second);
		});
		raw.constraints.push_back({{0, 0}, {1, 0}});
		auto inst = to_instance(raw);
		double before = inst.size();
		Instance m = inst;
		int u = m.merge_isolated_pair(Pair{0, 0}, Pair{1, 0});
		++merged;
		CHECK(m.domain_size(u) == 4);
		CHECK(m.size() == doctest::Approx(before - 2 + (2 - e)));
		check_invariants(m);
		auto sol = brute_force_solve(m);
		CHECK(sol.has_value() == oracle::solvable(raw));
		if (sol) {
			sol->resize(inst.num_vars());
			CHECK(is_solution(inst, *sol));
		}
	}
	CHECK(merged == 500);

	auto bad = Instance::build({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}},
	                           std::vector<Constraint>{make_constraint({0, 0}, {1, 0}), make_constraint({0, 0}, {2, 1})});
	CHECK_THROWS_AS(bad.merge_isolated_pair(Pair{0, 0}, Pair{1, 0}), ContractViolation);
}

TEST_CASE("split four-color variables") {
	std::mt19937_64 rng(44);
	const double e = Instance::build({{0}}, {}).epsilon();
	for (int it = 0; it < 400; ++it) {
		int n = 1 + it % 5;
		auto raw = oracle::random_csp(rng, n, {3, 4}, 0.15);
		raw.domains[0] = {0, 1, 2, 3};
		auto inst = to_instance(raw);
		Instance s = inst;
		auto [v, w] = s.split_four_color(0);
		CHECK(s.domain_size(v) == 3);
		CHECK(s.domain_size(w) == 3);
		CHECK(s.size() == doctest::Approx(inst.size() + e));
		check_invariants(s);
		auto sol = brute_force_solve(s);
		CHECK(sol.has_value() == oracle::solvable(raw));
		if (sol) {
			sol->resize(inst.num_vars());
			CHECK(is_solution(inst, *sol));
		}
		// merging the halves again restores the shape up to relabeling
		Instance back = s;
		int u = back.merge_isolated_pair(v, w);
		CHECK(back.domain_size(u) == 4);
		CHECK(back.size() == doctest::Approx(inst.size()));
		CHECK(back.constraint_count() == inst.constraint_count());
		CHECK(count_solutions(back) == count_solutions(inst));
	}
	auto three = Instance::build({{0, 1, 2}}, {});
	CHECK_THROWS_AS(three.split_four_color(0), ContractViolation);
}

TEST_CASE("2-color CSP solver") {
	// (x or y)(!x or y)(x or !y)(!x or !y) with color 1 = true
	std::vector<Constraint> all = {make_constraint({0, 0}, {1, 0}), make_constraint({0, 1}, {1, 0}),
	                               make_constraint({0, 0}, {1, 1}), make_constraint({0, 1}, {1, 1})};
	CHECK_FALSE(solve_22csp(Instance::build({{0, 1}, {0, 1}}, all)));
	auto single = solve_22csp(Instance::build({{3, 5}}, {}));
	REQUIRE(single);
	CHECK(((*single)[0] == 3 || (*single)[0] == 5));
	CHECK_THROWS_AS(solve_22csp(Instance::build({{0, 1, 2}}, {})), ContractViolation);

	std::mt19937_64 rng(45);
	for (int it = 0; it < 3000; ++it) {
		int n = 1 + it % 4;
		auto raw = oracle::random_csp(rng, n, {1, 2}, 0.5);
		if (raw.constraints.size() > 6) raw.constraints.resize(6);
		auto inst = to_instance(raw);
		auto sol = solve_22csp(inst);
		CHECK(sol.has_value() == oracle::solvable(raw));
		if (sol) CHECK(oracle::satisfies(raw, *sol));
	}
}

TEST_CASE("brute force oracle fixtures") {
	Graph tri(3);
	tri.add_edge(0, 1);
	tri.add_edge(1, 2);
	tri.add_edge(0, 2);
	CHECK(count_solutions(from_graph_coloring(tri)) == 6);
	Graph k4(4);
	for (int u = 0; u < 4; ++u)
		for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
	CHECK_FALSE(brute_force_solve(from_graph_coloring(k4)));
	auto empty = brute_force_solve(Instance::build({}, {}));
	REQUIRE(empty);
	CHECK(empty->empty());
	// first solution in lexicographic order
	auto lex = brute_force_solve(Instance::build({{0, 1}, {0, 1}}, std::vector<Constraint>{make_constraint({0, 0}, {1, 0})}));
	CHECK(*lex == Assignment{0, 1});
}

TEST_CASE("graph coloring translation") {
	Graph tri(3);
	tri.add_edge(0, 1);
	tri.add_edge(1, 2);
	tri.add_edge(0, 2);
	CHECK(from_graph_coloring(tri).constraint_count() == 9);
	Graph e(2);
	e.add_edge(0, 1);
	CHECK(from_graph_coloring(e, {{1, 2}, {3}}).constraint_count() == 0);
	CHECK_THROWS_AS(from_graph_coloring(e, {{1, 2, 3, 4}, {1}}), ContractViolation);

	std::mt19937_64 rng(46);
	for (int it = 0; it < 500; ++it) {
		int n = 1 + it % 6;
		auto edges = oracle::random_graph(rng, n, 0.5);
		Graph g(n);
		for (auto [u, v] : edges) g.add_edge(u, v);
		std::vector<std::vector<int>> lists(n);
		for (auto &l : lists) {
			for (int c = 1; c <= 4; ++c)
				if (rng() % 2) l.push_back(c);
			while (l.size() > 3) l.pop_back();
		}
		auto inst = from_graph_coloring(g, lists);
		CHECK(brute_force_solve(inst).has_value() == oracle::list_colorable(n, edges, lists));
	}
}
