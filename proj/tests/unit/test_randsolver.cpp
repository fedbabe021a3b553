#include "doctest.h"
#include "../support/convert.h"
#include "trichrome/randsolver.h"

#include <cmath>

using namespace trichrome;
using namespace trichrome::randsolver;

namespace {

// |observed - p| within 3 standard deviations of a binomial proportion.
bool within_3sigma(int hits, int trials, double p) {
	double sd = std::sqrt(p * (1 - p) / trials);
	return std::abs(static_cast<double>(hits) / trials - p) <= 3 * sd;
}

} // namespace

TEST_CASE("trial generators are reproducible and distinct") {
	auto a = trial_rng(7, 3), b = trial_rng(7, 3), c = trial_rng(7, 4), d = trial_rng(8, 3);
	auto x = a();
	CHECK(x == b());
	CHECK(x != c());
	CHECK(x != d());
}

TEST_CASE("restriction keeps a uniform subset") {
	std::mt19937_64 gen(1);
	auto raw = oracle::random_csp(gen, 4, {6}, 0.05);
	auto inst = to_instance(raw);
	std::vector<std::vector<int>> kept(4, std::vector<int>(6, 0));
	const int runs = 3000;
	for (int t = 0; t < runs; ++t) {
		auto rng = trial_rng(11, t);
		auto r = restrict_random(inst, 4, rng);
		REQUIRE(r);
		for (int v = 0; v < 4; ++v) {
			REQUIRE(r->active(v));
			CHECK(r->domain_size(v) == 4);
			for (int c : r->domain(v)) ++kept[v][c];
		}
		for (auto &con : r->constraints()) CHECK(inst.constraints().count(con) == 1);
	}
	for (int v = 0; v < 4; ++v)
		for (int c = 0; c < 6; ++c) CHECK(within_3sigma(kept[v][c], runs, 4.0 / 6.0));
}

TEST_CASE("per-trial success rate on unique-solution instances") {
	std::mt19937_64 gen(5);
	struct Case {
		int n;
		std::vector<int> sizes;
		Mode mode;
	};
	const std::vector<Case> cases = {{5, {5}, Mode::Restrict4}, {4, {6}, Mode::Restrict4}, {6, {5, 6}, Mode::Restrict4},
	                                 {5, {3}, Mode::Pairs},      {4, {4}, Mode::Pairs},      {5, {3, 4}, Mode::Pairs}};
	for (const auto &cs : cases) {
		auto raw = oracle::planted_unique(gen, cs.n, cs.sizes);
		REQUIRE(oracle::count_solutions(raw) == 1);
		auto inst = to_instance(raw);
		double p = success_probability(inst, cs.mode);
		double expect = 1.0;
		int keep = cs.mode == Mode::Restrict4 ? 4 : 2;
		for (auto &d : raw.domains) expect *= std::min(1.0, double(keep) / d.size());
		CHECK(p == doctest::Approx(expect).epsilon(1e-12));
		const int trials = 1500;
		int hits = 0;
		for (int t = 0; t < trials; ++t) hits += run_trial(inst, cs.mode, 99, t).has_value();
		INFO("n=" << cs.n << " p=" << p << " hits=" << hits);
		CHECK(within_3sigma(hits, trials, p));
	}
}

TEST_CASE("randomized verdicts agree with brute force") {
	std::mt19937_64 gen(17);
	int sat_seen = 0, unsat_seen = 0;
	for (int it = 0; it < 120; ++it) {
		int n = 3 + it % 4;
		auto raw = oracle::random_csp(gen, n, {4, 5, 6}, 0.35 + 0.1 * (it % 5));
		auto inst = to_instance(raw);
		bool truth = oracle::solvable(raw);
		TrialPolicy pol;
		pol.seed = it;
		pol.max_trials = 400;
		for (int keep : {4, 2}) {
			auto res = keep == 4 ? solve_random_restrict4(inst, pol) : solve_random_pairs(inst, pol);
			if (res.solution) {
				CHECK(truth);
				CHECK(oracle::satisfies(raw, *res.solution));
				CHECK(res.verdict == Verdict::Sat);
			} else {
				CHECK(res.verdict != Verdict::Sat);
				CHECK(res.trials == (inst.max_domain() <= keep ? 1 : pol.max_trials));
				CHECK(res.residual == doctest::Approx(std::pow(1 - res.success_bound, res.trials)));
				if (res.verdict == Verdict::UnsatLikely) CHECK(res.residual <= pol.delta);
			}
		}
		(truth ? sat_seen : unsat_seen)++;
	}
	CHECK(sat_seen > 10);
	CHECK(unsat_seen > 10);
}

TEST_CASE("small domains take a single exact trial") {
	std::mt19937_64 gen(23);
	for (int it = 0; it < 100; ++it) {
		auto raw4 = oracle::random_csp(gen, 5, {3, 4}, 0.2);
		raw4.domains[1] = {0, 1, 2, 3};
		auto inst4 = to_instance(raw4);
		auto r4 = solve_random_restrict4(inst4, {});
		CHECK(r4.trials == 1);
		CHECK(r4.solution.has_value() == oracle::solvable(raw4));
		CHECK(r4.verdict == (r4.solution ? Verdict::Sat : Verdict::UnsatLikely));

		auto raw2 = oracle::random_csp(gen, 6, {1, 2}, 0.3);
		auto inst2 = to_instance(raw2);
		auto r2 = solve_random_pairs(inst2, {});
		CHECK(r2.trials == 1);
		CHECK(r2.solution.has_value() == oracle::solvable(raw2));
	}
	auto raw3 = oracle::random_csp(gen, 3, {3}, 0.2);
	CHECK_THROWS_AS(solve_random_restrict4(to_instance(raw3), {}), csp::ContractViolation);
}

TEST_CASE("parallel trials reproduce the sequential run") {
	std::mt19937_64 gen(31);
	for (int it = 0; it < 15; ++it) {
		auto raw = oracle::planted_unique(gen, 6, {5, 6});
		auto inst = to_instance(raw);
		TrialPolicy seq;
		seq.seed = 1000 + it;
		seq.max_trials = 200;
		TrialPolicy par = seq;
		par.parallel = true;
		for (auto fn : {solve_random_restrict4, solve_random_pairs}) {
			auto a = fn(inst, seq), b = fn(inst, par), c = fn(inst, seq);
			CHECK(a.trials == b.trials);
			CHECK(a.solution == b.solution);
			CHECK(a.trials == c.trials);
			CHECK(a.verdict == b.verdict);
		}
	}
}

TEST_CASE("policy validation") {
	std::mt19937_64 gen(2);
	auto inst = to_instance(oracle::random_csp(gen, 3, {5}, 0.1));
	TrialPolicy bad;
	bad.max_trials = 0;
	CHECK_THROWS_AS(solve_random_pairs(inst, bad), std::invalid_argument);
	bad.max_trials = 5;
	bad.delta = 1.5;
	CHECK_THROWS_AS(solve_random_pairs(inst, bad), std::invalid_argument);
}
