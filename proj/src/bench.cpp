#include "trichrome/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "trichrome/bruteforce.h"
#include "trichrome/edgecolor.h"
#include "trichrome/generate.h"
#include "trichrome/sat.h"
#include "trichrome/vertexcolor.h"
#include "trichrome/workfactor.h"

namespace trichrome::bench {

Kind parse_kind(const std::string &name) {
	if (name == "csp") return Kind::Csp;
	if (name == "color") return Kind::Color;
	if (name == "edgecolor") return Kind::EdgeColor;
	if (name == "sat") return Kind::Sat;
	throw std::invalid_argument("unknown bench kind '" + name + "'");
}

std::string kind_name(Kind k) {
	switch (k) {
	case Kind::Csp: return "csp";
	case Kind::Color: return "color";
	case Kind::EdgeColor: return "edgecolor";
	case Kind::Sat: return "sat";
	}
	return "?";
}

void add_search_stats(report::Report &r, const std::string &prefix, const cspsolver::SearchStats &s,
                      double epsilon) {
	r.set(prefix + "calls", static_cast<unsigned long long>(s.calls));
	r.set(prefix + "base_cases", static_cast<unsigned long long>(s.base_cases));
	r.set(prefix + "base_case_failures", static_cast<unsigned long long>(s.base_case_failures));
	for (int i = 0; i < cspsolver::kRuleCount; ++i) {
		auto rule = static_cast<cspsolver::Rule>(i);
		const auto &rs = s.rules[i];
		std::string k = prefix + "rule." + std::string(cspsolver::rule_name(rule)) + ".";
		r.set(k + "triggers", static_cast<unsigned long long>(rs.triggers));
		r.set(k + "branches", static_cast<unsigned long long>(rs.branches));
		r.set(k + "min_decrement", rs.min_decrement);
		r.set(k + "worst_factor", rs.worst_factor);
		r.set(k + "claimed_factor", cspsolver::claimed_work_factor(rule, epsilon));
		r.set(k + "shortfalls", static_cast<unsigned long long>(rs.shortfalls));
	}
}

namespace {

struct Outcome {
	bool sat = false;
	std::optional<bool> oracle;
	double calls = 1;  // search-tree nodes
	double size = 0;   // exponent base for the effective factor
};

int default_limit(const Params &p) {
	switch (p.kind) {
	case Kind::Csp: return p.d <= 3 ? 10 : 8;
	case Kind::Color: return 16;
	case Kind::EdgeColor: return 16;
	case Kind::Sat: return 20;
	}
	return 0;
}

} // namespace

report::Report run(const Params &p) {
	if (p.n < 0 || p.count < 1) throw std::invalid_argument("bench needs n >= 0 and count >= 1");
	if (p.kind == Kind::Csp && (p.d < 3 || p.d > 4)) throw std::invalid_argument("csp bench needs d in {3, 4}");
	const double eps = default_epsilon();
	const int limit = p.oracle_limit >= 0 ? p.oracle_limit : default_limit(p);
	const bool check = p.n <= limit;
	cspsolver::SolveOptions sopt;
	sopt.parallel = p.parallel;
	vertexcolor::ColorOptions copt;
	copt.parallel = p.parallel;

	cspsolver::SearchStats total;
	int sat = 0, unsat = 0, checked = 0, agree = 0;
	double sum = 0, worst = 0;
	int measured = 0;
	const auto start = std::chrono::steady_clock::now();
	for (int i = 0; i < p.count; ++i) {
		const std::uint64_t seed = p.seed + static_cast<std::uint64_t>(i);
		Outcome o;
		switch (p.kind) {
		case Kind::Csp: {
			auto inst = gen::random_csp(p.n, p.d, p.density, seed);
			auto res = cspsolver::solve(inst, sopt);
			o.sat = res.solution.has_value();
			o.calls = static_cast<double>(res.stats.calls);
			o.size = res.stats.root_size;
			total.merge(res.stats);
			if (check) o.oracle = csp::brute_force_solve(inst).has_value();
			break;
		}
		case Kind::Color: {
			auto g = gen::random_graph(p.n, p.density, seed);
			auto res = vertexcolor::solve_3coloring(g, copt);
			o.sat = res.coloring.has_value();
			const auto &s = res.stats;
			o.calls = static_cast<double>(1 + s.degree3_branches + s.precolorings + s.csp.calls);
			o.size = p.n;
			total.merge(s.csp);
			if (check) o.oracle = brute::list_coloring(g, std::vector<std::vector<int>>(p.n, {1, 2, 3})).has_value();
			break;
		}
		case Kind::EdgeColor: {
			auto g = gen::random_subcubic(p.n, p.density, seed);
			auto edges = g.edges();
			auto res = edgecolor::solve_3edge(edgecolor::EdgeInstance::build(p.n, edges), copt);
			o.sat = res.coloring.has_value();
			const auto &s = res.stats;
			o.calls = static_cast<double>(1 + s.splice_children + s.color.degree3_branches + s.color.precolorings +
			                              s.color.csp.calls);
			o.size = p.n;
			total.merge(s.color.csp);
			if (check) o.oracle = brute::edge_coloring(edges, {}).has_value();
			break;
		}
		case Kind::Sat: {
			int t = static_cast<int>(std::lround(p.density * p.n));
			auto f = gen::random_3cnf(p.n, t, seed);
			auto res = sat::solve_3sat(f, sopt);
			o.sat = res.model.has_value();
			o.calls = static_cast<double>(std::max<std::uint64_t>(1, res.stats.calls));
			o.size = res.t;
			total.merge(res.stats);
			if (check) o.oracle = brute::sat(f).has_value();
			break;
		}
		}
		(o.sat ? sat : unsat)++;
		if (o.oracle) {
			++checked;
			agree += *o.oracle == o.sat;
		}
		if (o.size > 0) {
			double f = std::pow(o.calls, 1.0 / o.size);
			sum += f;
			worst = std::max(worst, f);
			++measured;
		}
	}
	const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

	double target = reference_constant("lambda");
	if (p.kind == Kind::Color) target = reference_constant("coloring_base");
	if (p.kind == Kind::EdgeColor) target = std::sqrt(2.0);

	report::Report r;
	r.set("kind", kind_name(p.kind));
	r.set("n", p.n);
	if (p.kind == Kind::Csp) r.set("d", p.d);
	r.set("density", p.density);
	r.set("count", p.count);
	r.set("seed", static_cast<unsigned long long>(p.seed));
	r.set("sat", sat);
	r.set("unsat", unsat);
	r.set("oracle_checked", checked);
	r.set("oracle_agree", agree);
	r.set("effective_work_factor_mean", measured ? sum / measured : 1.0);
	r.set("effective_work_factor_max", measured ? worst : 1.0);
	r.set("target_work_factor", target);
	r.set("lambda", reference_constant("lambda"));
	r.set("wall_time_s", secs);
	add_search_stats(r, "csp.", total, eps);
	return r;
}

} // namespace trichrome::bench
