#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trichrome/bench.h"
#include "trichrome/cli.h"
#include "trichrome/cspsolver.h"
#include "trichrome/edgecolor.h"
#include "trichrome/randsolver.h"
#include "trichrome/sat.h"
#include "trichrome/vertexcolor.h"
#include "trichrome/workfactor.h"

namespace py = pybind11;
using namespace trichrome;

namespace {

using RawConstraint = std::pair<std::pair<int, int>, std::pair<int, int>>;

csp::Instance make_instance(const std::vector<std::vector<int>> &domains, const std::vector<RawConstraint> &cons) {
	std::vector<csp::Constraint> cs;
	for (auto &[a, b] : cons) cs.push_back(csp::make_constraint({a.first, a.second}, {b.first, b.second}));
	return csp::Instance::build(domains, cs);
}

Graph make_graph(int n, const std::vector<std::pair<int, int>> &edges) {
	Graph g(n);
	for (auto [u, v] : edges) g.add_edge(u, v);
	return g;
}

py::dict stats_dict(const cspsolver::SearchStats &s) {
	py::dict d;
	d["calls"] = s.calls;
	d["base_cases"] = s.base_cases;
	d["effective_work_factor"] = s.effective_work_factor();
	py::dict rules;
	for (int r = 0; r < cspsolver::kRuleCount; ++r) {
		auto &rs = s.rules[r];
		py::dict x;
		x["triggers"] = rs.triggers;
		x["branches"] = rs.branches;
		x["worst_factor"] = rs.worst_factor;
		x["shortfalls"] = rs.shortfalls;
		rules[py::str(std::string(cspsolver::rule_name(static_cast<cspsolver::Rule>(r))))] = x;
	}
	d["rules"] = rules;
	return d;
}

const char *verdict_name(randsolver::Verdict v) {
	switch (v) {
	case randsolver::Verdict::Sat: return "SAT";
	case randsolver::Verdict::UnsatLikely: return "UNSAT";
	default: return "UNKNOWN";
	}
}

} // namespace

PYBIND11_MODULE(_core, m) {
	m.doc() = "Exact exponential-time solvers for small CSP, coloring and 3-SAT instances";

	py::register_exception<InvalidQuery>(m, "InvalidQuery", PyExc_ValueError);
	py::register_exception<csp::BuildError>(m, "BuildError", PyExc_ValueError);
	py::register_exception<csp::ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

	m.def("work_factor", [](const std::vector<double> &r) { return work_factor(r); }, py::arg("reductions"));
	m.def("optimize_epsilon", [] {
		auto o = optimize_epsilon();
		return std::pair(o.epsilon, o.lambda);
	});
	m.def("reference_constants", [] {
		py::dict d;
		for (auto &c : reference_constants()) d[py::str(c.name)] = c.value;
		return d;
	});

	m.def(
	    "solve_csp",
	    [](const std::vector<std::vector<int>> &domains, const std::vector<RawConstraint> &constraints, bool parallel) {
		    auto inst = make_instance(domains, constraints);
		    cspsolver::SolveOptions opt;
		    opt.parallel = parallel;
		    cspsolver::SolveResult r;
		    {
			    py::gil_scoped_release nogil;
			    r = cspsolver::solve(inst, opt);
		    }
		    return std::pair(r.solution, stats_dict(r.stats));
	    },
	    py::arg("domains"), py::arg("constraints"), py::arg("parallel") = false,
	    "Domains of at most four colors; constraints are ((var, color), (var, color)) forbidden pairs. Returns "
	    "(solution or None, stats).");

	m.def(
	    "solve_csp_random",
	    [](const std::vector<std::vector<int>> &domains, const std::vector<RawConstraint> &constraints,
	       const std::string &mode, std::uint64_t max_trials, std::uint64_t seed, double delta, bool parallel) {
		    auto inst = make_instance(domains, constraints);
		    randsolver::TrialPolicy pol{max_trials, seed, delta, parallel};
		    randsolver::RandomResult r;
		    if (mode == "restrict4") r = randsolver::solve_random_restrict4(inst, pol);
		    else if (mode == "pairs") r = randsolver::solve_random_pairs(inst, pol);
		    else throw py::value_error("mode must be 'restrict4' or 'pairs'");
		    py::dict d;
		    d["verdict"] = verdict_name(r.verdict);
		    d["solution"] = r.solution;
		    d["trials"] = r.trials;
		    d["success_bound"] = r.success_bound;
		    d["residual"] = r.residual;
		    return d;
	    },
	    py::arg("domains"), py::arg("constraints"), py::arg("mode") = "restrict4", py::arg("max_trials") = 1000,
	    py::arg("seed") = 0, py::arg("delta") = 1e-3, py::arg("parallel") = false);

	m.def(
	    "color3",
	    [](int n, const std::vector<std::pair<int, int>> &edges) {
		    return vertexcolor::solve_3coloring(make_graph(n, edges)).coloring;
	    },
	    py::arg("n"), py::arg("edges"), "Vertices 0..n-1; returns colors 1..3 or None.");

	m.def(
	    "list_color",
	    [](int n, const std::vector<std::pair<int, int>> &edges, const std::vector<std::vector<int>> &lists) {
		    return vertexcolor::solve_list_coloring(make_graph(n, edges), lists).coloring;
	    },
	    py::arg("n"), py::arg("edges"), py::arg("lists"));

	m.def(
	    "edge_color3",
	    [](int n, const std::vector<std::pair<int, int>> &edges, const std::vector<std::pair<int, int>> &diffs) {
		    return edgecolor::solve_3edge(edgecolor::EdgeInstance::build(n, edges, diffs)).coloring;
	    },
	    py::arg("n"), py::arg("edges"), py::arg("diffs") = std::vector<std::pair<int, int>>{},
	    "Colors 1..3 per edge in input order, or None.");

	m.def(
	    "solve_3sat",
	    [](int num_vars, const std::vector<std::vector<int>> &clauses) -> std::optional<std::vector<bool>> {
		    auto r = sat::solve_3sat(sat::Cnf{num_vars, clauses});
		    if (!r.model) return std::nullopt;
		    return std::vector<bool>(r.model->begin() + 1, r.model->end());
	    },
	    py::arg("num_vars"), py::arg("clauses"), "DIMACS-style literals; returns values of x1..xn or None.");

	m.def(
	    "bench",
	    [](const std::string &kind, int n, double density, int count, std::uint64_t seed, int d) {
		    bench::Params p;
		    p.kind = bench::parse_kind(kind);
		    p.n = n;
		    p.density = density;
		    p.count = count;
		    p.seed = seed;
		    p.d = d;
		    auto rep = bench::run(p);
		    py::dict out;
		    for (auto &[k, v] : rep.entries()) out[py::str(k)] = v;
		    return out;
	    },
	    py::arg("kind"), py::arg("n") = 10, py::arg("density") = 0.1, py::arg("count") = 20, py::arg("seed") = 0,
	    py::arg("d") = 3);

	m.def(
	    "run_cli",
	    [](const std::vector<std::string> &args) {
		    std::ostringstream out, err;
		    int code = cli::run(args, out, err);
		    return std::tuple(code, out.str(), err.str());
	    },
	    py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");
}
