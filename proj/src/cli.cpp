#include "trichrome/cli.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "trichrome/bench.h"
#include "trichrome/bruteforce.h"
#include "trichrome/cspsolver.h"
#include "trichrome/edgecolor.h"
#include "trichrome/formats.h"
#include "trichrome/generate.h"
#include "trichrome/randsolver.h"
#include "trichrome/report.h"
#include "trichrome/sat.h"
#include "trichrome/vertexcolor.h"
#include "trichrome/workfactor.h"

namespace trichrome::cli {

namespace {

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

std::string g6(double x) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.6g", x);
	return buf;
}

struct Options {
	std::string kind, file, stats_file, randomized, output;
	bool parallel = false;
	std::uint64_t seed = 0;
	CLI::Option *seed_opt = nullptr;
	std::uint64_t max_trials = 1000;
	double delta = 1e-3;
};

std::uint64_t resolve_seed(const Options &o) {
	if (o.seed_opt && o.seed_opt->count() > 0) return o.seed;
	const char *env = std::getenv("TRICHROME_SEED");
	if (!env || !*env) return 0;
	std::uint64_t v = 0;
	const char *end = env + std::char_traits<char>::length(env);
	auto [p, ec] = std::from_chars(env, end, v);
	if (ec != std::errc() || p != end) throw UsageError("TRICHROME_SEED is not an unsigned integer");
	return v;
}

std::ifstream open_input(const std::string &path) {
	std::ifstream in(path);
	if (!in) throw UsageError("cannot open '" + path + "'");
	return in;
}

template <class T>
T parse_file(const std::string &path, T (*reader)(std::istream &)) {
	auto in = open_input(path);
	try {
		return reader(in);
	} catch (const io::ParseError &e) {
		throw UsageError(path + ": " + e.what());
	}
}

std::string join(const std::vector<int> &v) {
	std::string s;
	for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
	return s;
}

std::string model_string(const sat::Model &m) {
	std::string s;
	for (std::size_t v = 1; v < m.size(); ++v) s += (v > 1 ? " " : "") + std::string(m[v] ? "" : "-") + std::to_string(v);
	return s;
}

int verdict_code(const std::string &v) { return v == "SAT" ? kExitSat : v == "UNSAT" ? kExitUnsat : kExitUnknown; }

void emit_stats(const Options &o, const report::Report &r) {
	if (o.stats_file.empty()) return;
	std::ofstream f(o.stats_file);
	if (!f) throw UsageError("cannot write '" + o.stats_file + "'");
	report::write(f, r);
}

double observed(double calls, double size) { return size > 0 ? std::pow(calls, 1.0 / size) : 1.0; }

void add_color_stats(report::Report &r, const std::string &prefix, const vertexcolor::ColorStats &s) {
	r.set(prefix + "peeled", static_cast<unsigned long long>(s.peeled));
	r.set(prefix + "degree3_branches", static_cast<unsigned long long>(s.degree3_branches));
	r.set(prefix + "precolorings", static_cast<unsigned long long>(s.precolorings));
	r.set(prefix + "csp_calls", static_cast<unsigned long long>(s.csp_calls));
	r.set(prefix + "flow_singletons", static_cast<unsigned long long>(s.flow_singletons));
	bool triple = true;
	double worst_base = 1.0;
	for (const auto &c : s.covers) {
		triple = triple && c.constraint_triple_holds();
		worst_base = std::max(worst_base, c.base());
	}
	r.set(prefix + "covers", static_cast<unsigned long long>(s.covers.size()));
	r.set(prefix + "constraint_triple_holds", triple);
	r.set(prefix + "predicted_cover_base_max", worst_base);
}

double color_nodes(const vertexcolor::ColorStats &s) {
	return static_cast<double>(1 + s.degree3_branches + s.precolorings + s.csp.calls);
}

// ---- solve -------------------------------------------------------------------

int solve(const Options &o, std::ostream &out) {
	const auto start = std::chrono::steady_clock::now();
	const double eps = default_epsilon();
	report::Report r;
	r.set("kind", o.kind);
	r.set("instance", o.file);
	std::string verdict;
	std::ostringstream body;
	if (!o.randomized.empty() && o.kind != "csp") throw UsageError("--randomized applies to csp instances only");
	cspsolver::SolveOptions sopt;
	sopt.parallel = o.parallel;
	vertexcolor::ColorOptions copt;
	copt.parallel = o.parallel;

	if (o.kind == "csp") {
		auto inst = parse_file(o.file, io::read_csp);
		r.set("variables", inst.num_vars());
		r.set("max_domain", inst.max_domain());
		if (!o.randomized.empty()) {
			randsolver::TrialPolicy pol;
			pol.seed = resolve_seed(o);
			pol.max_trials = o.max_trials;
			pol.delta = o.delta;
			pol.parallel = o.parallel;
			randsolver::RandomResult res;
			int keep;
			if (o.randomized == "restrict4") {
				res = randsolver::solve_random_restrict4(inst, pol);
				keep = 4;
			} else {
				res = randsolver::solve_random_pairs(inst, pol);
				keep = 2;
			}
			verdict = res.verdict == randsolver::Verdict::Sat           ? "SAT"
			          : res.verdict == randsolver::Verdict::UnsatLikely ? "UNSAT"
			                                                            : "UNKNOWN";
			if (res.solution) {
				r.set("solution", join(*res.solution));
				io::write_assignment(body, *res.solution);
			} else {
				body << "c no solution in " << res.trials << " trials, residual " << g6(res.residual) << '\n';
			}
			r.set("randomized", o.randomized);
			r.set("seed", static_cast<unsigned long long>(pol.seed));
			r.set("trials", static_cast<unsigned long long>(res.trials));
			r.set("success_bound", res.success_bound);
			r.set("residual", res.residual);
			// per-variable base of the expected running time
			double d = inst.max_domain();
			double per_trial = keep == 4 ? reference_constant("restrict4_base") : 1.0;
			r.set("predicted_work_factor", per_trial * std::max(1.0, d / keep));
			r.set("unsat_is_probabilistic", verdict == "UNSAT" && res.success_bound < 1.0);
		} else {
			if (inst.max_domain() > 4) throw UsageError("domains above four colors need --randomized");
			auto res = cspsolver::solve(inst, sopt);
			verdict = res.solution ? "SAT" : "UNSAT";
			if (res.solution) {
				r.set("solution", join(*res.solution));
				io::write_assignment(body, *res.solution);
			}
			r.set("size", inst.size());
			r.set("predicted_work_factor", reference_constant("lambda"));
			r.set("observed_work_factor", res.stats.effective_work_factor());
			bench::add_search_stats(r, "stats.", res.stats, eps);
		}
	} else if (o.kind == "color" || o.kind == "listcolor") {
		auto g = parse_file(o.file, io::read_graph);
		auto graph = g.graph();
		vertexcolor::ColorResult res;
		if (o.kind == "color") {
			res = vertexcolor::solve_3coloring(graph, copt);
		} else {
			try {
				res = vertexcolor::solve_list_coloring(graph, g.lists_or_default(), copt);
			} catch (const csp::ContractViolation &e) {
				throw UsageError(e.what());
			}
		}
		verdict = res.coloring ? "SAT" : "UNSAT";
		if (res.coloring) {
			r.set("solution", join(*res.coloring));
			io::write_vertex_coloring(body, *res.coloring);
		}
		r.set("vertices", g.n);
		r.set("edges", static_cast<unsigned long long>(g.edges.size()));
		r.set("predicted_work_factor", reference_constant("coloring_base"));
		r.set("observed_work_factor", observed(color_nodes(res.stats), g.n));
		add_color_stats(r, "stats.", res.stats);
		bench::add_search_stats(r, "stats.csp.", res.stats.csp, eps);
	} else if (o.kind == "edgecolor") {
		auto g = parse_file(o.file, io::read_graph);
		auto inst = edgecolor::EdgeInstance::build(g.n, g.edges, g.diffs);
		auto res = edgecolor::solve_3edge(inst, copt);
		verdict = res.coloring ? "SAT" : "UNSAT";
		if (res.coloring) {
			r.set("solution", join(*res.coloring));
			io::write_edge_coloring(body, g, *res.coloring);
		}
		const auto &s = res.stats;
		r.set("vertices", g.n);
		r.set("edges", static_cast<unsigned long long>(g.edges.size()));
		r.set("predicted_work_factor", std::sqrt(2.0));
		r.set("observed_work_factor", observed(static_cast<double>(s.splice_children) + color_nodes(s.color), g.n));
		r.set("stats.m3", s.m3);
		r.set("stats.m4", s.m4);
		r.set("stats.selected_splices", s.selected_splices);
		r.set("stats.splice_children", static_cast<unsigned long long>(s.splice_children));
		r.set("stats.residues", static_cast<unsigned long long>(s.residues));
		r.set("stats.pruned_edges", static_cast<unsigned long long>(s.pruned_edges));
		add_color_stats(r, "stats.color.", s.color);
		bench::add_search_stats(r, "stats.csp.", s.color.csp, eps);
	} else if (o.kind == "sat") {
		auto f = parse_file(o.file, io::read_cnf);
		auto res = sat::solve_3sat(f, sopt);
		verdict = res.model ? "SAT" : "UNSAT";
		if (res.model) {
			r.set("solution", model_string(*res.model));
			io::write_model(body, *res.model);
		}
		r.set("variables", f.num_vars);
		r.set("clauses", static_cast<unsigned long long>(f.clauses.size()));
		r.set("t", res.t);
		r.set("predicted_work_factor", reference_constant("lambda"));
		r.set("observed_work_factor", res.stats.effective_work_factor());
		bench::add_search_stats(r, "stats.", res.stats, eps);
	} else {
		throw UsageError("unknown kind '" + o.kind + "'");
	}
	r.set("verdict", verdict);
	r.set("wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
	out << "s " << verdict << '\n' << body.str();
	emit_stats(o, r);
	return verdict_code(verdict);
}

// ---- oracle ------------------------------------------------------------------

int oracle(const Options &o, std::ostream &out) {
	std::ostringstream body;
	bool found = false;
	if (o.kind == "csp") {
		auto inst = parse_file(o.file, io::read_csp);
		auto a = csp::brute_force_solve(inst);
		if ((found = a.has_value())) io::write_assignment(body, *a);
	} else if (o.kind == "color" || o.kind == "listcolor") {
		auto g = parse_file(o.file, io::read_graph);
		auto lists = o.kind == "color" ? std::vector<std::vector<int>>(g.n, {1, 2, 3}) : g.lists_or_default();
		auto c = brute::list_coloring(g.graph(), lists);
		if ((found = c.has_value())) io::write_vertex_coloring(body, *c);
	} else if (o.kind == "edgecolor") {
		auto g = parse_file(o.file, io::read_graph);
		auto c = brute::edge_coloring(g.edges, g.diffs);
		if ((found = c.has_value())) io::write_edge_coloring(body, g, *c);
	} else if (o.kind == "sat") {
		auto f = parse_file(o.file, io::read_cnf);
		auto m = brute::sat(f);
		if ((found = m.has_value())) io::write_model(body, *m);
	} else {
		throw UsageError("unknown kind '" + o.kind + "'");
	}
	out << "s " << (found ? "SAT" : "UNSAT") << '\n' << body.str();
	return found ? kExitSat : kExitUnsat;
}

// ---- translate ---------------------------------------------------------------

int translate(const Options &o, std::ostream &out) {
	std::ostringstream text;
	if (o.kind == "csp") {
		io::write_csp(text, parse_file(o.file, io::read_csp));
	} else if (o.kind == "color" || o.kind == "listcolor") {
		auto g = parse_file(o.file, io::read_graph);
		auto lists = o.kind == "color" ? std::vector<std::vector<int>>(g.n, {1, 2, 3}) : g.lists_or_default();
		io::write_csp(text, csp::from_graph_coloring(g.graph(), lists));
	} else if (o.kind == "edgecolor") {
		auto g = parse_file(o.file, io::read_graph);
		auto inst = edgecolor::EdgeInstance::build(g.n, g.edges, g.diffs);
		std::vector<int> edge_of;
		auto lg = edgecolor::line_graph(inst, edge_of);
		for (std::size_t i = 0; i < edge_of.size(); ++i) {
			auto [u, v] = g.edges[edge_of[i]];
			text << "# variable " << i + 1 << " is edge " << u + 1 << ' ' << v + 1 << '\n';
		}
		io::write_csp(text, csp::from_graph_coloring(lg));
	} else if (o.kind == "sat") {
		auto tr = sat::translate_3sat(parse_file(o.file, io::read_cnf));
		if (tr.unsat) text << "# the 1- and 2-clauses alone are unsatisfiable\n";
		for (std::size_t j = 0; j < tr.literals.size(); ++j) {
			const auto &c = tr.literals[j];
			text << "# variable " << j + 1 << " is clause " << c[0] << ' ' << c[1] << ' ' << c[2]
			     << " (color i picks literal i)\n";
		}
		io::write_csp(text, tr.instance);
	} else {
		throw UsageError("unknown kind '" + o.kind + "'");
	}
	if (o.output.empty()) {
		out << text.str();
	} else {
		std::ofstream f(o.output);
		if (!f) throw UsageError("cannot write '" + o.output + "'");
		f << text.str();
	}
	return 0;
}

// ---- generate ----------------------------------------------------------------

struct GenParams {
	int n = 10, d = 3, k = 3, t = 20;
	double density = 0.1, p = 0.3, fill = 1.0;
};

int generate(const Options &o, const GenParams &g, std::ostream &out) {
	const std::uint64_t seed = resolve_seed(o);
	std::string text;
	if (o.kind == "csp") text = io::format_csp(gen::random_csp(g.n, g.d, g.density, seed));
	else if (o.kind == "graph") text = io::format_graph(io::graph_file(gen::random_graph(g.n, g.p, seed)));
	else if (o.kind == "regular") text = io::format_graph(io::graph_file(gen::random_regular(g.n, g.k, seed)));
	else if (o.kind == "subcubic") text = io::format_graph(io::graph_file(gen::random_subcubic(g.n, g.fill, seed)));
	else if (o.kind == "cnf") text = io::format_cnf(gen::random_3cnf(g.n, g.t, seed));
	else throw UsageError("unknown generator '" + o.kind + "'");
	if (o.output.empty()) {
		out << text;
	} else {
		std::ofstream f(o.output, std::ios::binary);
		if (!f) throw UsageError("cannot write '" + o.output + "'");
		f << text;
	}
	return 0;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
	CLI::App app{"Exact branching solvers for (3,2)-CSP, 3-coloring, 3-edge-coloring and 3-SAT", "trichrome"};
	app.require_subcommand(1);
	Options o;
	GenParams gp;
	bench::Params bp;
	std::string bench_kind;
	std::vector<double> reductions;
	std::function<int()> action;

	auto add_solver_flags = [&](CLI::App *sub) {
		sub->add_option("--stats", o.stats_file, "write a run report to this file");
		sub->add_flag("--parallel", o.parallel, "run independent branches on threads");
	};
	const std::vector<std::string> kinds = {"csp", "color", "listcolor", "edgecolor", "sat"};

	auto *solve_cmd = app.add_subcommand("solve", "solve an instance; exit 0 SAT, 1 UNSAT, 2 UNKNOWN");
	solve_cmd->add_option("kind", o.kind, "csp|color|listcolor|edgecolor|sat")->required()->check(CLI::IsMember(kinds));
	solve_cmd->add_option("file", o.file)->required();
	add_solver_flags(solve_cmd);
	o.seed_opt = solve_cmd->add_option("--seed", o.seed, "seed for --randomized (default: $TRICHROME_SEED, else 0)");
	solve_cmd->add_option("--max-trials", o.max_trials, "trial cap for --randomized")->check(CLI::PositiveNumber);
	solve_cmd->add_option("--delta", o.delta, "confidence for a probabilistic UNSAT")->check(CLI::Range(1e-300, 0.999999));
	solve_cmd->add_option("--randomized", o.randomized, "random restriction: restrict4|pairs")
	    ->check(CLI::IsMember({"restrict4", "pairs"}));
	solve_cmd->callback([&] { action = [&] { return solve(o, out); }; });

	auto *oracle_cmd = app.add_subcommand("oracle", "brute-force reference solver");
	oracle_cmd->add_option("kind", o.kind)->required()->check(CLI::IsMember(kinds));
	oracle_cmd->add_option("file", o.file)->required();
	oracle_cmd->callback([&] { action = [&] { return oracle(o, out); }; });

	auto *translate_cmd = app.add_subcommand("translate", "print the CSP form of an instance");
	translate_cmd->add_option("kind", o.kind)->required()->check(CLI::IsMember(kinds));
	translate_cmd->add_option("file", o.file)->required();
	translate_cmd->add_option("-o,--output", o.output);
	translate_cmd->callback([&] { action = [&] { return translate(o, out); }; });

	auto *wf_cmd = app.add_subcommand("workfactor", "largest root of 1 - sum x^-r");
	wf_cmd->add_option("r", reductions, "branch size reductions")->required();
	wf_cmd->callback([&] {
		action = [&] {
			out << g6(work_factor(std::span<const double>(reductions))) << '\n';
			return 0;
		};
	});

	auto *eps_cmd = app.add_subcommand("epsilon", "optimized size-measure parameter and the resulting base");
	eps_cmd->callback([&] {
		action = [&] {
			auto opt = optimize_epsilon();
			out << "epsilon " << g6(opt.epsilon) << "\nlambda " << g6(opt.lambda) << '\n';
			return 0;
		};
	});

	auto *bench_cmd = app.add_subcommand("bench", "solver against brute force on a generated corpus");
	bench_cmd->add_option("kind", bench_kind, "csp|color|edgecolor|sat")
	    ->required()
	    ->check(CLI::IsMember({"csp", "color", "edgecolor", "sat"}));
	bench_cmd->add_option("--n", bp.n)->check(CLI::NonNegativeNumber);
	bench_cmd->add_option("--density", bp.density,
	                      "csp: constraint density; color: edge probability; edgecolor: fill; sat: clauses per variable");
	bench_cmd->add_option("--count", bp.count)->check(CLI::PositiveNumber);
	bench_cmd->add_option("--d", bp.d, "csp domain size (3 or 4)");
	bench_cmd->add_option("--oracle-limit", bp.oracle_limit, "largest n checked by brute force");
	auto *bench_seed = bench_cmd->add_option("--seed", o.seed);
	add_solver_flags(bench_cmd);
	bench_cmd->callback([&] {
		action = [&] {
			o.seed_opt = bench_seed;
			bp.kind = bench::parse_kind(bench_kind);
			bp.seed = resolve_seed(o);
			bp.parallel = o.parallel;
			auto r = bench::run(bp);
			report::write(out, r);
			emit_stats(o, r);
			return r.number("oracle_agree") == r.number("oracle_checked") ? 0 : 1;
		};
	});

	auto *gen_cmd = app.add_subcommand("generate", "write a reproducible random instance");
	gen_cmd->add_option("kind", o.kind, "csp|graph|regular|subcubic|cnf")
	    ->required()
	    ->check(CLI::IsMember({"csp", "graph", "regular", "subcubic", "cnf"}));
	gen_cmd->add_option("--n", gp.n)->check(CLI::NonNegativeNumber);
	gen_cmd->add_option("--d", gp.d, "csp colors per variable");
	gen_cmd->add_option("--density", gp.density, "csp constraint density");
	gen_cmd->add_option("--p", gp.p, "graph edge probability");
	gen_cmd->add_option("--k", gp.k, "regular degree");
	gen_cmd->add_option("--fill", gp.fill, "subcubic edge attempts per 3n/2");
	gen_cmd->add_option("--t", gp.t, "cnf clause count");
	auto *gen_seed = gen_cmd->add_option("--seed", o.seed);
	gen_cmd->add_option("-o,--output", o.output);
	gen_cmd->callback([&] {
		action = [&] {
			o.seed_opt = gen_seed;
			return generate(o, gp, out);
		};
	});

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e, out, err);
		return code == 0 ? 0 : kExitUsage;
	}
	try {
		return action();
	} catch (const UsageError &e) {
		err << "error: " << e.what() << '\n';
	} catch (const io::ParseError &e) {
		err << "error: " << e.what() << '\n';
	} catch (const InvalidQuery &e) {
		err << "error: " << e.what() << '\n';
	} catch (const csp::ContractViolation &e) {
		err << "error: " << e.what() << '\n';
	} catch (const std::invalid_argument &e) {
		err << "error: " << e.what() << '\n';
	}
	return kExitUsage;
}

} // namespace trichrome::cli
