#include "trichrome/sat.h"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace trichrome::sat {

std::vector<Clause> canonical_clauses(const Cnf &f) {
	std::vector<Clause> out;
	for (const Clause &raw : f.clauses) {
		if (raw.size() > 3) throw CnfError("clause longer than three literals");
		Clause c = raw;
		for (int l : c)
			if (l == 0 || std::abs(l) > f.num_vars) throw CnfError("literal out of range");
		std::sort(c.begin(), c.end());
		c.erase(std::unique(c.begin(), c.end()), c.end());
		bool taut = false;
		for (int l : c) taut = taut || std::binary_search(c.begin(), c.end(), -l);
		if (!taut) out.push_back(std::move(c));
	}
	return out;
}

int Cnf::three_clauses() const {
	int t = 0;
	for (const Clause &c : canonical_clauses(*this)) t += c.size() == 3;
	return t;
}

bool satisfies(const Cnf &f, const Model &m) {
	if (static_cast<int>(m.size()) < f.num_vars + 1) return false;
	for (const Clause &c : f.clauses) {
		bool ok = false;
		for (int l : c) ok = ok || (l > 0) == m[std::abs(l)];
		if (!ok) return false;
	}
	return true;
}

TwoCnf::TwoCnf(int num_vars, const std::vector<Clause> &short_clauses) : n_(num_vars) {
	const int nodes = 2 * n_;
	std::vector<std::vector<int>> adj(nodes);
	for (const Clause &c : short_clauses) {
		if (c.empty()) {
			satisfiable_ = false;
			continue;
		}
		if (c.size() > 2) throw CnfError("TwoCnf: clause with more than two literals");
		int a = c[0], b = c.size() == 2 ? c[1] : c[0];
		adj[node(-a)].push_back(node(b));
		adj[node(-b)].push_back(node(a));
	}
	reach_.assign(nodes, std::vector<bool>(nodes, false));
	for (int s = 0; s < nodes; ++s) {
		std::queue<int> q;
		q.push(s);
		reach_[s][s] = true;
		while (!q.empty()) {
			int x = q.front();
			q.pop();
			for (int y : adj[x])
				if (!reach_[s][y]) {
					reach_[s][y] = true;
					q.push(y);
				}
		}
	}
	for (int v = 0; v < n_ && satisfiable_; ++v)
		if (reach_[2 * v][2 * v + 1] && reach_[2 * v + 1][2 * v]) satisfiable_ = false;
}

bool TwoCnf::implies(int a, int b) const { return reach_.at(node(a)).at(node(b)); }

bool literal_conflict(const TwoCnf &f2, int l1, int l2) {
	if (!f2.satisfiable()) return true;
	return f2.implies(l1, -l1) || f2.implies(l2, -l2) || f2.implies(l1, -l2);
}

Translation translate_3sat(const Cnf &f) {
	Translation tr;
	std::vector<Clause> three;
	for (Clause &c : canonical_clauses(f)) (c.size() == 3 ? three : tr.short_clauses).push_back(std::move(c));
	const TwoCnf f2(f.num_vars, tr.short_clauses);
	tr.unsat = !f2.satisfiable();
	std::vector<std::vector<int>> domains;
	for (const Clause &c : three) {
		std::vector<int> colors;
		for (int i = 0; i < 3; ++i)
			if (!literal_conflict(f2, c[i], c[i])) colors.push_back(i);
		domains.push_back(colors);
		tr.literals.push_back(c);
	}
	std::vector<csp::Constraint> cons;
	for (std::size_t j = 0; j < three.size(); ++j)
		for (std::size_t k = j + 1; k < three.size(); ++k)
			for (int a : domains[j])
				for (int b : domains[k])
					if (literal_conflict(f2, three[j][a], three[k][b]))
						cons.push_back(csp::make_constraint({static_cast<int>(j), a}, {static_cast<int>(k), b}));
	tr.instance = csp::Instance::build(domains, cons);
	return tr;
}

std::optional<Model> complete_2cnf(int num_vars, const std::vector<Clause> &short_clauses,
                                   const std::vector<int> &units) {
	// variable v-1 takes color 1 for true, 0 for false
	std::vector<std::vector<int>> domains(num_vars, {0, 1});
	auto color_of = [](int lit) { return lit > 0 ? 1 : 0; };
	auto restrict_to = [&](int lit) {
		auto &d = domains[std::abs(lit) - 1];
		std::erase(d, 1 - color_of(lit));
	};
	std::vector<csp::Constraint> cons;
	for (const Clause &c : short_clauses) {
		if (c.empty()) return std::nullopt;
		if (c.size() == 1) restrict_to(c[0]);
		else cons.push_back(csp::make_constraint({std::abs(c[0]) - 1, 1 - color_of(c[0])},
		                                         {std::abs(c[1]) - 1, 1 - color_of(c[1])}));
	}
	for (int u : units) restrict_to(u);
	std::vector<csp::Constraint> kept;
	for (const auto &c : cons) {
		auto allowed = [&](csp::Pair p) {
			const auto &d = domains[p.var];
			return std::find(d.begin(), d.end(), p.color) != d.end();
		};
		if (allowed(c.first) && allowed(c.second)) kept.push_back(c);
	}
	auto sol = csp::solve_22csp(csp::Instance::build(domains, kept));
	if (!sol) return std::nullopt;
	Model m(num_vars + 1, false);
	for (int v = 0; v < num_vars; ++v) m[v + 1] = (*sol)[v] == 1;
	return m;
}

SatResult solve_3sat(const Cnf &f, const cspsolver::SolveOptions &options) {
	SatResult out;
	Translation tr = translate_3sat(f);
	out.t = tr.instance.num_vars();
	if (tr.unsat) return out;
	auto res = cspsolver::solve(tr.instance, options);
	out.stats = res.stats;
	if (!res.solution) return out;
	std::vector<int> units;
	for (int j = 0; j < tr.instance.num_vars(); ++j) units.push_back(tr.literals[j][(*res.solution)[j]]);
	out.model = complete_2cnf(f.num_vars, tr.short_clauses, units);
	if (!out.model || !satisfies(f, *out.model))
		throw std::logic_error("pairwise-compatible literal selection failed to complete");
	return out;
}

} // namespace trichrome::sat
