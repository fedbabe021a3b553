#include "trichrome/bruteforce.h"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace trichrome::brute {

std::optional<std::vector<int>> list_coloring(const Graph &g, const std::vector<std::vector<int>> &lists) {
	const int n = g.num_vertices();
	std::vector<int> col(n, -1);
	std::function<bool(int)> go = [&](int v) {
		if (v == n) return true;
		for (int c : lists.at(v)) {
			bool ok = true;
			for (int u : g.neighbors(v))
				if (u < v && col[u] == c) ok = false;
			if (!ok) continue;
			col[v] = c;
			if (go(v + 1)) return true;
		}
		col[v] = -1;
		return false;
	};
	if (!go(0)) return std::nullopt;
	return col;
}

std::optional<std::vector<int>> edge_coloring(const std::vector<std::pair<int, int>> &edges,
                                              const std::vector<std::pair<int, int>> &diffs) {
	const int m = static_cast<int>(edges.size());
	std::vector<std::vector<int>> earlier(m); // conflicting edges with a smaller index
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < i; ++j) {
			auto [a, b] = edges[i];
			auto [c, d] = edges[j];
			if (a == c || a == d || b == c || b == d) earlier[i].push_back(j);
		}
	for (auto [i, j] : diffs) earlier[std::max(i, j)].push_back(std::min(i, j));
	std::vector<int> col(m, 0);
	std::function<bool(int)> go = [&](int i) {
		if (i == m) return true;
		for (int c = 1; c <= 3; ++c) {
			bool ok = true;
			for (int j : earlier[i]) ok = ok && col[j] != c;
			if (!ok) continue;
			col[i] = c;
			if (go(i + 1)) return true;
		}
		col[i] = 0;
		return false;
	};
	if (!go(0)) return std::nullopt;
	return col;
}

std::optional<sat::Model> sat(const sat::Cnf &f) {
	sat::Model m(f.num_vars + 1, false);
	// assign in order, checking clauses whose largest variable was just set
	std::vector<std::vector<const sat::Clause *>> due(f.num_vars + 1);
	for (const auto &c : f.clauses) {
		int top = 0;
		for (int l : c) top = std::max(top, std::abs(l));
		due[top].push_back(&c);
	}
	if (!due[0].empty()) return std::nullopt; // empty clause
	std::function<bool(int)> go = [&](int v) {
		if (v > f.num_vars) return true;
		for (bool val : {false, true}) {
			m[v] = val;
			bool ok = true;
			for (const auto *c : due[v]) {
				bool s = false;
				for (int l : *c) s = s || (l > 0) == m[std::abs(l)];
				ok = ok && s;
			}
			if (ok && go(v + 1)) return true;
		}
		return false;
	};
	if (!go(1)) return std::nullopt;
	return m;
}

} // namespace trichrome::brute
