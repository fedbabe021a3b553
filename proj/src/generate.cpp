#include "trichrome/generate.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace trichrome::gen {

std::uint64_t below(std::mt19937_64 &rng, std::uint64_t bound) {
	if (bound == 0) throw std::invalid_argument("empty range");
	// rejection keeps the draw unbiased
	const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
	std::uint64_t x;
	do x = rng();
	while (x >= limit);
	return x % bound;
}

bool coin(std::mt19937_64 &rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

csp::Instance random_csp(int n, int d, double density, std::uint64_t seed) {
	if (n < 0 || d < 2 || d > 16) throw std::invalid_argument("csp generator needs n >= 0 and 2 <= d <= 16");
	if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
	std::mt19937_64 rng(seed);
	std::vector<int> colors(d);
	for (int c = 0; c < d; ++c) colors[c] = c;
	std::vector<std::vector<int>> domains(n, colors);
	std::vector<csp::Constraint> cons;
	for (int v = 0; v < n; ++v)
		for (int w = v + 1; w < n; ++w)
			for (int a = 0; a < d; ++a)
				for (int b = 0; b < d; ++b)
					if (coin(rng, density)) cons.push_back(csp::make_constraint({v, a}, {w, b}));
	return csp::Instance::build(domains, cons);
}

Graph random_graph(int n, double p, std::uint64_t seed) {
	if (n < 0) throw std::invalid_argument("negative vertex count");
	if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
	std::mt19937_64 rng(seed);
	Graph g(n);
	for (int u = 0; u < n; ++u)
		for (int v = u + 1; v < n; ++v)
			if (coin(rng, p)) g.add_edge(u, v);
	return g;
}

Graph random_regular(int n, int k, std::uint64_t seed) {
	if (n < 0 || k < 0 || (k >= n && n > 0) || (static_cast<long long>(n) * k) % 2 != 0)
		throw std::invalid_argument("k-regular graph needs k < n and n*k even");
	std::mt19937_64 rng(seed);
	for (int attempt = 0; attempt < 10000; ++attempt) {
		std::vector<int> stubs;
		for (int v = 0; v < n; ++v)
			for (int i = 0; i < k; ++i) stubs.push_back(v);
		Graph g(n);
		bool ok = true;
		while (!stubs.empty() && ok) {
			// pair the last stub with a random other one
			std::size_t j = below(rng, stubs.size() - 1);
			int u = stubs.back(), v = stubs[j];
			stubs.pop_back();
			stubs[j] = stubs.back();
			stubs.pop_back();
			ok = u != v && g.add_edge(u, v);
		}
		if (ok) return g;
	}
	throw std::runtime_error("k-regular generator gave up");
}

Graph random_subcubic(int n, double fill, std::uint64_t seed) {
	if (n < 0) throw std::invalid_argument("negative vertex count");
	if (!(fill >= 0.0 && fill <= 10.0)) throw std::invalid_argument("fill must lie in [0, 10]");
	std::mt19937_64 rng(seed);
	Graph g(n);
	if (n < 2) return g;
	const long long attempts = static_cast<long long>(fill * 1.5 * n);
	for (long long i = 0; i < attempts; ++i) {
		int u = static_cast<int>(below(rng, n)), v = static_cast<int>(below(rng, n));
		if (u != v && g.degree(u) < 3 && g.degree(v) < 3) g.add_edge(u, v);
	}
	return g;
}

sat::Cnf random_3cnf(int n, int t, std::uint64_t seed) {
	if (n < 3 || t < 0) throw std::invalid_argument("3-CNF generator needs n >= 3 and t >= 0");
	std::mt19937_64 rng(seed);
	sat::Cnf f;
	f.num_vars = n;
	for (int i = 0; i < t; ++i) {
		sat::Clause c;
		while (c.size() < 3) {
			int v = 1 + static_cast<int>(below(rng, n));
			if (std::find_if(c.begin(), c.end(), [&](int l) { return std::abs(l) == v; }) != c.end()) continue;
			c.push_back(coin(rng, 0.5) ? -v : v);
		}
		f.clauses.push_back(c);
	}
	return f;
}

} // namespace trichrome::gen
