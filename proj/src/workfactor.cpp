#include "trichrome/workfactor.h"

#include <cmath>
#include <stdexcept>

namespace trichrome {

namespace {

void validate(std::span<const double> reductions) {
	if (reductions.empty()) throw InvalidQuery("work factor query needs at least one reduction");
	for (double r : reductions) {
		if (!std::isfinite(r) || r <= 0.0) throw InvalidQuery("work factor reductions must be positive");
	}
}

} // namespace

double work_factor_residual(std::span<const double> reductions, double x) {
	double sum = 0.0;
	for (double r : reductions) sum += std::pow(x, -r);
	return 1.0 - sum;
}

double work_factor(std::span<const double> reductions) {
	validate(reductions);
	if (reductions.size() == 1) return 1.0;

	// f is strictly increasing on (0, inf); f(1) = 1 - k < 0.
	double lo = 1.0;
	double hi = 1.0 + static_cast<double>(reductions.size());
	while (work_factor_residual(reductions, hi) <= 0.0) {
		lo = hi;
		hi *= 2.0;
	}
	for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
		double mid = 0.5 * (lo + hi);
		if (work_factor_residual(reductions, mid) < 0.0) lo = mid;
		else hi = mid;
	}
	double x = 0.5 * (lo + hi);

	// Newton polish; bisection alone leaves |f| near machine epsilon times f'.
	for (int i = 0; i < 3; ++i) {
		double f = work_factor_residual(reductions, x);
		double df = 0.0;
		for (double r : reductions) df += r * std::pow(x, -r - 1.0);
		if (df <= 0.0) break;
		double next = x - f / df;
		if (!(next > 1.0)) break;
		x = next;
	}
	return x;
}

double work_factor(std::initializer_list<double> reductions) {
	return work_factor(std::span<const double>(reductions.begin(), reductions.size()));
}

EpsilonOptimum optimize_epsilon() {
	auto gap = [](double e) {
		return work_factor({3.0 - e, 4.0 - e, 4.0 - e}) - work_factor({1.0 + e, 4.0});
	};
	double lo = 0.0;
	double hi = 0.5;
	for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
		double mid = 0.5 * (lo + hi);
		if (gap(mid) < 0.0) lo = mid;
		else hi = mid;
	}
	double e = 0.5 * (lo + hi);
	return {e, work_factor({1.0 + e, 4.0})};
}

double default_epsilon() {
	static const double eps = optimize_epsilon().epsilon;
	return eps;
}

std::vector<NamedConstant> reference_constants() {
	const double lambda = work_factor({4.0, 4.0, 5.0, 5.0});
	const double eps = default_epsilon();
	const double restrict4 = std::pow(lambda, 2.0 - eps);
	std::vector<NamedConstant> table{
	    {"lambda", lambda},
	    {"epsilon", eps},
	    {"coloring_base",
	     std::pow(2.0, 3.0 / 49.0) * std::pow(3.0, 4.0 / 49.0) * std::pow(lambda, 24.0 / 49.0)},
	    {"restrict4_base", restrict4},
	};
	for (int d = 4; d <= 8; ++d) table.push_back({"d" + std::to_string(d), restrict4 / 4.0 * d});
	return table;
}

double reference_constant(const std::string &name) {
	for (const auto &c : reference_constants()) {
		if (c.name == name) return c.value;
	}
	throw std::out_of_range("unknown constant: " + name);
}

} // namespace trichrome
