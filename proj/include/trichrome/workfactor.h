#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trichrome {

class InvalidQuery : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// Work factor of a branching rule that splits an instance of size n into
/// instances of sizes n - r_1, ..., n - r_k: the unique root x >= 1 of
/// 1 - sum x^(-r_i). The returned value satisfies |f(x)| <= 1e-12.
/// Throws InvalidQuery on an empty list or a nonpositive (or non-finite) r_i.
double work_factor(std::span<const double> reductions);
double work_factor(std::initializer_list<double> reductions);

/// The residual 1 - sum x^(-r_i) at x; exposed so callers can certify roots.
double work_factor_residual(std::span<const double> reductions, double x);

struct EpsilonOptimum {
	double epsilon;
	double lambda;
};

/// Balances lambda(3-e, 4-e, 4-e) against lambda(1+e, 4) by bisection on
/// e in [0, 0.5]. At the optimum both equal lambda(4,4,5,5).
EpsilonOptimum optimize_epsilon();

/// optimize_epsilon().epsilon, computed once.
double default_epsilon();

struct NamedConstant {
	std::string name;
	double value;
};

/// Composite constants derived from lambda(4,4,5,5):
///   lambda          lambda(4,4,5,5)
///   epsilon         optimized size-measure parameter
///   coloring_base   2^(3/49) 3^(4/49) lambda^(24/49)
///   restrict4_base  lambda^(2-epsilon)
///   d4 .. d8        (lambda^(2-epsilon) / 4) * d
std::vector<NamedConstant> reference_constants();

/// Lookup by name in reference_constants(); throws std::out_of_range.
double reference_constant(const std::string &name);

} // namespace trichrome
