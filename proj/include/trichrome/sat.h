#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "trichrome/csp.h"
#include "trichrome/cspsolver.h"

namespace trichrome::sat {

/// Literals are nonzero integers: +v or -v for variable v in 1..n.
using Clause = std::vector<int>;
using Model = std::vector<bool>; // index 0 unused

struct Cnf {
	int num_vars = 0;
	std::vector<Clause> clauses;

	/// Clauses with three distinct, non-complementary literals.
	int three_clauses() const;
};

class CnfError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// Sorted, duplicate-free literals; tautologies removed. Throws CnfError on
/// out-of-range literals or clauses longer than three.
std::vector<Clause> canonical_clauses(const Cnf &f);

bool satisfies(const Cnf &f, const Model &m);

/// Implication graph of the 1- and 2-clauses with all-pairs reachability.
class TwoCnf {
public:
	TwoCnf(int num_vars, const std::vector<Clause> &short_clauses);

	bool satisfiable() const { return satisfiable_; }
	/// Some path from literal a to literal b (a reaches itself).
	bool implies(int a, int b) const;
	int num_vars() const { return n_; }

private:
	int node(int lit) const { return 2 * (std::abs(lit) - 1) + (lit < 0); }

	int n_;
	bool satisfiable_ = true;
	std::vector<std::vector<bool>> reach_;
};

/// Whether F2 together with l1 and l2 is unsatisfiable.
bool literal_conflict(const TwoCnf &f2, int l1, int l2);

struct Translation {
	csp::Instance instance;
	std::vector<Clause> literals; // per CSP variable: literal for each color 0..2
	std::vector<Clause> short_clauses;
	bool unsat = false;           // F2 alone is unsatisfiable
};

/// One CSP variable per 3-clause; color i selects the clause's i-th literal.
Translation translate_3sat(const Cnf &f);

/// Solves F2 plus the given unit literals by way of a (2,2)-CSP.
std::optional<Model> complete_2cnf(int num_vars, const std::vector<Clause> &short_clauses,
                                   const std::vector<int> &units);

struct SatResult {
	std::optional<Model> model;
	int t = 0;
	cspsolver::SearchStats stats;
};

SatResult solve_3sat(const Cnf &f, const cspsolver::SolveOptions &options = {});

} // namespace trichrome::sat
