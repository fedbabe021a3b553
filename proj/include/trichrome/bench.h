#pragma once

#include <cstdint>
#include <string>

#include "trichrome/cspsolver.h"
#include "trichrome/report.h"

namespace trichrome::bench {

enum class Kind { Csp, Color, EdgeColor, Sat };

/// Throws std::invalid_argument for an unknown name.
Kind parse_kind(const std::string &name);
std::string kind_name(Kind k);

struct Params {
	Kind kind = Kind::Csp;
	int n = 10;
	/// csp: constraint density; color: edge probability; edgecolor: subcubic
	/// fill; sat: clauses per variable.
	double density = 0.1;
	int count = 20;
	std::uint64_t seed = 0;
	int d = 3; // csp domain size
	bool parallel = false;
	/// Largest n checked against brute force; -1 picks a default per kind.
	int oracle_limit = -1;
};

/// Instance i uses seed + i. Keys: kind, n, count, sat, unsat,
/// oracle_checked, oracle_agree, effective_work_factor_{mean,max},
/// target_work_factor, lambda, wall_time_s, rule.<name>.* (csp and sat).
report::Report run(const Params &p);

/// calls, base_cases, base_case_failures and per-rule triggers, branches,
/// min_decrement, worst_factor, claimed_factor, shortfalls under `prefix`.
void add_search_stats(report::Report &r, const std::string &prefix, const cspsolver::SearchStats &s,
                      double epsilon);

} // namespace trichrome::bench
