#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "trichrome/csp.h"

namespace trichrome::randsolver {

enum class Mode { Restrict4, Pairs };

struct TrialPolicy {
	std::uint64_t max_trials = 1000;
	std::uint64_t seed = 0;
	double delta = 1e-3; // failure confidence for an UnsatLikely verdict
	bool parallel = false;
};

enum class Verdict { Sat, UnsatLikely, Unknown };

struct RandomResult {
	Verdict verdict = Verdict::Unknown;
	std::optional<csp::Assignment> solution; // valid for the input instance
	std::uint64_t trials = 0;
	double success_bound = 1.0; // per-trial probability of keeping a solution
	double residual = 1.0;      // (1 - success_bound)^trials
};

/// Generator for trial `index`; independent of how trials are scheduled.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform random subset of `keep` colors for every active variable with a
/// larger domain. nullopt if the restriction empties a domain.
std::optional<csp::Instance> restrict_random(const csp::Instance &inst, int keep, std::mt19937_64 &rng);

/// One trial: restrict, then solve exactly (CSP solver or 2-SAT).
std::optional<csp::Assignment> run_trial(const csp::Instance &inst, Mode mode, std::uint64_t seed,
                                         std::uint64_t index);

/// Product over variables of min(1, keep / domain size).
double success_probability(const csp::Instance &inst, Mode mode);

/// Needs a domain of four or more colors; with no domain above four only one
/// trial runs.
RandomResult solve_random_restrict4(const csp::Instance &inst, const TrialPolicy &policy);

/// Any domain sizes; with no domain above two only one trial runs.
RandomResult solve_random_pairs(const csp::Instance &inst, const TrialPolicy &policy);

} // namespace trichrome::randsolver
