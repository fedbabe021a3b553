#include "trichrome/randsolver.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "trichrome/cspsolver.h"

namespace trichrome::randsolver {

namespace {

int keep_of(Mode m) { return m == Mode::Restrict4 ? 4 : 2; }

} // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
	std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
	                  static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
	return std::mt19937_64(seq);
}

std::optional<csp::Instance> restrict_random(const csp::Instance &inst, int keep, std::mt19937_64 &rng) {
	csp::Instance out = inst;
	for (int v = 0; v < out.num_vars(); ++v) {
		if (!out.active(v) || out.domain_size(v) <= keep) continue;
		std::vector<int> colors = out.domain(v);
		// partial Fisher-Yates: the first `keep` entries survive
		for (int i = 0; i < keep; ++i) {
			std::uniform_int_distribution<std::size_t> pick(i, colors.size() - 1);
			std::swap(colors[i], colors[pick(rng)]);
		}
		for (std::size_t i = keep; i < colors.size(); ++i) {
			if (!out.active(v)) break;
			if (!out.remove_color(v, colors[i])) return std::nullopt;
		}
	}
	return out;
}

std::optional<csp::Assignment> run_trial(const csp::Instance &inst, Mode mode, std::uint64_t seed,
                                         std::uint64_t index) {
	auto rng = trial_rng(seed, index);
	auto restricted = restrict_random(inst, keep_of(mode), rng);
	if (!restricted) return std::nullopt;
	std::optional<csp::Assignment> sol = mode == Mode::Restrict4 ? cspsolver::solve(*restricted).solution
	                                                             : csp::solve_22csp(*restricted);
	if (!sol) return std::nullopt;
	sol->resize(inst.num_vars());
	if (!csp::is_solution(inst, *sol)) throw std::logic_error("randomized trial produced an invalid assignment");
	return sol;
}

double success_probability(const csp::Instance &inst, Mode mode) {
	double logp = 0.0;
	for (int v = 0; v < inst.num_vars(); ++v) {
		if (!inst.active(v)) continue;
		int k = inst.domain_size(v);
		if (k > keep_of(mode)) logp += std::log(static_cast<double>(keep_of(mode)) / k);
	}
	return std::exp(logp);
}

namespace {

RandomResult run(const csp::Instance &inst, Mode mode, const TrialPolicy &policy) {
	if (policy.max_trials < 1) throw std::invalid_argument("max trials must be at least one");
	if (!(policy.delta > 0.0 && policy.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
	RandomResult out;
	out.success_bound = success_probability(inst, mode);
	const bool exact = inst.max_domain() <= keep_of(mode);
	const std::uint64_t limit = exact ? 1 : policy.max_trials;
	const std::uint64_t batch =
	    policy.parallel ? std::max<std::uint64_t>(1, std::thread::hardware_concurrency()) : 1;
	for (std::uint64_t first = 0; first < limit && !out.solution; first += batch) {
		const std::uint64_t last = std::min(limit, first + batch);
		std::vector<std::optional<csp::Assignment>> found(last - first);
		if (batch == 1) {
			found[0] = run_trial(inst, mode, policy.seed, first);
		} else {
			std::vector<std::future<std::optional<csp::Assignment>>> jobs;
			for (std::uint64_t i = first; i < last; ++i)
				jobs.push_back(std::async(std::launch::async, run_trial, std::cref(inst), mode, policy.seed, i));
			for (std::size_t k = 0; k < jobs.size(); ++k) found[k] = jobs[k].get();
		}
		// lowest index wins, matching the sequential order
		for (std::size_t k = 0; k < found.size(); ++k) {
			if (!found[k]) continue;
			out.solution = std::move(found[k]);
			out.trials = first + k + 1;
			break;
		}
		if (!out.solution) out.trials = last;
	}
	if (out.solution) {
		out.verdict = Verdict::Sat;
		out.residual = 0.0;
		return out;
	}
	out.residual = std::pow(1.0 - out.success_bound, static_cast<double>(out.trials));
	out.verdict = out.residual <= policy.delta ? Verdict::UnsatLikely : Verdict::Unknown;
	return out;
}

} // namespace

RandomResult solve_random_restrict4(const csp::Instance &inst, const TrialPolicy &policy) {
	if (inst.max_domain() <= 3) throw csp::ContractViolation("restrict4 needs a variable with four or more colors");
	return run(inst, Mode::Restrict4, policy);
}

RandomResult solve_random_pairs(const csp::Instance &inst, const TrialPolicy &policy) {
	return run(inst, Mode::Pairs, policy);
}

} // namespace trichrome::randsolver
