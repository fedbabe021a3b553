#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "trichrome/csp.h"

namespace trichrome::cspsolver {

using csp::Assignment;
using csp::Instance;
using csp::Pair;

/// Reduction rules in priority order.
enum class Rule : std::uint8_t {
	MergeIsolated = 0,   // isolated constraint between 3-color variables
	SingleConstraint,    // any other pair with one constraint
	SameNeighbor,        // pair with two constraints into one variable
	HighDegree,          // pair with >= 4 neighbors, or 3 on a 4-color variable
	TouchesFourColor,    // 3-constraint pair with a neighbor on a 4-color variable
	MixedDegree,         // 3-constraint pair next to a 2-constraint pair
	SmallComponent,      // small three-component that is not good
	LargeComponent,      // three-component on five or more variables
	TwoComponent,        // two-component that is not a triangle
};
inline constexpr int kRuleCount = 9;

std::string_view rule_name(Rule r);

/// Size decrements the analysis assigns to each rule, for the given epsilon.
/// MixedDegree reports the (1+e, 4) alternative; see claimed_work_factor.
std::vector<double> claimed_reductions(Rule r, double epsilon);

/// Work factor bound claimed for the rule. For MixedDegree this is
/// max(lambda(1+e,4), lambda(3,4-e,4)).
double claimed_work_factor(Rule r, double epsilon);

struct Branch {
	Instance child;      // already housekept
	double decrement;    // size(parent) - size(child); parent size when infeasible
	bool feasible;       // false: a domain emptied while building the child
};

struct ReductionStep {
	Rule rule;
	std::vector<Branch> branches; // ascending decrement
	int parent_vars = 0;

	/// Maps a completed solution of any child onto the parent's variables.
	Assignment back_map(const Assignment &child_solution) const;
};

/// Propagate singleton domains, fix colors that carry no constraint and
/// eliminate 2-color variables until none of these apply. Returns false if
/// a domain empties.
bool housekeep(Instance &instance);

/// First rule (in priority order) whose trigger holds on a housekept
/// instance with domains of 3 or 4 colors. nullopt means every constraint
/// lies in a good three-component or a triangular two-component.
std::optional<ReductionStep> find_reduction(const Instance &instance);

enum class ComponentKind : std::uint8_t { SmallGood, SmallNotGood, Large, Triangle, NonTriangle };

struct Component {
	std::vector<Pair> pairs; // ascending
	int variable_count = 0;
	ComponentKind kind;
};

struct ComponentView {
	std::vector<Component> three; // pairs with exactly three constraints
	std::vector<Component> two;   // pairs with exactly two constraints
};

/// Connected components of the constraint relation restricted to
/// 3-constraint pairs and, separately, to 2-constraint pairs. Throws
/// csp::ContractViolation if some constrained pair has another degree.
ComponentView classify_components(const Instance &instance);

/// Whether every constraint joins members of a 4-clique of 3-constraint
/// pairs or a triangle of 2-constraint pairs, with every color of every
/// active variable constrained.
bool base_case_applies(const Instance &instance);

/// Variables-versus-components bipartite matching. Returns a completed
/// solution or nullopt. Throws csp::ContractViolation when the base case
/// shape does not hold.
std::optional<Assignment> matching_base_case(const Instance &instance);

struct RuleStats {
	std::uint64_t triggers = 0;
	std::uint64_t branches = 0;
	double min_decrement = 0.0;     // smallest achieved decrement seen (0 = none yet)
	double worst_factor = 0.0;      // largest lambda(achieved decrements) seen
	std::uint64_t shortfalls = 0;   // applications whose lambda exceeded the claim
};

struct SearchStats {
	std::uint64_t calls = 0;
	std::uint64_t base_cases = 0;
	std::uint64_t base_case_failures = 0;
	std::array<RuleStats, kRuleCount> rules{};
	double root_size = 0.0;

	/// calls^(1/root_size); 1 for an empty root.
	double effective_work_factor() const;
	void merge(const SearchStats &other);
	void note_step(const ReductionStep &step, double epsilon);
};

struct SolveOptions {
	bool parallel = false;
	int parallel_depth = 2; // levels of the search tree fanned out to threads
	/// Called with every base-case instance and the matching verdict.
	std::function<void(const Instance &, bool)> on_base_case;
};

struct SolveResult {
	std::optional<Assignment> solution; // completed; passes is_solution on the input
	SearchStats stats;
};

/// Depth-first branch and reduce. Domains must hold at most four colors.
SolveResult solve(const Instance &instance, const SolveOptions &options = {});

} // namespace trichrome::cspsolver
