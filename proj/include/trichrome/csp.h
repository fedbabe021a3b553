#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "trichrome/workfactor.h"

namespace trichrome {

class Graph;

namespace csp {

/// Value stored for variables that received no color.
inline constexpr int kUnassigned = -1;

/// One color per variable slot, indexed like the instance's variables.
using Assignment = std::vector<int>;

struct Pair {
	int var = 0;
	int color = 0;
	auto operator<=>(const Pair &) const = default;
};

/// A forbidden combination of two (variable, color) pairs; first < second.
struct Constraint {
	Pair first;
	Pair second;
	auto operator<=>(const Constraint &) const = default;
};

Constraint make_constraint(Pair a, Pair b);

class BuildError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ContractViolation : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

/// Active variables still need a color. Fixed ones were assigned by
/// propagation. Retired ones were folded into other variables (merge, split,
/// two-color elimination); their values are rebuilt by Instance::complete.
enum class VarState : std::uint8_t { Active, Fixed, Retired };

/// A (d,2)-CSP instance. Variables keep their index for the lifetime of the
/// instance and of every instance derived from it by copying, so solutions of
/// a derived instance map back to the original by truncation after
/// complete().
class Instance {
public:
	Instance() = default;

	/// Colors must be distinct and non-negative within a domain; constraint
	/// endpoints must name declared variables and colors, on two different
	/// variables. Duplicate constraints collapse.
	static Instance build(const std::vector<std::vector<int>> &domains,
	                      std::span<const Constraint> constraints,
	                      double epsilon = default_epsilon());

	int num_vars() const { return static_cast<int>(vars_.size()); }
	VarState state(int v) const { return vars_.at(v).state; }
	bool active(int v) const { return vars_.at(v).state == VarState::Active; }
	int fixed_color(int v) const { return vars_.at(v).fixed; }

	/// Currently allowed colors of v, ascending.
	std::vector<int> domain(int v) const;
	int domain_size(int v) const { return static_cast<int>(vars_.at(v).slots.size()); }
	bool allows(int v, int color) const;

	/// Pairs constrained against p, ascending. Empty if p is not allowed.
	const std::vector<Pair> &partners(Pair p) const;
	int degree(Pair p) const { return static_cast<int>(partners(p).size()); }

	std::set<Constraint> constraints() const;
	std::size_t constraint_count() const { return constraint_count_; }

	double epsilon() const { return epsilon_; }
	int active_count() const;
	int max_domain() const;

	/// n_3 + (2 - eps) n_4 over active variables, where 2-color variables
	/// count 1, 1-color variables count 0 and k > 4 colors count k - 2 - eps.
	double size() const;
	double contribution(int v) const;

	/// Fix v to c and delete every color conflicting with (v,c). Variables
	/// left with one color are fixed in turn. Returns false if some domain
	/// empties, in which case the instance is left unusable.
	bool assign(int v, int c);

	/// Delete color c from v with its constraints. A variable left with one
	/// color is assigned. Returns false if a domain empties.
	bool remove_color(int v, int c);

	/// Replace a 2-color variable by resolution: for each constraint pair
	/// (v,a)-x and (v,b)-y a constraint x-y is added (or x's color deleted
	/// when x == y). Returns false if a domain empties.
	bool eliminate_two_color(int v);

	/// Merge two 3-color variables joined by a constraint that is the only
	/// one on either endpoint into a single 4-color variable. Returns the new
	/// variable's index. Throws ContractViolation if the shape is wrong.
	int merge_isolated_pair(Pair vr, Pair ws);

	/// Finds the isolated constraint between v and w, then merges.
	int merge_isolated_pair(int v, int w);

	/// Inverse of merge: a 4-color variable becomes two 3-color variables
	/// with one constraint between their new colors. Returns the two new
	/// indices.
	std::pair<int, int> split_four_color(int u);

	/// Fill in fixed and retired variables from a solution of the active
	/// ones. Entries for active variables are taken from `partial`.
	Assignment complete(Assignment partial) const;

	/// Structural equality: states, domains, fixed colors and constraints.
	bool same_structure(const Instance &other) const;

private:
	struct ColorSlot {
		int color;
		std::vector<Pair> partners;
	};
	struct Variable {
		VarState state = VarState::Active;
		int fixed = kUnassigned;
		std::vector<ColorSlot> slots;
	};
	struct Derivation {
		std::function<void(Assignment &)> rebuild;
		std::shared_ptr<const Derivation> prev;
	};

	ColorSlot *find_slot(Pair p);
	const ColorSlot *find_slot(Pair p) const;
	void add_constraint_unchecked(Pair a, Pair b);
	void erase_half(Pair owner, Pair partner);
	std::vector<Pair> detach_slot(Pair p);
	void detach_variable(int v);
	int append_variable(std::vector<int> colors);
	void record(std::function<void(Assignment &)> rebuild);
	bool settle(std::vector<int> touched);

	std::vector<Variable> vars_;
	std::size_t constraint_count_ = 0;
	double epsilon_ = 0.0;
	std::shared_ptr<const Derivation> log_;
};

/// Every active variable gets a color from its domain, fixed variables keep
/// their color, and no constraint has both ends chosen. Throws
/// ContractViolation if `a` is shorter than num_vars().
bool is_solution(const Instance &instance, const Assignment &a);

/// Value-returning wrappers; nullopt signals an emptied domain.
std::optional<Instance> assign_and_propagate(Instance instance, int v, int c);
std::optional<Instance> delete_color(Instance instance, int v, int c);

/// Polynomial solver for instances whose active variables have at most two
/// colors: 2-SAT by implication graph and strongly connected components.
std::optional<Assignment> solve_22csp(const Instance &instance);

/// Exhaustive scan in lexicographic order (variables by index, colors
/// ascending). Returns the first solution found, completed.
std::optional<Assignment> brute_force_solve(const Instance &instance);
std::uint64_t count_solutions(const Instance &instance);

/// One variable per vertex with its list as domain and a constraint
/// {(u,c),(v,c)} per edge and shared color. Lists hold at most 3 colors.
Instance from_graph_coloring(const Graph &g, const std::vector<std::vector<int>> &lists,
                             double epsilon = default_epsilon());

/// Lists {1,2,3} everywhere.
Instance from_graph_coloring(const Graph &g, double epsilon = default_epsilon());

} // namespace csp
} // namespace trichrome
