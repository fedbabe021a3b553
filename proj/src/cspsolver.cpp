#include "trichrome/cspsolver.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <numeric>

#include "trichrome/graph.h"
#include "trichrome/workfactor.h"

namespace trichrome::cspsolver {

std::string_view rule_name(Rule r) {
	switch (r) {
	case Rule::MergeIsolated: return "merge-isolated";
	case Rule::SingleConstraint: return "single-constraint";
	case Rule::SameNeighbor: return "same-neighbor";
	case Rule::HighDegree: return "high-degree";
	case Rule::TouchesFourColor: return "touches-four-color";
	case Rule::MixedDegree: return "mixed-degree";
	case Rule::SmallComponent: return "small-component";
	case Rule::LargeComponent: return "large-component";
	case Rule::TwoComponent: return "two-component";
	}
	return "unknown";
}

std::vector<double> claimed_reductions(Rule r, double e) {
	switch (r) {
	case Rule::MergeIsolated: return {e};
	case Rule::SingleConstraint: return {2 - e, 3 - e};
	case Rule::SameNeighbor: return {2 - e, 3 - 2 * e};
	case Rule::HighDegree: return {1 - e, 5 - 4 * e};
	case Rule::TouchesFourColor: return {3 - e, 4 - e, 4 - e};
	case Rule::MixedDegree: return {1 + e, 4};
	case Rule::SmallComponent: return {4, 4, 4};
	case Rule::LargeComponent: return {4, 4, 5, 5};
	case Rule::TwoComponent: return {3, 3, 5};
	}
	return {};
}

double claimed_work_factor(Rule r, double e) {
	double f = work_factor(claimed_reductions(r, e));
	if (r == Rule::MixedDegree) f = std::max(f, work_factor({3, 4 - e, 4}));
	return f;
}

Assignment ReductionStep::back_map(const Assignment &child_solution) const {
	if (static_cast<int>(child_solution.size()) < parent_vars)
		throw csp::ContractViolation("back_map: child solution is shorter than the parent");
	return Assignment(child_solution.begin(), child_solution.begin() + parent_vars);
}

// --- housekeeping ---------------------------------------------------------------

bool housekeep(Instance &inst) {
	bool changed = true;
	while (changed) {
		changed = false;
		for (int v = 0; v < inst.num_vars(); ++v) {
			if (!inst.active(v)) continue;
			const int k = inst.domain_size(v);
			if (k == 0) return false;
			int free_color = -1;
			for (int c : inst.domain(v)) {
				if (inst.degree({v, c}) == 0) {
					free_color = c;
					break;
				}
			}
			if (free_color >= 0 || k == 1) {
				if (!inst.assign(v, free_color >= 0 ? free_color : inst.domain(v).front())) return false;
				changed = true;
			} else if (k == 2) {
				if (!inst.eliminate_two_color(v)) return false;
				changed = true;
			}
		}
	}
	return true;
}

// --- components ------------------------------------------------------------------

namespace {

std::vector<Pair> active_pairs(const Instance &inst) {
	std::vector<Pair> out;
	for (int v = 0; v < inst.num_vars(); ++v) {
		if (!inst.active(v)) continue;
		for (int c : inst.domain(v)) out.push_back({v, c});
	}
	return out;
}

int distinct_vars(const std::vector<Pair> &partners) {
	int n = 0;
	for (std::size_t i = 0; i < partners.size(); ++i) {
		if (i == 0 || partners[i].var != partners[i - 1].var) ++n;
	}
	return n;
}

// Components of the pairs with exactly `degree` constraints, joined through
// constraints whose other end has the same degree.
std::vector<std::vector<Pair>> components_of_degree(const Instance &inst, int degree) {
	std::vector<Pair> members;
	for (Pair p : active_pairs(inst)) {
		if (inst.degree(p) == degree) members.push_back(p);
	}
	std::map<Pair, int> index;
	for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);
	std::vector<int> parent(members.size());
	std::iota(parent.begin(), parent.end(), 0);
	auto find = [&](int x) {
		while (parent[x] != x) x = parent[x] = parent[parent[x]];
		return x;
	};
	for (std::size_t i = 0; i < members.size(); ++i) {
		for (Pair q : inst.partners(members[i])) {
			auto it = index.find(q);
			if (it != index.end()) parent[find(static_cast<int>(i))] = find(it->second);
		}
	}
	std::map<int, std::vector<Pair>> groups;
	for (std::size_t i = 0; i < members.size(); ++i) groups[find(static_cast<int>(i))].push_back(members[i]);
	std::vector<std::vector<Pair>> out;
	for (auto &[root, g] : groups) out.push_back(std::move(g));
	std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.front() < b.front(); });
	return out;
}

int count_vars(const std::vector<Pair> &pairs) {
	std::vector<int> vars;
	for (Pair p : pairs) vars.push_back(p.var);
	std::sort(vars.begin(), vars.end());
	return static_cast<int>(std::unique(vars.begin(), vars.end()) - vars.begin());
}

bool is_triangle(const Instance &inst, const std::vector<Pair> &pairs) {
	if (pairs.size() != 3) return false;
	for (std::size_t i = 0; i < 3; ++i)
		for (std::size_t j = i + 1; j < 3; ++j) {
			const auto &pa = inst.partners(pairs[i]);
			if (!std::binary_search(pa.begin(), pa.end(), pairs[j])) return false;
		}
	return true;
}

} // namespace

ComponentView classify_components(const Instance &inst) {
	for (Pair p : active_pairs(inst)) {
		int d = inst.degree(p);
		if (d != 0 && d != 2 && d != 3)
			throw csp::ContractViolation("classify_components: a constrained pair has other than 2 or 3 constraints");
	}
	ComponentView view;
	for (auto &pairs : components_of_degree(inst, 3)) {
		Component c;
		c.variable_count = count_vars(pairs);
		if (c.variable_count >= 5) c.kind = ComponentKind::Large;
		else c.kind = pairs.size() == 4 ? ComponentKind::SmallGood : ComponentKind::SmallNotGood;
		c.pairs = std::move(pairs);
		view.three.push_back(std::move(c));
	}
	for (auto &pairs : components_of_degree(inst, 2)) {
		Component c;
		c.variable_count = count_vars(pairs);
		c.kind = is_triangle(inst, pairs) ? ComponentKind::Triangle : ComponentKind::NonTriangle;
		c.pairs = std::move(pairs);
		view.two.push_back(std::move(c));
	}
	return view;
}

bool base_case_applies(const Instance &inst) {
	for (Pair p : active_pairs(inst)) {
		const auto &nb = inst.partners(p);
		const int d = static_cast<int>(nb.size());
		if (d != 2 && d != 3) return false;
		// p with its partners must form a clique of d+1 pairs on distinct
		// variables, each of degree d.
		std::vector<Pair> clique = nb;
		clique.push_back(p);
		std::sort(clique.begin(), clique.end());
		if (count_vars(clique) != d + 1) return false;
		for (Pair q : clique) {
			const auto &nq = inst.partners(q);
			if (static_cast<int>(nq.size()) != d) return false;
			for (Pair r : clique) {
				if (r != q && !std::binary_search(nq.begin(), nq.end(), r)) return false;
			}
		}
	}
	return true;
}

std::optional<Assignment> matching_base_case(const Instance &inst) {
	if (!base_case_applies(inst)) throw csp::ContractViolation("matching_base_case: instance is not in base-case shape");
	std::vector<std::vector<Pair>> groups = components_of_degree(inst, 3);
	for (auto &g : components_of_degree(inst, 2)) groups.push_back(std::move(g));
	std::map<Pair, int> component_of;
	for (std::size_t k = 0; k < groups.size(); ++k) {
		for (Pair p : groups[k]) component_of[p] = static_cast<int>(k);
	}

	std::vector<int> vars;
	for (int v = 0; v < inst.num_vars(); ++v) {
		if (inst.active(v)) vars.push_back(v);
	}
	std::vector<std::pair<int, int>> edges;
	std::vector<std::map<int, int>> color_via(vars.size()); // component -> color
	for (std::size_t i = 0; i < vars.size(); ++i) {
		for (int c : inst.domain(vars[i])) {
			int k = component_of.at({vars[i], c});
			if (color_via[i].emplace(k, c).second) edges.emplace_back(static_cast<int>(i), k);
		}
	}
	auto match = max_bipartite_matching(static_cast<int>(vars.size()), static_cast<int>(groups.size()), edges);
	Assignment partial(inst.num_vars(), csp::kUnassigned);
	for (std::size_t i = 0; i < vars.size(); ++i) {
		if (match[i] < 0) return std::nullopt;
		partial[vars[i]] = color_via[i].at(match[i]);
	}
	return inst.complete(std::move(partial));
}

// --- rule catalog -------------------------------------------------------------------

namespace {

struct Op {
	enum Kind { Assign, Remove } kind;
	Pair pair;
};

Branch make_branch(const Instance &parent, const std::vector<Op> &ops) {
	const double before = parent.size();
	Instance child = parent;
	bool ok = true;
	for (const Op &op : ops) {
		const Pair p = op.pair;
		if (!child.active(p.var)) {
			bool fixed_here = child.state(p.var) == csp::VarState::Fixed && child.fixed_color(p.var) == p.color;
			if (op.kind == Op::Assign ? !fixed_here : fixed_here) ok = false;
		} else if (!child.allows(p.var, p.color)) {
			if (op.kind == Op::Assign) ok = false;
		} else {
			ok = op.kind == Op::Assign ? child.assign(p.var, p.color) : child.remove_color(p.var, p.color);
		}
		if (!ok) break;
	}
	if (ok) ok = housekeep(child);
	if (!ok) return {parent, before, false};
	return {std::move(child), before - child.size(), true};
}

ReductionStep finish(const Instance &parent, Rule rule, std::vector<Branch> branches) {
	std::stable_sort(branches.begin(), branches.end(),
	                 [](const Branch &a, const Branch &b) { return a.decrement < b.decrement; });
	return {rule, std::move(branches), parent.num_vars()};
}

ReductionStep branch_on_variable(const Instance &inst, Rule rule, int v) {
	std::vector<Branch> out;
	for (int c : inst.domain(v)) out.push_back(make_branch(inst, {{Op::Assign, {v, c}}}));
	return finish(inst, rule, std::move(out));
}

ReductionStep use_or_drop(const Instance &inst, Rule rule, Pair p) {
	return finish(inst, rule, {make_branch(inst, {{Op::Assign, p}}), make_branch(inst, {{Op::Remove, p}})});
}

Pair lowest_partner_in(const Instance &inst, Pair p, const std::vector<Pair> &component) {
	for (Pair q : inst.partners(p)) {
		if (std::binary_search(component.begin(), component.end(), q)) return q;
	}
	throw csp::ContractViolation("component member without a partner inside the component");
}

} // namespace

std::optional<ReductionStep> find_reduction(const Instance &inst) {
	const std::vector<Pair> pairs = active_pairs(inst);
	for (Pair p : pairs) {
		if (inst.degree(p) == 0) throw csp::ContractViolation("find_reduction: instance is not housekept");
		int k = inst.domain_size(p.var);
		if (k < 3 || k > 4) throw csp::ContractViolation("find_reduction: domains must hold 3 or 4 colors");
	}

	// Isolated constraint between two 3-color variables: merge.
	for (Pair p : pairs) {
		if (inst.degree(p) != 1 || inst.domain_size(p.var) != 3) continue;
		Pair q = inst.partners(p).front();
		if (inst.degree(q) != 1 || inst.domain_size(q.var) != 3) continue;
		Instance child = inst;
		child.merge_isolated_pair(p, q);
		bool ok = housekeep(child);
		std::vector<Branch> b;
		if (ok) b.push_back({child, inst.size() - child.size(), true});
		else b.push_back({inst, inst.size(), false});
		return finish(inst, Rule::MergeIsolated, std::move(b));
	}

	// Any other singly constrained pair (v,R)-(w,S): either w = S, or w != S
	// and v can take R for free.
	for (Pair p : pairs) {
		if (inst.degree(p) != 1) continue;
		Pair q = inst.partners(p).front();
		return finish(inst, Rule::SingleConstraint,
		              {make_branch(inst, {{Op::Assign, q}}),
		               make_branch(inst, {{Op::Remove, q}, {Op::Assign, p}})});
	}

	for (Pair p : pairs) {
		const auto &nb = inst.partners(p);
		if (distinct_vars(nb) < static_cast<int>(nb.size())) return use_or_drop(inst, Rule::SameNeighbor, p);
	}

	for (Pair p : pairs) {
		int n = distinct_vars(inst.partners(p));
		if (n >= 4 || (n == 3 && inst.domain_size(p.var) == 4)) return use_or_drop(inst, Rule::HighDegree, p);
	}

	// From here on every pair has 2 or 3 constraints on distinct variables
	// and 3-constraint pairs sit on 3-color variables.
	for (Pair p : pairs) {
		if (inst.degree(p) != 3) continue;
		for (Pair q : inst.partners(p)) {
			if (inst.domain_size(q.var) == 4) return branch_on_variable(inst, Rule::TouchesFourColor, p.var);
		}
	}

	for (Pair p : pairs) {
		if (inst.degree(p) != 3) continue;
		for (Pair q : inst.partners(p)) {
			if (inst.degree(q) == 2) return use_or_drop(inst, Rule::MixedDegree, p);
		}
	}

	const ComponentView view = classify_components(inst);
	for (const Component &c : view.three) {
		if (c.kind == ComponentKind::SmallNotGood)
			return branch_on_variable(inst, Rule::SmallComponent, c.pairs.front().var);
	}
	for (const Component &c : view.three) {
		if (c.kind != ComponentKind::Large) continue;
		// v = R, or w = S, or v != R and w takes one of its other colors.
		Pair p = c.pairs.front();
		Pair q = lowest_partner_in(inst, p, c.pairs);
		std::vector<Branch> b{make_branch(inst, {{Op::Assign, p}}), make_branch(inst, {{Op::Assign, q}})};
		for (int other : inst.domain(q.var)) {
			if (other != q.color) b.push_back(make_branch(inst, {{Op::Remove, p}, {Op::Assign, {q.var, other}}}));
		}
		return finish(inst, Rule::LargeComponent, std::move(b));
	}
	for (const Component &c : view.two) {
		if (c.kind != ComponentKind::NonTriangle) continue;
		Pair p = c.pairs.front();
		Pair q = lowest_partner_in(inst, p, c.pairs);
		return finish(inst, Rule::TwoComponent,
		              {make_branch(inst, {{Op::Assign, p}}), make_branch(inst, {{Op::Assign, q}}),
		               make_branch(inst, {{Op::Remove, p}, {Op::Remove, q}})});
	}
	return std::nullopt;
}

// --- statistics ---------------------------------------------------------------------

double SearchStats::effective_work_factor() const {
	if (root_size <= 0.0 || calls == 0) return 1.0;
	return std::pow(static_cast<double>(calls), 1.0 / root_size);
}

void SearchStats::merge(const SearchStats &o) {
	calls += o.calls;
	base_cases += o.base_cases;
	base_case_failures += o.base_case_failures;
	for (int i = 0; i < kRuleCount; ++i) {
		RuleStats &a = rules[i];
		const RuleStats &b = o.rules[i];
		if (b.triggers == 0) continue;
		a.min_decrement = a.triggers == 0 ? b.min_decrement : std::min(a.min_decrement, b.min_decrement);
		a.triggers += b.triggers;
		a.branches += b.branches;
		a.worst_factor = std::max(a.worst_factor, b.worst_factor);
		a.shortfalls += b.shortfalls;
	}
}

void SearchStats::note_step(const ReductionStep &step, double epsilon) {
	RuleStats &rs = rules[static_cast<int>(step.rule)];
	std::vector<double> dec;
	for (const Branch &b : step.branches) dec.push_back(b.decrement);
	const double lo = *std::min_element(dec.begin(), dec.end());
	if (!(lo > 0.0)) throw std::logic_error("reduction produced a branch that does not shrink the instance");
	rs.min_decrement = rs.triggers == 0 ? lo : std::min(rs.min_decrement, lo);
	rs.triggers += 1;
	rs.branches += dec.size();
	const double f = work_factor(dec);
	rs.worst_factor = std::max(rs.worst_factor, f);
	if (f > claimed_work_factor(step.rule, epsilon) + 1e-9) rs.shortfalls += 1;
}

// --- search ---------------------------------------------------------------------------

namespace {

class Searcher {
public:
	Searcher(const SolveOptions &options, std::atomic<bool> &done, std::mutex &hook_mutex)
	    : options_(options), done_(done), hook_mutex_(hook_mutex) {}

	std::optional<Assignment> run(Instance inst, int depth) {
		if (done_.load(std::memory_order_relaxed)) return std::nullopt;
		++stats.calls;
		if (!housekeep(inst)) return std::nullopt;
		if (inst.active_count() == 0) return inst.complete({});
		std::optional<ReductionStep> step = find_reduction(inst);
		if (!step) {
			++stats.base_cases;
			auto solution = matching_base_case(inst);
			if (!solution) ++stats.base_case_failures;
			if (options_.on_base_case) {
				std::lock_guard lock(hook_mutex_);
				options_.on_base_case(inst, solution.has_value());
			}
			return solution;
		}
		stats.note_step(*step, inst.epsilon());
		if (options_.parallel && depth < options_.parallel_depth) return fan_out(*step, depth);
		for (const Branch &b : step->branches) {
			if (!b.feasible) continue;
			if (auto r = run(b.child, depth + 1)) return step->back_map(*r);
		}
		return std::nullopt;
	}

	SearchStats stats;

private:
	std::optional<Assignment> fan_out(const ReductionStep &step, int depth) {
		std::vector<std::future<std::pair<std::optional<Assignment>, SearchStats>>> jobs;
		for (const Branch &b : step.branches) {
			if (!b.feasible) continue;
			jobs.push_back(std::async(std::launch::async, [this, &b, depth] {
				Searcher sub(options_, done_, hook_mutex_);
				auto r = sub.run(b.child, depth + 1);
				if (r) done_.store(true);
				return std::make_pair(std::move(r), sub.stats);
			}));
		}
		std::optional<Assignment> found;
		for (auto &job : jobs) {
			auto [r, s] = job.get();
			stats.merge(s);
			if (r && !found) found = step.back_map(*r);
		}
		return found;
	}

	const SolveOptions &options_;
	std::atomic<bool> &done_;
	std::mutex &hook_mutex_;
};

} // namespace

SolveResult solve(const Instance &instance, const SolveOptions &options) {
	if (instance.max_domain() > 4) throw csp::ContractViolation("solve: domains must hold at most four colors");
	std::atomic<bool> done{false};
	std::mutex hook_mutex;
	Searcher searcher(options, done, hook_mutex);
	SolveResult result;
	auto r = searcher.run(instance, 0);
	result.stats = searcher.stats;
	result.stats.root_size = instance.size();
	if (r) {
		r->resize(instance.num_vars());
		if (!csp::is_solution(instance, *r)) throw std::logic_error("solver produced an invalid assignment");
		result.solution = std::move(r);
	}
	return result;
}

} // namespace trichrome::cspsolver
