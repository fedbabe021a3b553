#include "trichrome/csp.h"

#include <algorithm>
#include <string>

#include "trichrome/graph.h"

namespace trichrome::csp {

Constraint make_constraint(Pair a, Pair b) {
	if (a.var == b.var) throw BuildError("constraint must join two different variables");
	if (b < a) std::swap(a, b);
	return {a, b};
}

// --- construction ------------------------------------------------------------

Instance Instance::build(const std::vector<std::vector<int>> &domains,
                         std::span<const Constraint> constraints, double epsilon) {
	if (!(epsilon >= 0.0 && epsilon < 1.0)) throw BuildError("epsilon must lie in [0, 1)");
	Instance inst;
	inst.epsilon_ = epsilon;
	inst.vars_.resize(domains.size());
	for (std::size_t v = 0; v < domains.size(); ++v) {
		std::vector<int> colors = domains[v];
		std::sort(colors.begin(), colors.end());
		if (std::adjacent_find(colors.begin(), colors.end()) != colors.end())
			throw BuildError("variable " + std::to_string(v + 1) + " lists a color twice");
		for (int c : colors) {
			if (c < 0) throw BuildError("variable " + std::to_string(v + 1) + " has a negative color");
			inst.vars_[v].slots.push_back({c, {}});
		}
	}
	for (const Constraint &raw : constraints) {
		Constraint c = make_constraint(raw.first, raw.second);
		for (Pair p : {c.first, c.second}) {
			if (p.var < 0 || p.var >= inst.num_vars())
				throw BuildError("constraint references undeclared variable " + std::to_string(p.var + 1));
			if (!inst.allows(p.var, p.color))
				throw BuildError("constraint references color " + std::to_string(p.color) +
				                 " not allowed at variable " + std::to_string(p.var + 1));
		}
		inst.add_constraint_unchecked(c.first, c.second);
	}
	return inst;
}

// --- queries --------------------------------------------------------------------

Instance::ColorSlot *Instance::find_slot(Pair p) {
	if (p.var < 0 || p.var >= num_vars()) return nullptr;
	for (auto &s : vars_[p.var].slots) {
		if (s.color == p.color) return &s;
	}
	return nullptr;
}

const Instance::ColorSlot *Instance::find_slot(Pair p) const {
	return const_cast<Instance *>(this)->find_slot(p);
}

std::vector<int> Instance::domain(int v) const {
	std::vector<int> out;
	for (const auto &s : vars_.at(v).slots) out.push_back(s.color);
	return out;
}

bool Instance::allows(int v, int color) const { return find_slot({v, color}) != nullptr; }

const std::vector<Pair> &Instance::partners(Pair p) const {
	static const std::vector<Pair> none;
	const ColorSlot *s = find_slot(p);
	return s ? s->partners : none;
}

std::set<Constraint> Instance::constraints() const {
	std::set<Constraint> out;
	for (int v = 0; v < num_vars(); ++v) {
		for (const auto &s : vars_[v].slots) {
			for (Pair q : s.partners) {
				if (v < q.var) out.insert({{v, s.color}, q});
			}
		}
	}
	return out;
}

int Instance::active_count() const {
	int n = 0;
	for (const auto &v : vars_) n += v.state == VarState::Active;
	return n;
}

int Instance::max_domain() const {
	int d = 0;
	for (const auto &v : vars_) {
		if (v.state == VarState::Active) d = std::max(d, static_cast<int>(v.slots.size()));
	}
	return d;
}

double Instance::contribution(int v) const {
	const Variable &var = vars_.at(v);
	if (var.state != VarState::Active) return 0.0;
	const int k = static_cast<int>(var.slots.size());
	if (k <= 1) return 0.0;
	if (k <= 3) return 1.0;
	return static_cast<double>(k) - 2.0 - epsilon_;
}

double Instance::size() const {
	double s = 0.0;
	for (int v = 0; v < num_vars(); ++v) s += contribution(v);
	return s;
}

bool Instance::same_structure(const Instance &other) const {
	if (num_vars() != other.num_vars()) return false;
	for (int v = 0; v < num_vars(); ++v) {
		if (state(v) != other.state(v) || fixed_color(v) != other.fixed_color(v)) return false;
		if (domain(v) != other.domain(v)) return false;
	}
	return constraints() == other.constraints();
}

// --- low-level mutation ---------------------------------------------------------

void Instance::add_constraint_unchecked(Pair a, Pair b) {
	ColorSlot *sa = find_slot(a);
	ColorSlot *sb = find_slot(b);
	auto it = std::lower_bound(sa->partners.begin(), sa->partners.end(), b);
	if (it != sa->partners.end() && *it == b) return;
	sa->partners.insert(it, b);
	sb->partners.insert(std::lower_bound(sb->partners.begin(), sb->partners.end(), a), a);
	++constraint_count_;
}

void Instance::erase_half(Pair owner, Pair partner) {
	ColorSlot *s = find_slot(owner);
	auto it = std::lower_bound(s->partners.begin(), s->partners.end(), partner);
	if (it != s->partners.end() && *it == partner) s->partners.erase(it);
}

std::vector<Pair> Instance::detach_slot(Pair p) {
	ColorSlot *s = find_slot(p);
	std::vector<Pair> out = std::move(s->partners);
	s->partners.clear();
	for (Pair q : out) erase_half(q, p);
	constraint_count_ -= out.size();
	return out;
}

void Instance::detach_variable(int v) {
	for (std::size_t i = 0; i < vars_[v].slots.size(); ++i) detach_slot({v, vars_[v].slots[i].color});
}

int Instance::append_variable(std::vector<int> colors) {
	Variable var;
	for (int c : colors) var.slots.push_back({c, {}});
	vars_.push_back(std::move(var));
	return num_vars() - 1;
}

void Instance::record(std::function<void(Assignment &)> rebuild) {
	log_ = std::make_shared<const Derivation>(Derivation{std::move(rebuild), log_});
}

// Fix every touched variable that is down to one color; fail on empty domains.
bool Instance::settle(std::vector<int> touched) {
	while (!touched.empty()) {
		int w = touched.back();
		touched.pop_back();
		Variable &var = vars_[w];
		if (var.state != VarState::Active) continue;
		if (var.slots.empty()) return false;
		if (var.slots.size() == 1) {
			int c = var.slots.front().color;
			auto conflicts = detach_slot({w, c});
			var.slots.clear();
			var.state = VarState::Fixed;
			var.fixed = c;
			for (Pair q : conflicts) {
				if (!find_slot(q)) continue;
				detach_slot(q);
				auto &slots = vars_[q.var].slots;
				slots.erase(std::find_if(slots.begin(), slots.end(),
				                         [&](const ColorSlot &s) { return s.color == q.color; }));
				touched.push_back(q.var);
			}
		}
	}
	return true;
}

// --- transformations --------------------------------------------------------------

bool Instance::assign(int v, int c) {
	if (v < 0 || v >= num_vars() || !active(v) || !allows(v, c))
		throw ContractViolation("assign: color not allowed at an active variable");
	auto &slots = vars_[v].slots;
	for (auto &s : slots) {
		if (s.color != c) detach_slot({v, s.color});
	}
	slots.erase(std::remove_if(slots.begin(), slots.end(), [&](const ColorSlot &s) { return s.color != c; }),
	            slots.end());
	return settle({v});
}

bool Instance::remove_color(int v, int c) {
	if (v < 0 || v >= num_vars() || !active(v) || !allows(v, c))
		throw ContractViolation("remove_color: color not allowed at an active variable");
	detach_slot({v, c});
	auto &slots = vars_[v].slots;
	slots.erase(std::find_if(slots.begin(), slots.end(), [&](const ColorSlot &s) { return s.color == c; }));
	return settle({v});
}

bool Instance::eliminate_two_color(int v) {
	if (v < 0 || v >= num_vars() || !active(v) || domain_size(v) != 2)
		throw ContractViolation("eliminate_two_color: needs an active 2-color variable");
	const int a = vars_[v].slots[0].color;
	const int b = vars_[v].slots[1].color;
	std::vector<Pair> blockers_a = detach_slot({v, a});
	std::vector<Pair> blockers_b = detach_slot({v, b});
	vars_[v].slots.clear();
	vars_[v].state = VarState::Retired;
	record([v, a, b, blockers_a](Assignment &x) {
		bool blocked = std::any_of(blockers_a.begin(), blockers_a.end(),
		                           [&](Pair p) { return x[p.var] == p.color; });
		x[v] = blocked ? b : a;
	});

	std::vector<Pair> doomed;
	std::vector<int> touched;
	for (Pair x : blockers_a) {
		touched.push_back(x.var);
		for (Pair y : blockers_b) {
			if (x.var == y.var) {
				if (x.color == y.color) doomed.push_back(x);
			} else {
				add_constraint_unchecked(x, y);
			}
		}
	}
	for (Pair y : blockers_b) touched.push_back(y.var);
	for (Pair p : doomed) {
		if (!find_slot(p)) continue;
		detach_slot(p);
		auto &slots = vars_[p.var].slots;
		slots.erase(std::find_if(slots.begin(), slots.end(), [&](const ColorSlot &s) { return s.color == p.color; }));
	}
	return settle(std::move(touched));
}

int Instance::merge_isolated_pair(Pair vr, Pair ws) {
	const int v = vr.var;
	const int w = ws.var;
	if (v == w || v < 0 || w < 0 || v >= num_vars() || w >= num_vars() || !active(v) || !active(w) ||
	    domain_size(v) != 3 || domain_size(w) != 3 || !find_slot(vr) || !find_slot(ws) ||
	    partners(vr) != std::vector<Pair>{ws} || partners(ws) != std::vector<Pair>{vr})
		throw ContractViolation("merge_isolated_pair: not an isolated constraint between 3-color variables");

	struct Origin {
		int v_color;
		int w_color;
		std::vector<Pair> partners;
	};
	std::vector<Origin> origins;
	for (const auto &s : vars_[v].slots) {
		if (s.color != vr.color) origins.push_back({s.color, ws.color, s.partners});
	}
	for (const auto &s : vars_[w].slots) {
		if (s.color != ws.color) origins.push_back({vr.color, s.color, s.partners});
	}
	detach_variable(v);
	detach_variable(w);
	for (int x : {v, w}) {
		vars_[x].slots.clear();
		vars_[x].state = VarState::Retired;
	}

	const int u = append_variable({0, 1, 2, 3});
	for (int k = 0; k < 4; ++k) {
		for (Pair p : origins[k].partners) {
			if (p.var != v && p.var != w) add_constraint_unchecked({u, k}, p);
		}
	}
	std::array<std::pair<int, int>, 4> table;
	for (int k = 0; k < 4; ++k) table[k] = {origins[k].v_color, origins[k].w_color};
	record([u, v, w, table](Assignment &x) {
		if (x[u] < 0 || x[u] > 3) return;
		x[v] = table[x[u]].first;
		x[w] = table[x[u]].second;
	});
	return u;
}

int Instance::merge_isolated_pair(int v, int w) {
	if (v < 0 || w < 0 || v >= num_vars() || w >= num_vars())
		throw ContractViolation("merge_isolated_pair: variable out of range");
	for (const auto &s : vars_[v].slots) {
		if (s.partners.size() != 1 || s.partners[0].var != w) continue;
		Pair ws = s.partners[0];
		if (partners(ws).size() == 1) return merge_isolated_pair(Pair{v, s.color}, ws);
	}
	throw ContractViolation("merge_isolated_pair: no isolated constraint between the variables");
}

std::pair<int, int> Instance::split_four_color(int u) {
	if (u < 0 || u >= num_vars() || !active(u) || domain_size(u) != 4)
		throw ContractViolation("split_four_color: needs an active 4-color variable");
	std::vector<ColorSlot> slots = vars_[u].slots;
	detach_variable(u);
	vars_[u].slots.clear();
	vars_[u].state = VarState::Retired;

	auto fresh = [](int a, int b) {
		int r = 0;
		while (r == a || r == b) ++r;
		return r;
	};
	const int rv = fresh(slots[0].color, slots[1].color);
	const int rw = fresh(slots[2].color, slots[3].color);
	std::vector<int> vc{slots[0].color, slots[1].color, rv};
	std::vector<int> wc{slots[2].color, slots[3].color, rw};
	std::sort(vc.begin(), vc.end());
	std::sort(wc.begin(), wc.end());
	const int v = append_variable(vc);
	const int w = append_variable(wc);
	for (int k = 0; k < 4; ++k) {
		Pair owner{k < 2 ? v : w, slots[k].color};
		for (Pair p : slots[k].partners) add_constraint_unchecked(owner, p);
	}
	add_constraint_unchecked({v, rv}, {w, rw});
	record([u, v, w, rv](Assignment &x) { x[u] = (x[v] == rv) ? x[w] : x[v]; });
	return {v, w};
}

Assignment Instance::complete(Assignment partial) const {
	Assignment x(vars_.size(), kUnassigned);
	for (int v = 0; v < num_vars(); ++v) {
		if (vars_[v].state == VarState::Fixed) x[v] = vars_[v].fixed;
		else if (vars_[v].state == VarState::Active && v < static_cast<int>(partial.size())) x[v] = partial[v];
	}
	for (const Derivation *d = log_.get(); d; d = d->prev.get()) d->rebuild(x);
	return x;
}

// --- free functions -----------------------------------------------------------------

bool is_solution(const Instance &instance, const Assignment &a) {
	if (static_cast<int>(a.size()) < instance.num_vars())
		throw ContractViolation("is_solution: assignment does not cover every variable");
	for (int v = 0; v < instance.num_vars(); ++v) {
		switch (instance.state(v)) {
		case VarState::Retired:
			break;
		case VarState::Fixed:
			if (a[v] != instance.fixed_color(v)) return false;
			break;
		case VarState::Active:
			if (!instance.allows(v, a[v])) return false;
			for (Pair q : instance.partners({v, a[v]})) {
				if (a[q.var] == q.color) return false;
			}
			break;
		}
	}
	return true;
}

std::optional<Instance> assign_and_propagate(Instance instance, int v, int c) {
	if (!instance.assign(v, c)) return std::nullopt;
	return instance;
}

std::optional<Instance> delete_color(Instance instance, int v, int c) {
	if (!instance.remove_color(v, c)) return std::nullopt;
	return instance;
}

namespace {

// Tarjan SCC over a literal graph; literal 2i is "x_i", 2i+1 is "not x_i".
class TwoSat {
public:
	explicit TwoSat(int vars) : adj_(static_cast<std::size_t>(2 * vars)) {}

	void add_clause(int a, int b) { // a or b
		adj_[a ^ 1].push_back(b);
		adj_[b ^ 1].push_back(a);
	}

	std::optional<std::vector<bool>> solve() {
		const int n = static_cast<int>(adj_.size());
		index_.assign(n, -1);
		low_.assign(n, 0);
		comp_.assign(n, -1);
		on_stack_.assign(n, false);
		for (int v = 0; v < n; ++v) {
			if (index_[v] < 0) strongconnect(v);
		}
		std::vector<bool> value(static_cast<std::size_t>(n / 2));
		for (int i = 0; i < n / 2; ++i) {
			if (comp_[2 * i] == comp_[2 * i + 1]) return std::nullopt;
			// Tarjan numbers components in reverse topological order.
			value[i] = comp_[2 * i] < comp_[2 * i + 1];
		}
		return value;
	}

private:
	void strongconnect(int root) {
		struct Frame {
			int v;
			std::size_t next;
		};
		std::vector<Frame> call{{root, 0}};
		index_[root] = low_[root] = counter_++;
		stack_.push_back(root);
		on_stack_[root] = true;
		while (!call.empty()) {
			Frame &f = call.back();
			if (f.next < adj_[f.v].size()) {
				int w = adj_[f.v][f.next++];
				if (index_[w] < 0) {
					index_[w] = low_[w] = counter_++;
					stack_.push_back(w);
					on_stack_[w] = true;
					call.push_back({w, 0});
				} else if (on_stack_[w]) {
					low_[f.v] = std::min(low_[f.v], index_[w]);
				}
				continue;
			}
			int v = f.v;
			call.pop_back();
			if (!call.empty()) low_[call.back().v] = std::min(low_[call.back().v], low_[v]);
			if (low_[v] == index_[v]) {
				int w;
				do {
					w = stack_.back();
					stack_.pop_back();
					on_stack_[w] = false;
					comp_[w] = comp_count_;
				} while (w != v);
				++comp_count_;
			}
		}
	}

	std::vector<std::vector<int>> adj_;
	std::vector<int> index_, low_, comp_, stack_;
	std::vector<bool> on_stack_;
	int counter_ = 0;
	int comp_count_ = 0;
};

} // namespace

std::optional<Assignment> solve_22csp(const Instance &instance) {
	std::vector<int> slot_of(instance.num_vars(), -1);
	std::vector<std::vector<int>> doms(instance.num_vars());
	int count = 0;
	for (int v = 0; v < instance.num_vars(); ++v) {
		if (!instance.active(v)) continue;
		doms[v] = instance.domain(v);
		if (doms[v].size() > 2) throw ContractViolation("solve_22csp: variable with more than two colors");
		if (doms[v].empty()) return std::nullopt;
		slot_of[v] = count++;
	}
	// Literal for "v takes color c": x_v for the first color, not x_v for the second.
	auto lit = [&](Pair p) { return 2 * slot_of[p.var] + (p.color == doms[p.var][0] ? 0 : 1); };
	TwoSat sat(count);
	for (int v = 0; v < instance.num_vars(); ++v) {
		if (slot_of[v] < 0) continue;
		if (doms[v].size() == 1) sat.add_clause(2 * slot_of[v], 2 * slot_of[v]);
		for (int c : doms[v]) {
			for (Pair q : instance.partners({v, c})) {
				if (v < q.var) sat.add_clause(lit({v, c}) ^ 1, lit(q) ^ 1);
			}
		}
	}
	auto values = sat.solve();
	if (!values) return std::nullopt;
	Assignment partial(instance.num_vars(), kUnassigned);
	for (int v = 0; v < instance.num_vars(); ++v) {
		if (slot_of[v] < 0) continue;
		partial[v] = (*values)[slot_of[v]] ? doms[v][0] : doms[v].back();
	}
	return instance.complete(std::move(partial));
}

namespace {

// Depth-first product-space scan with pruning on the constraints already
// decided; visits assignments in lexicographic order.
template <class OnSolution>
void scan(const Instance &instance, OnSolution &&on_solution) {
	std::vector<int> order;
	std::vector<std::vector<int>> doms(instance.num_vars());
	for (int v = 0; v < instance.num_vars(); ++v) {
		if (instance.active(v)) {
			order.push_back(v);
			doms[v] = instance.domain(v);
		}
	}
	Assignment a(instance.num_vars(), kUnassigned);
	std::vector<std::size_t> pos(order.size(), 0);
	std::vector<int> rank(instance.num_vars(), -1);
	for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

	auto consistent = [&](std::size_t depth) {
		int v = order[depth];
		for (Pair q : instance.partners({v, a[v]})) {
			if (rank[q.var] >= 0 && rank[q.var] < static_cast<int>(depth) && a[q.var] == q.color) return false;
		}
		return true;
	};

	if (order.empty()) {
		on_solution(a);
		return;
	}
	std::size_t depth = 0;
	while (true) {
		int v = order[depth];
		if (pos[depth] == doms[v].size()) {
			pos[depth] = 0;
			a[v] = kUnassigned;
			if (depth == 0) return;
			--depth;
			++pos[depth];
			continue;
		}
		a[v] = doms[v][pos[depth]];
		if (!consistent(depth)) {
			++pos[depth];
			continue;
		}
		if (depth + 1 == order.size()) {
			if (!on_solution(a)) return;
			++pos[depth];
			continue;
		}
		++depth;
	}
}

} // namespace

std::optional<Assignment> brute_force_solve(const Instance &instance) {
	std::optional<Assignment> found;
	scan(instance, [&](const Assignment &a) {
		found = instance.complete(a);
		return false;
	});
	return found;
}

std::uint64_t count_solutions(const Instance &instance) {
	std::uint64_t n = 0;
	scan(instance, [&](const Assignment &) {
		++n;
		return true;
	});
	return n;
}

Instance from_graph_coloring(const Graph &g, const std::vector<std::vector<int>> &lists, double epsilon) {
	if (static_cast<int>(lists.size()) != g.num_vertices())
		throw ContractViolation("from_graph_coloring: one list per vertex required");
	for (const auto &l : lists) {
		if (l.size() > 3) throw ContractViolation("from_graph_coloring: lists hold at most three colors");
	}
	std::vector<Constraint> cons;
	for (auto [u, v] : g.edges()) {
		for (int c : lists[u]) {
			if (std::find(lists[v].begin(), lists[v].end(), c) != lists[v].end())
				cons.push_back(make_constraint({u, c}, {v, c}));
		}
	}
	return Instance::build(lists, cons, epsilon);
}

Instance from_graph_coloring(const Graph &g, double epsilon) {
	return from_graph_coloring(g, std::vector<std::vector<int>>(g.num_vertices(), {1, 2, 3}), epsilon);
}

} // namespace trichrome::csp
