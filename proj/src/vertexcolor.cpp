#include "trichrome/vertexcolor.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "trichrome/csp.h"
#include "trichrome/workfactor.h"

namespace trichrome::vertexcolor {

bool is_proper_coloring(const Graph &g, const Coloring &c) {
	if (static_cast<int>(c.size()) != g.num_vertices()) return false;
	for (int x : c)
		if (x < 1 || x > 3) return false;
	for (auto [u, v] : g.edges())
		if (c[u] == c[v]) return false;
	return true;
}

// --- degree-3 structures ------------------------------------------------------

namespace {

// Components of the subgraph induced by degree-3 vertices, each with its
// vertex and edge count.
struct D3Component {
	std::vector<int> vertices;
	int edges = 0;
	bool triggers() const { return edges >= static_cast<int>(vertices.size()) || vertices.size() >= 8; }
};

std::vector<D3Component> degree3_components(const Graph &g) {
	const int n = g.num_vertices();
	std::vector<int> comp(n, -1);
	std::vector<D3Component> out;
	for (int s = 0; s < n; ++s) {
		if (g.degree(s) != 3 || comp[s] >= 0) continue;
		D3Component c;
		std::vector<int> stack{s};
		comp[s] = static_cast<int>(out.size());
		while (!stack.empty()) {
			int x = stack.back();
			stack.pop_back();
			c.vertices.push_back(x);
			for (int y : g.neighbors(x)) {
				if (g.degree(y) != 3) continue;
				if (x < y) ++c.edges;
				if (comp[y] < 0) {
					comp[y] = comp[s];
					stack.push_back(y);
				}
			}
		}
		std::sort(c.vertices.begin(), c.vertices.end());
		out.push_back(std::move(c));
	}
	return out;
}

GraphImage identity_image(const Graph &g) {
	GraphImage gi{g, std::vector<int>(g.num_vertices())};
	std::iota(gi.image.begin(), gi.image.end(), 0);
	return gi;
}

// Identify y with x (non-adjacent); vertex y disappears and later indices
// shift down by one.
GraphImage contract(const GraphImage &in, int x, int y) {
	const int n = in.graph.num_vertices();
	std::vector<int> map(n);
	for (int v = 0, next = 0; v < n; ++v) map[v] = v == y ? -1 : next++;
	map[y] = map[x];
	GraphImage out{Graph(n - 1), {}};
	for (auto [u, v] : in.graph.edges()) out.graph.add_edge(map[u], map[v]);
	for (int v : in.image) out.image.push_back(map[v]);
	return out;
}

} // namespace

bool has_degree3_structure(const Graph &g) {
	for (const auto &c : degree3_components(g))
		if (c.triggers()) return true;
	return false;
}

std::optional<std::vector<GraphImage>> reduce_degree3_structures(const Graph &g) {
	int v = -1;
	for (const auto &c : degree3_components(g)) {
		if (c.triggers() && (v < 0 || c.vertices.front() < v)) v = c.vertices.front();
	}
	if (v < 0) return std::nullopt;
	// v's neighbors see only two colors, so some two of them agree:
	// a = b, or a != b and a = c, or a != b, a != c and b = c.
	const int a = g.neighbors(v)[0], b = g.neighbors(v)[1], c = g.neighbors(v)[2];
	std::vector<GraphImage> out;
	GraphImage base = identity_image(g);
	if (!g.has_edge(a, b)) out.push_back(contract(base, a, b));
	base.graph.add_edge(a, b);
	if (!g.has_edge(a, c)) out.push_back(contract(base, a, c));
	base.graph.add_edge(a, c);
	if (!g.has_edge(b, c)) out.push_back(contract(base, b, c));
	return out;
}

// --- bushy forest -----------------------------------------------------------------

namespace {

int outside_degree(const Graph &g, const std::vector<bool> &member, int v) {
	int d = 0;
	for (int w : g.neighbors(v)) d += !member[w];
	return d;
}

} // namespace

BushyForest find_bushy_forest(const Graph &g) {
	if (has_degree3_structure(g))
		throw csp::ContractViolation("find_bushy_forest: degree-3 structures must be reduced first");
	const int n = g.num_vertices();
	BushyForest f;
	f.member.assign(n, false);
	for (int v = 0; v < n; ++v) {
		if (f.member[v] || outside_degree(g, f.member, v) < 4) continue;
		BushyTree t;
		t.root = v;
		auto grow = [&](int x) {
			t.internal.push_back(x);
			for (int w : g.neighbors(x)) {
				if (f.member[w]) continue;
				f.member[w] = true;
				t.leaves.push_back(w);
				t.edges.emplace_back(x, w);
			}
		};
		f.member[v] = true;
		grow(v);
		bool promoted = true;
		while (promoted) {
			promoted = false;
			for (std::size_t i = 0; i < t.leaves.size(); ++i) {
				int l = t.leaves[i];
				if (outside_degree(g, f.member, l) < 3) continue;
				t.leaves.erase(t.leaves.begin() + static_cast<std::ptrdiff_t>(i));
				grow(l);
				promoted = true;
				break;
			}
		}
		f.trees.push_back(std::move(t));
	}
	return f;
}

std::string check_bushy_forest(const Graph &g, const BushyForest &f) {
	const int n = g.num_vertices();
	if (static_cast<int>(f.member.size()) != n) return "member mask size";
	std::vector<int> owner(n, -1);
	for (std::size_t k = 0; k < f.trees.size(); ++k) {
		const BushyTree &t = f.trees[k];
		if (t.internal.empty() || t.internal.front() != t.root) return "root is not the first internal vertex";
		std::vector<int> verts = t.internal;
		verts.insert(verts.end(), t.leaves.begin(), t.leaves.end());
		for (int v : verts) {
			if (owner[v] >= 0) return "trees overlap";
			owner[v] = static_cast<int>(k);
			if (!f.member[v]) return "member mask disagrees";
		}
		if (t.edges.size() + 1 != verts.size()) return "edge count is not that of a tree";
		std::vector<int> tdeg(n, 0);
		std::vector<int> parent(n, -2);
		parent[t.root] = -1;
		for (auto [u, w] : t.edges) {
			if (!g.has_edge(u, w)) return "tree edge missing from graph";
			if (parent[u] == -2 || parent[w] != -2) return "tree edges out of order";
			parent[w] = u;
			++tdeg[u];
			++tdeg[w];
		}
		for (int v : t.internal)
			if (tdeg[v] < 4) return "internal vertex with tree degree below four";
		for (int v : t.leaves)
			if (tdeg[v] != 1) return "leaf with tree degree other than one";
	}
	for (int v = 0; v < n; ++v) {
		if (f.member[v] && owner[v] < 0) return "member outside every tree";
		if (!f.member[v] && outside_degree(g, f.member, v) >= 4) return "not maximal: a new tree can start";
	}
	for (const auto &t : f.trees)
		for (int l : t.leaves)
			if (outside_degree(g, f.member, l) >= 3) return "not maximal: a leaf can be promoted";
	return {};
}

// --- height-two forest --------------------------------------------------------------

namespace {

std::vector<bool> adjacent_to_forest(const Graph &g, const BushyForest &f) {
	std::vector<bool> adj(g.num_vertices(), false);
	for (int v = 0; v < g.num_vertices(); ++v) {
		if (f.member[v]) continue;
		for (int w : g.neighbors(v))
			if (f.member[w]) adj[v] = true;
	}
	return adj;
}

} // namespace

HeightTwoForest build_height2_forest(const Graph &g, const BushyForest &f) {
	const int n = g.num_vertices();
	std::vector<bool> allowed(n);
	for (int v = 0; v < n; ++v) allowed[v] = !f.member[v];
	const std::vector<Claw> claws = k13_packing(g, allowed);
	const std::vector<bool> near_f = adjacent_to_forest(g, f);
	std::vector<bool> in_claw(n, false);
	HeightTwoForest h;
	for (const Claw &c : claws) {
		HeightTwoTree t;
		t.root = c.center;
		t.children.assign(c.leaves.begin(), c.leaves.end());
		in_claw[c.center] = true;
		bool big = g.degree(c.center) >= 4;
		for (int l : c.leaves) {
			in_claw[l] = true;
			big = big || g.degree(l) >= 4;
		}
		t.capacity = big ? 5 : 3;
		h.trees.push_back(std::move(t));
	}
	std::vector<int> cand;
	for (int v = 0; v < n; ++v)
		if (!f.member[v] && !near_f[v] && !in_claw[v]) cand.push_back(v);

	FlowNetwork net;
	net.source = net.add_node();
	net.sink = net.add_node();
	const int first_tree = net.node_count;
	for (std::size_t k = 0; k < h.trees.size(); ++k) net.add_node();
	const int first_cand = net.node_count;
	for (std::size_t i = 0; i < cand.size(); ++i) net.add_node();
	for (std::size_t k = 0; k < h.trees.size(); ++k) net.add_arc(net.source, first_tree + static_cast<int>(k), h.trees[k].capacity);
	struct Link {
		int arc, tree, cand;
	};
	std::vector<Link> links;
	for (std::size_t i = 0; i < cand.size(); ++i) {
		for (std::size_t k = 0; k < h.trees.size(); ++k) {
			bool adj = false;
			for (int ch : h.trees[k].children) adj = adj || g.has_edge(ch, cand[i]);
			if (adj)
				links.push_back({net.add_arc(first_tree + static_cast<int>(k), first_cand + static_cast<int>(i), 1),
				                 static_cast<int>(k), static_cast<int>(i)});
		}
		net.add_arc(first_cand + static_cast<int>(i), net.sink, 1);
	}
	const Flow flow = max_flow_integer(net);
	std::vector<bool> placed(cand.size(), false);
	for (const Link &l : links) {
		if (flow.arc_flow[l.arc] == 0) continue;
		HeightTwoTree &t = h.trees[l.tree];
		int v = cand[l.cand];
		for (int ch : t.children) {
			if (g.has_edge(ch, v)) {
				t.grandchildren.emplace_back(v, ch);
				break;
			}
		}
		placed[l.cand] = true;
	}
	for (std::size_t i = 0; i < cand.size(); ++i) {
		if (placed[i]) continue;
		HeightTwoTree t;
		t.root = cand[i];
		h.trees.push_back(std::move(t));
		++h.singletons;
	}
	return h;
}

std::string check_height2_forest(const Graph &g, const BushyForest &f, const HeightTwoForest &h) {
	const int n = g.num_vertices();
	std::vector<bool> used(n, false);
	auto take = [&](int v) {
		if (v < 0 || v >= n || used[v] || f.member[v]) return false;
		used[v] = true;
		return true;
	};
	for (const auto &t : h.trees) {
		if (!take(t.root)) return "tree vertex reused or inside the bushy forest";
		bool big = g.degree(t.root) >= 4;
		for (int c : t.children) {
			if (!take(c)) return "tree vertex reused or inside the bushy forest";
			if (!g.has_edge(t.root, c)) return "child not adjacent to root";
			big = big || g.degree(c) >= 4;
		}
		if (t.grandchildren.size() > 5) return "more than five grandchildren";
		if (static_cast<int>(t.grandchildren.size()) > t.capacity) return "capacity exceeded";
		for (auto [gc, parent] : t.grandchildren) {
			if (!take(gc)) return "tree vertex reused or inside the bushy forest";
			if (std::find(t.children.begin(), t.children.end(), parent) == t.children.end())
				return "grandchild hangs off a non-child";
			if (!g.has_edge(gc, parent)) return "grandchild not adjacent to its parent";
			big = big || g.degree(gc) >= 4;
		}
		if (t.grandchildren.size() >= 4 && !big) return "four or more grandchildren without a degree-4 vertex";
	}
	const auto near_f = adjacent_to_forest(g, f);
	for (int v = 0; v < n; ++v)
		if (!f.member[v] && !near_f[v] && !used[v]) return "vertex away from the forest left uncovered";
	return {};
}

// --- accounting ---------------------------------------------------------------------

double ForestAccounting::predicted_cost() const { return std::exp(log_cost); }

double ForestAccounting::base() const { return n() == 0 ? 1.0 : std::exp(log_cost / n()); }

bool ForestAccounting::constraint_triple_holds() const {
	return 4 * p + 2 * q <= r && s <= 2 * r && 3 * (s + t) <= 20 * r;
}

ForestAccounting accounting_from_counts(int p, int q, int r, int s, int t) {
	const double lam = std::log(reference_constant("lambda"));
	ForestAccounting a{p, q, r, s, t, 0.0};
	a.log_cost = p * std::log(3.0) + q * std::log(2.0) + s * lam + (t / 7.0) * (std::log(3.0) + 3 * lam);
	return a;
}

ForestAccounting accounting(const Graph &g, const BushyForest &f) {
	int p = 0, q = 0, r = 0, s = 0, t = 0;
	std::vector<bool> leaf(g.num_vertices(), false);
	for (const auto &tree : f.trees) {
		p += 1;
		q += static_cast<int>(tree.internal.size()) - 1;
		r += static_cast<int>(tree.leaves.size());
		for (int l : tree.leaves) leaf[l] = true;
	}
	for (int v = 0; v < g.num_vertices(); ++v) {
		if (f.member[v]) continue;
		bool near = false;
		for (int w : g.neighbors(v)) near = near || leaf[w];
		(near ? s : t) += 1;
	}
	return accounting_from_counts(p, q, r, s, t);
}

// --- precolored set -------------------------------------------------------------------

std::vector<int> select_precolored(const Graph &g, const BushyForest &f, const HeightTwoForest &h) {
	std::vector<int> out;
	for (const auto &t : f.trees) out.insert(out.end(), t.internal.begin(), t.internal.end());
	const double lam = std::log(reference_constant("lambda"));
	for (const auto &t : h.trees) {
		std::vector<int> head{t.root};
		head.insert(head.end(), t.children.begin(), t.children.end());
		std::vector<int> all = head;
		for (auto [gc, parent] : t.grandchildren) all.push_back(gc);
		const int k = static_cast<int>(head.size());
		double best = 0.0;
		int best_mask = -1;
		for (int mask = 0; mask < (1 << k); ++mask) {
			std::vector<int> chosen;
			for (int i = 0; i < k; ++i)
				if (mask >> i & 1) chosen.push_back(head[i]);
			// colorings of the chosen vertices in order, then the tree
			// vertices they leave with three colors
			double cost = 0.0;
			for (std::size_t i = 0; i < chosen.size(); ++i) {
				bool tied = false;
				for (std::size_t j = 0; j < i; ++j) tied = tied || g.has_edge(chosen[i], chosen[j]);
				cost += std::log(tied ? 2.0 : 3.0);
			}
			for (int v : all) {
				bool hit = std::find(chosen.begin(), chosen.end(), v) != chosen.end();
				for (int c : chosen) hit = hit || g.has_edge(c, v);
				if (!hit) cost += lam;
			}
			if (best_mask < 0 || cost < best - 1e-12) {
				best = cost;
				best_mask = mask;
			}
		}
		for (int i = 0; i < k; ++i)
			if (best_mask >> i & 1) out.push_back(head[i]);
	}
	return out;
}

// --- search -----------------------------------------------------------------------------

std::optional<Coloring> enumerate_and_solve(const Graph &g, const std::vector<int> &s, ColorStats &stats,
                                            const ColorOptions &options) {
	const int n = g.num_vertices();
	std::vector<int> pos(n, -1);
	for (std::size_t i = 0; i < s.size(); ++i) {
		if (pos.at(s[i]) >= 0) throw std::invalid_argument("enumerate_and_solve: repeated vertex in S");
		pos[s[i]] = static_cast<int>(i);
	}
	std::vector<int> rest;
	std::vector<int> index(n, -1);
	for (int v = 0; v < n; ++v) {
		if (pos[v] >= 0) continue;
		index[v] = static_cast<int>(rest.size());
		rest.push_back(v);
	}
	const Graph residue = g.induced(rest);
	Coloring col(n, 0);
	// banned[v] bit c: color c used by a precolored neighbor
	std::vector<int> banned(n, 0);

	std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
		if (i == s.size()) {
			++stats.precolorings;
			std::vector<std::vector<int>> lists(rest.size());
			for (std::size_t j = 0; j < rest.size(); ++j) {
				for (int c = 1; c <= 3; ++c)
					if (!(banned[rest[j]] >> c & 1)) lists[j].push_back(c);
			}
			++stats.csp_calls;
			cspsolver::SolveOptions so;
			so.parallel = options.parallel;
			auto res = cspsolver::solve(csp::from_graph_coloring(residue, lists), so);
			stats.csp.merge(res.stats);
			if (!res.solution) return false;
			for (std::size_t j = 0; j < rest.size(); ++j) col[rest[j]] = (*res.solution)[j];
			return true;
		}
		const int v = s[i];
		for (int c = 1; c <= 3; ++c) {
			if (banned[v] >> c & 1) continue;
			col[v] = c;
			std::vector<int> touched;
			bool dead = false;
			for (int w : g.neighbors(v)) {
				if (banned[w] >> c & 1) continue;
				banned[w] |= 1 << c;
				touched.push_back(w);
				if (pos[w] < 0 && banned[w] == 0b1110) dead = true;
			}
			if (!dead && go(i + 1)) return true;
			for (int w : touched) banned[w] &= ~(1 << c);
		}
		col[v] = 0;
		return false;
	};
	if (!go(0)) return std::nullopt;
	return col;
}

namespace {

std::optional<Coloring> color_recursive(const Graph &g, ColorStats &stats, const ColorOptions &options) {
	const int n = g.num_vertices();
	// peel vertices of degree <= 2; they are colored last, greedily
	std::vector<int> deg(n);
	std::vector<bool> gone(n, false);
	std::vector<int> order, stack;
	for (int v = 0; v < n; ++v) {
		deg[v] = g.degree(v);
		if (deg[v] <= 2) {
			stack.push_back(v);
			gone[v] = true;
		}
	}
	while (!stack.empty()) {
		int v = stack.back();
		stack.pop_back();
		order.push_back(v);
		for (int w : g.neighbors(v)) {
			if (gone[w]) continue;
			if (--deg[w] <= 2) {
				gone[w] = true;
				stack.push_back(w);
			}
		}
	}
	stats.peeled += order.size();
	std::vector<int> core;
	for (int v = 0; v < n; ++v)
		if (!gone[v]) core.push_back(v);

	Coloring col(n, 0);
	if (!core.empty()) {
		const Graph h = g.induced(core);
		std::optional<Coloring> ch;
		if (auto kids = reduce_degree3_structures(h)) {
			++stats.degree3_branches;
			for (const GraphImage &k : *kids) {
				auto sub = color_recursive(k.graph, stats, options);
				if (!sub) continue;
				ch = Coloring(h.num_vertices());
				for (int v = 0; v < h.num_vertices(); ++v) (*ch)[v] = (*sub)[k.image[v]];
				break;
			}
		} else {
			BushyForest f = find_bushy_forest(h);
			HeightTwoForest t = build_height2_forest(h, f);
			stats.covers.push_back(accounting(h, f));
			stats.flow_singletons += t.singletons;
			ch = enumerate_and_solve(h, select_precolored(h, f, t), stats, options);
		}
		if (!ch) return std::nullopt;
		for (std::size_t i = 0; i < core.size(); ++i) col[core[i]] = (*ch)[i];
	}
	for (auto it = order.rbegin(); it != order.rend(); ++it) {
		int used = 0;
		for (int w : g.neighbors(*it)) used |= 1 << col[w];
		int c = 1;
		while (used >> c & 1) ++c;
		col[*it] = c;
	}
	return col;
}

} // namespace

ColorResult solve_3coloring(const Graph &g, const ColorOptions &options) {
	ColorResult out;
	out.coloring = color_recursive(g, out.stats, options);
	if (out.coloring && !is_proper_coloring(g, *out.coloring))
		throw std::logic_error("3-coloring pipeline produced an improper coloring");
	return out;
}

ColorResult solve_list_coloring(const Graph &g, const std::vector<std::vector<int>> &lists,
                                const ColorOptions &options) {
	if (static_cast<int>(lists.size()) != g.num_vertices())
		throw std::invalid_argument("one list per vertex is required");
	ColorResult out;
	cspsolver::SolveOptions so;
	so.parallel = options.parallel;
	auto res = cspsolver::solve(csp::from_graph_coloring(g, lists), so);
	out.stats.csp_calls = 1;
	out.stats.csp = res.stats;
	if (res.solution) {
		out.coloring = Coloring(res.solution->begin(), res.solution->begin() + g.num_vertices());
		for (auto [u, v] : g.edges())
			if ((*out.coloring)[u] == (*out.coloring)[v]) throw std::logic_error("list coloring is improper");
	}
	return out;
}

} // namespace trichrome::vertexcolor
