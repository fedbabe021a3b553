#include "trichrome/edgecolor.h"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace trichrome::edgecolor {

EdgeInstance::EdgeInstance(int vertex_count) : vertex_alive_(static_cast<std::size_t>(vertex_count), true) {
	if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
}

EdgeInstance EdgeInstance::build(int vertex_count, const std::vector<std::pair<int, int>> &edges,
                                 const std::vector<std::pair<int, int>> &diffs) {
	EdgeInstance inst(vertex_count);
	std::set<std::pair<int, int>> seen;
	for (auto [u, v] : edges) {
		if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw std::invalid_argument("parallel edge");
		inst.add_edge(u, v);
	}
	for (auto [e, f] : diffs) inst.add_difference(e, f);
	return inst;
}

int EdgeInstance::add_edge(int u, int v) {
	if (u < 0 || v < 0 || u >= vertex_slots() || v >= vertex_slots()) throw std::invalid_argument("edge endpoint out of range");
	if (u == v) throw std::invalid_argument("self-loop");
	if (!vertex_alive_[u] || !vertex_alive_[v]) throw std::invalid_argument("edge on a removed vertex");
	ends_.emplace_back(std::min(u, v), std::max(u, v));
	edge_alive_.push_back(true);
	diffs_.emplace_back();
	return edge_slots() - 1;
}

void EdgeInstance::add_difference(int e, int f) {
	if (e < 0 || f < 0 || e >= edge_slots() || f >= edge_slots() || !edge_alive_[e] || !edge_alive_[f])
		throw std::invalid_argument("difference constraint names a missing edge");
	if (e == f) throw std::invalid_argument("edge constrained against itself");
	diffs_[e].insert(f);
	diffs_[f].insert(e);
}

void EdgeInstance::remove_edge(int e) {
	if (!edge_alive_.at(e)) return;
	edge_alive_[e] = false;
	for (int f : diffs_[e]) diffs_[f].erase(e);
	diffs_[e].clear();
}

void EdgeInstance::remove_vertex(int v) {
	if (degree(v) != 0) throw std::logic_error("removing a vertex with live edges");
	vertex_alive_.at(v) = false;
}

int EdgeInstance::live_vertices() const { return static_cast<int>(std::count(vertex_alive_.begin(), vertex_alive_.end(), true)); }

int EdgeInstance::live_edges() const { return static_cast<int>(std::count(edge_alive_.begin(), edge_alive_.end(), true)); }

std::vector<int> EdgeInstance::incident(int v) const {
	std::vector<int> out;
	for (int e = 0; e < edge_slots(); ++e)
		if (edge_alive_[e] && (ends_[e].first == v || ends_[e].second == v)) out.push_back(e);
	return out;
}

int EdgeInstance::adjacent_count(int e) const {
	auto [u, v] = ends_.at(e);
	return degree(u) + degree(v) - 2;
}

std::pair<int, int> EdgeInstance::m3_m4() const {
	int m3 = 0, m4 = 0;
	for (int e = 0; e < edge_slots(); ++e) {
		if (!edge_alive_[e]) continue;
		int k = adjacent_count(e);
		m3 += k == 3;
		m4 += k == 4;
	}
	return {m3, m4};
}

bool is_valid_coloring(const EdgeInstance &inst, const EdgeColoring &c) {
	if (static_cast<int>(c.size()) < inst.edge_slots()) return false;
	for (int e = 0; e < inst.edge_slots(); ++e) {
		if (!inst.edge_alive(e)) continue;
		if (c[e] < 1 || c[e] > 3) return false;
		for (int f : inst.differences(e))
			if (c[f] == c[e]) return false;
	}
	for (int v = 0; v < inst.vertex_slots(); ++v) {
		auto inc = inst.incident(v);
		for (std::size_t i = 0; i < inc.size(); ++i)
			for (std::size_t j = i + 1; j < inc.size(); ++j)
				if (c[inc[i]] == c[inc[j]]) return false;
	}
	return true;
}

// --- pruning ----------------------------------------------------------------------

std::optional<Normalized> normalize(const EdgeInstance &inst) {
	for (int v = 0; v < inst.vertex_slots(); ++v)
		if (inst.vertex_alive(v) && inst.degree(v) >= 4) return std::nullopt;
	Normalized out{inst, {}};
	bool changed = true;
	while (changed) {
		changed = false;
		for (int e = 0; e < out.instance.edge_slots(); ++e) {
			if (!out.instance.edge_alive(e) || out.instance.constrained(e)) continue;
			if (out.instance.adjacent_count(e) > 2) continue;
			out.instance.remove_edge(e);
			out.removed.push_back(e);
			changed = true;
		}
	}
	return out;
}

void extend_greedily(const EdgeInstance &original, const std::vector<int> &removed, EdgeColoring &c) {
	c.resize(std::max<std::size_t>(c.size(), original.edge_slots()), 0);
	for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
		auto [u, v] = original.ends(*it);
		int used = 0;
		for (int w : {u, v})
			for (int f : original.incident(w))
				if (f != *it) used |= 1 << c[f];
		for (int f : original.differences(*it)) used |= 1 << c[f];
		int col = 1;
		while (used >> col & 1) ++col;
		if (col > 3) throw std::logic_error("greedy extension ran out of colors");
		c[*it] = col;
	}
}

// --- splice -------------------------------------------------------------------------

namespace {

int other_end(const EdgeInstance &inst, int e, int v) {
	auto [x, y] = inst.ends(e);
	return x == v ? y : x;
}

// The spliced edge's neighbors: a, b at its lower endpoint, c, d at the
// higher one. Empty when the shape does not hold.
std::optional<std::array<int, 4>> splice_shape(const EdgeInstance &inst, int e) {
	if (e < 0 || e >= inst.edge_slots() || !inst.edge_alive(e) || inst.constrained(e)) return std::nullopt;
	auto [u, v] = inst.ends(e);
	auto iu = inst.incident(u), iv = inst.incident(v);
	if (iu.size() != 3 || iv.size() != 3) return std::nullopt;
	std::erase(iu, e);
	std::erase(iv, e);
	std::array<int, 4> s{iu[0], iu[1], iv[0], iv[1]};
	std::array<int, 4> sorted = s;
	std::sort(sorted.begin(), sorted.end());
	if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
	return s;
}

SpliceChild make_child(const EdgeInstance &inst, int e, int p1, int q1, int p2, int q2) {
	auto [u, v] = inst.ends(e);
	SpliceChild child{inst, -1, -1, true};
	const int x1 = other_end(inst, p1, u), y1 = other_end(inst, q1, v);
	const int x2 = other_end(inst, p2, u), y2 = other_end(inst, q2, v);
	if (x1 == y1 || x2 == y2 || inst.differences(p1).count(q1) || inst.differences(p2).count(q2)) {
		child.feasible = false;
		return child;
	}
	EdgeInstance &ch = child.instance;
	for (int f : {e, p1, q1, p2, q2}) ch.remove_edge(f);
	ch.remove_vertex(u);
	ch.remove_vertex(v);
	child.merged_first = ch.add_edge(x1, y1);
	child.merged_second = ch.add_edge(x2, y2);
	auto retarget = [&](int f) {
		if (f == p1 || f == q1) return child.merged_first;
		if (f == p2 || f == q2) return child.merged_second;
		return f;
	};
	for (auto [from, merged] : {std::pair{p1, child.merged_first}, std::pair{q1, child.merged_first},
	                            std::pair{p2, child.merged_second}, std::pair{q2, child.merged_second}}) {
		for (int f : inst.differences(from)) {
			int g = retarget(f);
			if (g != merged) ch.add_difference(merged, g);
		}
	}
	ch.add_difference(child.merged_first, child.merged_second);
	return child;
}

} // namespace

bool splice_applies(const EdgeInstance &inst, int e) { return splice_shape(inst, e).has_value(); }

std::optional<Splice> splice(const EdgeInstance &inst, int e) {
	auto shape = splice_shape(inst, e);
	if (!shape) return std::nullopt;
	auto [a, b, c, d] = *shape;
	Splice s{e, a, b, c, d, {}};
	s.children.push_back(make_child(inst, e, a, c, b, d));
	s.children.push_back(make_child(inst, e, a, d, b, c));
	return s;
}

void Splice::back_map(int k, EdgeColoring &col) const {
	const SpliceChild &ch = children.at(k);
	const int first = col.at(ch.merged_first), second = col.at(ch.merged_second);
	col.at(a) = first;
	col.at(b) = second;
	col.at(k == 0 ? c : d) = first;
	col.at(k == 0 ? d : c) = second;
	col.at(edge) = 6 - first - second;
}

std::vector<int> select_splices(const EdgeInstance &inst) {
	using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
	G g(inst.vertex_slots());
	std::map<std::pair<int, int>, int> edge_at;
	for (int e = 0; e < inst.edge_slots(); ++e) {
		if (!splice_applies(inst, e)) continue;
		auto [u, v] = inst.ends(e);
		boost::add_edge(u, v, g);
		edge_at[{u, v}] = e;
	}
	std::vector<boost::graph_traits<G>::vertex_descriptor> mate(inst.vertex_slots());
	boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
	std::vector<int> out;
	for (int u = 0; u < inst.vertex_slots(); ++u) {
		auto w = mate[u];
		if (w == boost::graph_traits<G>::null_vertex() || static_cast<int>(w) < u) continue;
		out.push_back(edge_at.at({u, static_cast<int>(w)}));
	}
	std::sort(out.begin(), out.end());
	return out;
}

Graph line_graph(const EdgeInstance &inst, std::vector<int> &edge_of) {
	edge_of.clear();
	std::vector<int> index(inst.edge_slots(), -1);
	for (int e = 0; e < inst.edge_slots(); ++e) {
		if (!inst.edge_alive(e)) continue;
		index[e] = static_cast<int>(edge_of.size());
		edge_of.push_back(e);
	}
	Graph g(static_cast<int>(edge_of.size()));
	for (int v = 0; v < inst.vertex_slots(); ++v) {
		auto inc = inst.incident(v);
		for (std::size_t i = 0; i < inc.size(); ++i)
			for (std::size_t j = i + 1; j < inc.size(); ++j) g.add_edge(index[inc[i]], index[inc[j]]);
	}
	for (int e : edge_of)
		for (int f : inst.differences(e))
			if (e < f) g.add_edge(index[e], index[f]);
	return g;
}

// --- solver ---------------------------------------------------------------------------

namespace {

std::optional<EdgeColoring> explore(const EdgeInstance &inst, const std::vector<int> &splices, std::size_t i,
                                    EdgeStats &stats, const vertexcolor::ColorOptions &options) {
	if (i == splices.size()) {
		++stats.residues;
		std::vector<int> edge_of;
		Graph lg = line_graph(inst, edge_of);
		auto r = vertexcolor::solve_3coloring(lg, options);
		stats.color.peeled += r.stats.peeled;
		stats.color.degree3_branches += r.stats.degree3_branches;
		stats.color.precolorings += r.stats.precolorings;
		stats.color.csp_calls += r.stats.csp_calls;
		stats.color.flow_singletons += r.stats.flow_singletons;
		stats.color.csp.merge(r.stats.csp);
		if (!r.coloring) return std::nullopt;
		EdgeColoring col(inst.edge_slots(), 0);
		for (std::size_t k = 0; k < edge_of.size(); ++k) col[edge_of[k]] = (*r.coloring)[k];
		return col;
	}
	auto s = splice(inst, splices[i]);
	if (!s) return explore(inst, splices, i + 1, stats, options); // invalidated by an earlier splice
	for (int k = 0; k < 2; ++k) {
		const SpliceChild &ch = s->children[k];
		if (!ch.feasible) continue;
		++stats.splice_children;
		auto col = explore(ch.instance, splices, i + 1, stats, options);
		if (!col) continue;
		s->back_map(k, *col);
		col->resize(inst.edge_slots());
		return col;
	}
	return std::nullopt;
}

} // namespace

EdgeResult solve_3edge(const EdgeInstance &inst, const vertexcolor::ColorOptions &options) {
	EdgeResult out;
	auto norm = normalize(inst);
	if (!norm) return out;
	out.stats.pruned_edges = norm->removed.size();
	std::tie(out.stats.m3, out.stats.m4) = norm->instance.m3_m4();
	const std::vector<int> chosen = select_splices(norm->instance);
	out.stats.selected_splices = static_cast<int>(chosen.size());
	auto col = explore(norm->instance, chosen, 0, out.stats, options);
	if (!col) return out;
	col->resize(inst.edge_slots(), 0);
	extend_greedily(inst, norm->removed, *col);
	if (!is_valid_coloring(inst, *col)) throw std::logic_error("edge coloring pipeline produced an invalid coloring");
	out.coloring = std::move(col);
	return out;
}

} // namespace trichrome::edgecolor
