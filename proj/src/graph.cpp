#include "trichrome/graph.h"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

namespace trichrome {

Graph::Graph(int n) : adj_(static_cast<std::size_t>(n)) {
	if (n < 0) throw std::invalid_argument("negative vertex count");
}

bool Graph::add_edge(int u, int v) {
	if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
		throw std::invalid_argument("edge endpoint out of range");
	if (u == v) throw std::invalid_argument("self-loop");
	auto &au = adj_[u];
	auto it = std::lower_bound(au.begin(), au.end(), v);
	if (it != au.end() && *it == v) return false;
	au.insert(it, v);
	auto &av = adj_[v];
	av.insert(std::lower_bound(av.begin(), av.end(), u), u);
	++edge_count_;
	return true;
}

bool Graph::has_edge(int u, int v) const {
	const auto &au = adj_.at(u);
	return std::binary_search(au.begin(), au.end(), v);
}

int Graph::max_degree() const {
	int best = 0;
	for (const auto &a : adj_) best = std::max(best, static_cast<int>(a.size()));
	return best;
}

std::vector<std::pair<int, int>> Graph::edges() const {
	std::vector<std::pair<int, int>> out;
	out.reserve(edge_count_);
	for (int u = 0; u < num_vertices(); ++u) {
		for (int v : adj_[u]) {
			if (u < v) out.emplace_back(u, v);
		}
	}
	return out;
}

Graph Graph::induced(std::span<const int> vertices) const {
	std::vector<int> index(adj_.size(), -1);
	for (std::size_t i = 0; i < vertices.size(); ++i) index.at(vertices[i]) = static_cast<int>(i);
	Graph h(static_cast<int>(vertices.size()));
	for (std::size_t i = 0; i < vertices.size(); ++i) {
		for (int w : adj_[vertices[i]]) {
			int j = index[w];
			if (j > static_cast<int>(i)) h.add_edge(static_cast<int>(i), j);
		}
	}
	return h;
}

// --- matching ---------------------------------------------------------------

std::vector<int> max_bipartite_matching(int left_count, int right_count,
                                        std::span<const std::pair<int, int>> edges) {
	std::vector<std::vector<int>> adj(static_cast<std::size_t>(left_count));
	for (auto [l, r] : edges) {
		if (l < 0 || l >= left_count || r < 0 || r >= right_count)
			throw std::invalid_argument("bipartite edge out of range");
		adj[l].push_back(r);
	}
	std::vector<int> match_left(static_cast<std::size_t>(left_count), -1);
	std::vector<int> match_right(static_cast<std::size_t>(right_count), -1);
	std::vector<int> seen(static_cast<std::size_t>(right_count), -1);

	// Iterative DFS for an augmenting path from `root`.
	auto augment = [&](int root) {
		struct Frame {
			int left;
			std::size_t next;
		};
		std::vector<Frame> stack{{root, 0}};
		std::vector<int> via; // right vertex taken at each depth
		while (!stack.empty()) {
			Frame &f = stack.back();
			if (f.next == adj[f.left].size()) {
				stack.pop_back();
				if (!via.empty()) via.pop_back();
				continue;
			}
			int r = adj[f.left][f.next++];
			if (seen[r] == root) continue;
			seen[r] = root;
			via.push_back(r);
			if (match_right[r] < 0) {
				for (std::size_t i = 0; i < via.size(); ++i) {
					int l = stack[i].left;
					match_left[l] = via[i];
					match_right[via[i]] = l;
				}
				return true;
			}
			stack.push_back({match_right[r], 0});
		}
		return false;
	};
	for (int l = 0; l < left_count; ++l) augment(l);
	return match_left;
}

// --- flow -------------------------------------------------------------------

int FlowNetwork::add_arc(int from, int to, std::int64_t capacity) {
	if (from < 0 || to < 0 || from >= node_count || to >= node_count)
		throw std::invalid_argument("arc endpoint out of range");
	if (capacity < 0) throw std::invalid_argument("negative capacity");
	arcs.push_back({from, to, capacity});
	return static_cast<int>(arcs.size()) - 1;
}

Flow max_flow_integer(const FlowNetwork &network) {
	const int n = network.node_count;
	// Residual arcs: 2i forward, 2i+1 backward.
	std::vector<std::int64_t> residual(network.arcs.size() * 2);
	std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
	for (std::size_t i = 0; i < network.arcs.size(); ++i) {
		const Arc &a = network.arcs[i];
		residual[2 * i] = a.capacity;
		residual[2 * i + 1] = 0;
		out[a.from].push_back(static_cast<int>(2 * i));
		out[a.to].push_back(static_cast<int>(2 * i + 1));
	}
	auto head = [&](int r) {
		const Arc &a = network.arcs[r / 2];
		return (r % 2 == 0) ? a.to : a.from;
	};

	Flow flow;
	if (network.source == network.sink) {
		flow.arc_flow.assign(network.arcs.size(), 0);
		return flow;
	}
	std::vector<int> via(static_cast<std::size_t>(n));
	while (true) {
		std::fill(via.begin(), via.end(), -1);
		std::queue<int> q;
		q.push(network.source);
		via[network.source] = -2;
		while (!q.empty() && via[network.sink] == -1) {
			int x = q.front();
			q.pop();
			for (int r : out[x]) {
				int y = head(r);
				if (residual[r] > 0 && via[y] == -1) {
					via[y] = r;
					q.push(y);
				}
			}
		}
		if (via[network.sink] == -1) break;
		std::int64_t push = std::numeric_limits<std::int64_t>::max();
		for (int y = network.sink; y != network.source; y = head(via[y] ^ 1)) push = std::min(push, residual[via[y]]);
		for (int y = network.sink; y != network.source; y = head(via[y] ^ 1)) {
			residual[via[y]] -= push;
			residual[via[y] ^ 1] += push;
		}
		flow.value += push;
	}
	flow.arc_flow.resize(network.arcs.size());
	for (std::size_t i = 0; i < network.arcs.size(); ++i) flow.arc_flow[i] = residual[2 * i + 1];
	return flow;
}

bool is_feasible_flow(const FlowNetwork &network, const Flow &flow) {
	if (flow.arc_flow.size() != network.arcs.size()) return false;
	std::vector<std::int64_t> balance(static_cast<std::size_t>(network.node_count), 0);
	for (std::size_t i = 0; i < network.arcs.size(); ++i) {
		const Arc &a = network.arcs[i];
		std::int64_t f = flow.arc_flow[i];
		if (f < 0 || f > a.capacity) return false;
		balance[a.from] -= f;
		balance[a.to] += f;
	}
	for (int v = 0; v < network.node_count; ++v) {
		if (v == network.source || v == network.sink) continue;
		if (balance[v] != 0) return false;
	}
	return balance[network.sink] == flow.value && -balance[network.source] == flow.value;
}

// --- claw packing -------------------------------------------------------------

namespace {

class ClawPacker {
public:
	ClawPacker(const Graph &g, const std::vector<bool> &allowed)
	    : g_(g), allowed_(allowed.empty() ? std::vector<bool>(g.num_vertices(), true) : allowed),
	      owner_(static_cast<std::size_t>(g.num_vertices()), -1) {}

	std::vector<Claw> run() {
		fill();
		while (exchange_once()) fill();
		std::vector<Claw> out;
		for (const auto &c : claws_) {
			if (c) out.push_back(*c);
		}
		std::sort(out.begin(), out.end(), [](const Claw &a, const Claw &b) { return a.center < b.center; });
		return out;
	}

private:
	bool free_vertex(int v) const { return allowed_[v] && owner_[v] < 0; }

	std::vector<int> free_neighbors(int v) const {
		std::vector<int> out;
		for (int w : g_.neighbors(v)) {
			if (free_vertex(w)) out.push_back(w);
		}
		return out;
	}

	void place(const Claw &c) {
		int id = static_cast<int>(claws_.size());
		claws_.emplace_back(c);
		owner_[c.center] = id;
		for (int l : c.leaves) owner_[l] = id;
	}

	void release(int id) {
		const Claw &c = *claws_[id];
		owner_[c.center] = -1;
		for (int l : c.leaves) owner_[l] = -1;
	}

	void occupy(int id) {
		const Claw &c = *claws_[id];
		owner_[c.center] = id;
		for (int l : c.leaves) owner_[l] = id;
	}

	// Greedy pass; removing vertices never creates new claws, so one pass
	// leaves no claw among free vertices.
	void fill() {
		for (int v = 0; v < g_.num_vertices(); ++v) {
			if (!free_vertex(v)) continue;
			auto nb = free_neighbors(v);
			if (nb.size() >= 3) place({v, {nb[0], nb[1], nb[2]}});
		}
	}

	// All claws among free vertices that use at least one vertex of `region`.
	std::vector<Claw> claws_touching(const std::array<int, 4> &region) const {
		std::vector<Claw> out;
		auto add_centered = [&](int center, int forced) {
			auto nb = free_neighbors(center);
			const int k = static_cast<int>(nb.size());
			for (int a = 0; a < k; ++a)
				for (int b = a + 1; b < k; ++b)
					for (int c = b + 1; c < k; ++c) {
						if (forced >= 0 && nb[a] != forced && nb[b] != forced && nb[c] != forced) continue;
						out.push_back({center, {nb[a], nb[b], nb[c]}});
					}
		};
		for (int x : region) {
			add_centered(x, -1);
			for (int y : free_neighbors(x)) add_centered(y, x);
		}
		return out;
	}

	static bool disjoint(const Claw &a, const Claw &b) {
		std::array<int, 4> va{a.center, a.leaves[0], a.leaves[1], a.leaves[2]};
		std::array<int, 4> vb{b.center, b.leaves[0], b.leaves[1], b.leaves[2]};
		for (int x : va)
			for (int y : vb)
				if (x == y) return false;
		return true;
	}

	bool exchange_once() {
		for (std::size_t id = 0; id < claws_.size(); ++id) {
			if (!claws_[id]) continue;
			const Claw old = *claws_[id];
			release(static_cast<int>(id));
			auto cands = claws_touching({old.center, old.leaves[0], old.leaves[1], old.leaves[2]});
			for (std::size_t i = 0; i < cands.size(); ++i) {
				for (std::size_t j = i + 1; j < cands.size(); ++j) {
					if (!disjoint(cands[i], cands[j])) continue;
					claws_[id].reset();
					place(cands[i]);
					place(cands[j]);
					return true;
				}
			}
			occupy(static_cast<int>(id));
		}
		return false;
	}

	const Graph &g_;
	std::vector<bool> allowed_;
	std::vector<int> owner_;
	std::vector<std::optional<Claw>> claws_;
};

} // namespace

std::vector<Claw> k13_packing(const Graph &g, const std::vector<bool> &allowed) {
	if (!allowed.empty() && static_cast<int>(allowed.size()) != g.num_vertices())
		throw std::invalid_argument("allowed mask size mismatch");
	return ClawPacker(g, allowed).run();
}

} // namespace trichrome
