#pragma once

#include <optional>

#include "trichrome/vertexcolor.h"

// Drop vertices of degree <= 2 repeatedly; returns the induced core.
inline trichrome::Graph core_of(const trichrome::Graph &g) {
	trichrome::Graph h = g;
	while (true) {
		std::vector<int> next;
		for (int v = 0; v < h.num_vertices(); ++v)
			if (h.degree(v) >= 3) next.push_back(v);
		if (static_cast<int>(next.size()) == h.num_vertices()) return h;
		h = h.induced(next);
	}
}

// Follow first children of degree-3 reductions until none applies.
inline std::optional<trichrome::Graph> reduced(trichrome::Graph g) {
	while (true) {
		g = core_of(g);
		auto kids = trichrome::vertexcolor::reduce_degree3_structures(g);
		if (!kids) return g;
		if (kids->empty()) return std::nullopt;
		g = kids->front().graph;
	}
}
