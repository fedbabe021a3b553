#include "trichrome/formats.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace trichrome::io {

ParseError::ParseError(int line, const std::string &what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::vector<std::string_view> split(std::string_view s) {
	std::vector<std::string_view> out;
	std::size_t i = 0;
	while (i < s.size()) {
		while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
		std::size_t j = i;
		while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
		if (j > i) out.push_back(s.substr(i, j - i));
		i = j;
	}
	return out;
}

// from_chars ignores the locale, unlike stream extraction
long long to_int(std::string_view tok, int line, const char *what) {
	long long v = 0;
	const char *first = tok.data(), *last = tok.data() + tok.size();
	if (!tok.empty() && *first == '+') ++first;
	auto [p, ec] = std::from_chars(first, last, v);
	if (ec != std::errc() || p != last || first == last)
		throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
	return v;
}

int in_range(std::string_view tok, int line, const char *what, long long lo, long long hi) {
	long long v = to_int(tok, line, what);
	if (v < lo || v > hi)
		throw ParseError(line, std::string(what) + " " + std::to_string(v) + " out of range [" + std::to_string(lo) +
		                           ", " + std::to_string(hi) + "]");
	return static_cast<int>(v);
}

void expect_tokens(const std::vector<std::string_view> &t, std::size_t n, int line) {
	if (t.size() < n) throw ParseError(line, "too few fields");
	if (t.size() > n) throw ParseError(line, "trailing characters after field " + std::to_string(n));
}

constexpr long long kMaxCount = 100'000'000;
constexpr long long kMaxColor = 1'000'000;

std::vector<int> read_colors(const std::vector<std::string_view> &t, std::size_t first, int k, int line,
                             const char *what) {
	expect_tokens(t, first + k, line);
	std::vector<int> cs;
	for (int i = 0; i < k; ++i) cs.push_back(in_range(t[first + i], line, what, 0, kMaxColor));
	auto sorted = cs;
	std::sort(sorted.begin(), sorted.end());
	if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ParseError(line, "repeated color");
	return cs;
}

// user streams may carry a locale with digit grouping
std::ostringstream classic() {
	std::ostringstream s;
	s.imbue(std::locale::classic());
	return s;
}

template <class F>
void for_lines(std::istream &in, F &&f) {
	std::string s;
	int line = 0;
	while (std::getline(in, s)) f(++line, split(s));
	if (in.bad()) throw ParseError(0, "read error");
}

} // namespace

// ---- CSP -----------------------------------------------------------------------

csp::Instance read_csp(std::istream &in) {
	std::optional<int> n;
	std::vector<std::optional<std::vector<int>>> domains;
	struct Pending {
		int line;
		csp::Pair a, b;
	};
	std::vector<Pending> cons;
	for_lines(in, [&](int line, const std::vector<std::string_view> &t) {
		if (t.empty() || t[0][0] == '#') return;
		if (!n) {
			if (t[0] != "p") throw ParseError(line, "expected 'p csp <n>' header");
			expect_tokens(t, 3, line);
			if (t[1] != "csp") throw ParseError(line, "expected format 'csp'");
			n = in_range(t[2], line, "variable count", 0, kMaxCount);
			domains.resize(*n);
			return;
		}
		if (t[0] == "v") {
			if (t.size() < 3) throw ParseError(line, "too few fields");
			int v = in_range(t[1], line, "variable", 1, *n) - 1;
			int k = in_range(t[2], line, "color count", 0, 1'000'000);
			auto cs = read_colors(t, 3, k, line, "color");
			if (domains[v]) throw ParseError(line, "variable " + std::to_string(v + 1) + " declared twice");
			std::sort(cs.begin(), cs.end());
			domains[v] = cs;
		} else if (t[0] == "c") {
			expect_tokens(t, 5, line);
			int v = in_range(t[1], line, "variable", 1, *n) - 1;
			int cv = in_range(t[2], line, "color", 0, kMaxColor);
			int w = in_range(t[3], line, "variable", 1, *n) - 1;
			int cw = in_range(t[4], line, "color", 0, kMaxColor);
			if (v == w) throw ParseError(line, "constraint within a single variable");
			cons.push_back({line, {v, cv}, {w, cw}});
		} else if (t[0] == "p") {
			throw ParseError(line, "second header line");
		} else {
			throw ParseError(line, "unknown line type '" + std::string(t[0]) + "'");
		}
	});
	if (!n) throw ParseError(0, "missing 'p csp' header");
	std::vector<std::vector<int>> doms;
	for (int v = 0; v < *n; ++v) {
		if (!domains[v]) throw ParseError(0, "variable " + std::to_string(v + 1) + " has no 'v' line");
		doms.push_back(*domains[v]);
	}
	std::vector<csp::Constraint> cs;
	for (const auto &p : cons) {
		for (csp::Pair q : {p.a, p.b})
			if (!std::binary_search(doms[q.var].begin(), doms[q.var].end(), q.color))
				throw ParseError(p.line, "color " + std::to_string(q.color) + " not in the domain of variable " +
				                             std::to_string(q.var + 1));
		cs.push_back(csp::make_constraint(p.a, p.b));
	}
	return csp::Instance::build(doms, cs);
}

csp::Instance parse_csp(const std::string &text) {
	std::istringstream in(text);
	return read_csp(in);
}

void write_csp(std::ostream &out, const csp::Instance &inst) {
	auto buf = classic();
	buf << "p csp " << inst.num_vars() << '\n';
	for (int v = 0; v < inst.num_vars(); ++v) {
		if (inst.state(v) == csp::VarState::Retired) throw std::invalid_argument("cannot write a retired variable");
		std::vector<int> d = inst.active(v) ? inst.domain(v) : std::vector<int>{inst.fixed_color(v)};
		buf << "v " << v + 1 << ' ' << d.size();
		for (int c : d) buf << ' ' << c;
		buf << '\n';
	}
	for (const auto &c : inst.constraints())
		buf << "c " << c.first.var + 1 << ' ' << c.first.color << ' ' << c.second.var + 1 << ' ' << c.second.color
		    << '\n';
	out << buf.str();
}

std::string format_csp(const csp::Instance &inst) {
	std::ostringstream out;
	write_csp(out, inst);
	return out.str();
}

// ---- graphs --------------------------------------------------------------------

Graph GraphFile::graph() const {
	Graph g(n);
	for (auto [u, v] : edges) g.add_edge(u, v);
	return g;
}

std::vector<std::vector<int>> GraphFile::lists_or_default() const {
	std::vector<std::vector<int>> out(n, std::vector<int>{1, 2, 3});
	for (int v = 0; v < static_cast<int>(lists.size()); ++v)
		if (!lists[v].empty()) out[v] = lists[v];
	return out;
}

GraphFile read_graph(std::istream &in) {
	GraphFile g;
	std::optional<long long> m;
	std::map<std::pair<int, int>, int> index;
	struct Pending {
		int line;
		std::pair<int, int> e1, e2;
	};
	std::vector<Pending> diffs;
	auto key = [](int u, int v) { return std::pair(std::min(u, v), std::max(u, v)); };
	for_lines(in, [&](int line, const std::vector<std::string_view> &t) {
		if (t.empty() || t[0] == "c") return;
		if (!m) {
			if (t[0] != "p") throw ParseError(line, "expected 'p edge <n> <m>' header");
			expect_tokens(t, 4, line);
			if (t[1] != "edge") throw ParseError(line, "expected format 'edge'");
			g.n = in_range(t[2], line, "vertex count", 0, kMaxCount);
			m = in_range(t[3], line, "edge count", 0, kMaxCount);
			return;
		}
		if (t[0] == "e") {
			expect_tokens(t, 3, line);
			int u = in_range(t[1], line, "vertex", 1, g.n) - 1;
			int v = in_range(t[2], line, "vertex", 1, g.n) - 1;
			if (u == v) throw ParseError(line, "self-loop");
			if (!index.emplace(key(u, v), static_cast<int>(g.edges.size())).second)
				throw ParseError(line, "duplicate edge");
			if (static_cast<long long>(g.edges.size()) == *m) throw ParseError(line, "more edges than the header declares");
			g.edges.push_back({u, v});
		} else if (t[0] == "l") {
			if (t.size() < 3) throw ParseError(line, "too few fields");
			int v = in_range(t[1], line, "vertex", 1, g.n) - 1;
			int k = in_range(t[2], line, "list size", 1, 3);
			auto cs = read_colors(t, 3, k, line, "color");
			g.lists.resize(g.n);
			if (!g.lists[v].empty()) throw ParseError(line, "second list for vertex " + std::to_string(v + 1));
			g.lists[v] = cs;
		} else if (t[0] == "d") {
			expect_tokens(t, 5, line);
			int a = in_range(t[1], line, "vertex", 1, g.n) - 1, b = in_range(t[2], line, "vertex", 1, g.n) - 1;
			int c = in_range(t[3], line, "vertex", 1, g.n) - 1, d = in_range(t[4], line, "vertex", 1, g.n) - 1;
			diffs.push_back({line, key(a, b), key(c, d)});
		} else if (t[0] == "p") {
			throw ParseError(line, "second header line");
		} else {
			throw ParseError(line, "unknown line type '" + std::string(t[0]) + "'");
		}
	});
	if (!m) throw ParseError(0, "missing 'p edge' header");
	if (static_cast<long long>(g.edges.size()) != *m)
		throw ParseError(0, "header declares " + std::to_string(*m) + " edges, found " + std::to_string(g.edges.size()));
	for (const auto &p : diffs) {
		auto i = index.find(p.e1), j = index.find(p.e2);
		if (i == index.end() || j == index.end()) throw ParseError(p.line, "difference constraint names a missing edge");
		if (i->second == j->second) throw ParseError(p.line, "difference constraint on a single edge");
		g.diffs.push_back({i->second, j->second});
	}
	return g;
}

GraphFile parse_graph(const std::string &text) {
	std::istringstream in(text);
	return read_graph(in);
}

void write_graph(std::ostream &out, const GraphFile &g) {
	auto buf = classic();
	buf << "p edge " << g.n << ' ' << g.edges.size() << '\n';
	for (auto [u, v] : g.edges) buf << "e " << u + 1 << ' ' << v + 1 << '\n';
	for (int v = 0; v < static_cast<int>(g.lists.size()); ++v) {
		if (g.lists[v].empty()) continue;
		buf << "l " << v + 1 << ' ' << g.lists[v].size();
		for (int c : g.lists[v]) buf << ' ' << c;
		buf << '\n';
	}
	for (auto [i, j] : g.diffs) {
		auto [a, b] = g.edges.at(i);
		auto [c, d] = g.edges.at(j);
		buf << "d " << a + 1 << ' ' << b + 1 << ' ' << c + 1 << ' ' << d + 1 << '\n';
	}
	out << buf.str();
}

std::string format_graph(const GraphFile &g) {
	std::ostringstream out;
	write_graph(out, g);
	return out.str();
}

GraphFile graph_file(const Graph &g) {
	GraphFile f;
	f.n = g.num_vertices();
	f.edges = g.edges();
	return f;
}

// ---- CNF -----------------------------------------------------------------------

sat::Cnf read_cnf(std::istream &in) {
	sat::Cnf f;
	std::optional<long long> m;
	sat::Clause open;
	bool has_open = false;
	for_lines(in, [&](int line, const std::vector<std::string_view> &t) {
		if (t.empty() || t[0] == "c") return;
		if (!m) {
			if (t[0] != "p") throw ParseError(line, "expected 'p cnf <n> <m>' header");
			expect_tokens(t, 4, line);
			if (t[1] != "cnf") throw ParseError(line, "expected format 'cnf'");
			f.num_vars = in_range(t[2], line, "variable count", 0, kMaxCount);
			m = in_range(t[3], line, "clause count", 0, kMaxCount);
			return;
		}
		if (t[0] == "p") throw ParseError(line, "second header line");
		for (auto tok : t) {
			int lit = in_range(tok, line, "literal", -f.num_vars, f.num_vars);
			if (lit == 0) {
				if (static_cast<long long>(f.clauses.size()) == *m)
					throw ParseError(line, "more clauses than the header declares");
				f.clauses.push_back(std::move(open));
				open.clear();
				has_open = false;
				continue;
			}
			if (open.size() == 3) throw ParseError(line, "clause with more than three literals");
			open.push_back(lit);
			has_open = true;
		}
	});
	if (!m) throw ParseError(0, "missing 'p cnf' header");
	if (has_open) throw ParseError(0, "last clause is not terminated by 0");
	if (static_cast<long long>(f.clauses.size()) != *m)
		throw ParseError(0, "header declares " + std::to_string(*m) + " clauses, found " +
		                        std::to_string(f.clauses.size()));
	return f;
}

sat::Cnf parse_cnf(const std::string &text) {
	std::istringstream in(text);
	return read_cnf(in);
}

void write_cnf(std::ostream &out, const sat::Cnf &f) {
	auto buf = classic();
	buf << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
	for (const auto &c : f.clauses) {
		for (int l : c) buf << l << ' ';
		buf << "0\n";
	}
	out << buf.str();
}

std::string format_cnf(const sat::Cnf &f) {
	std::ostringstream out;
	write_cnf(out, f);
	return out.str();
}

// ---- solutions -----------------------------------------------------------------

void write_assignment(std::ostream &out, const csp::Assignment &a) {
	auto buf = classic();
	for (std::size_t v = 0; v < a.size(); ++v) buf << v + 1 << ' ' << a[v] << '\n';
	out << buf.str();
}

void write_vertex_coloring(std::ostream &out, const std::vector<int> &c) { write_assignment(out, c); }

void write_edge_coloring(std::ostream &out, const GraphFile &g, const std::vector<int> &c) {
	auto buf = classic();
	for (std::size_t i = 0; i < g.edges.size(); ++i)
		buf << g.edges[i].first + 1 << ' ' << g.edges[i].second + 1 << ' ' << c.at(i) << '\n';
	out << buf.str();
}

void write_model(std::ostream &out, const sat::Model &m) {
	auto buf = classic();
	buf << 'v';
	for (std::size_t v = 1; v < m.size(); ++v) buf << ' ' << (m[v] ? "" : "-") << v;
	buf << " 0\n";
	out << buf.str();
}

} // namespace trichrome::io
