#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trichrome/csp.h"
#include "trichrome/graph.h"
#include "trichrome/sat.h"

namespace trichrome::io {

/// Malformed input. `line` is 1-based; 0 when the problem is the file as a
/// whole (missing header, wrong counts at end of input).
class ParseError : public std::runtime_error {
public:
	ParseError(int line, const std::string &what);
	int line() const { return line_; }

private:
	int line_;
};

// CSP text format:
//   p csp <n>
//   v <var> <k> <c1> .. <ck>      every variable exactly once, 1-based ids
//   c <v> <cv> <w> <cw>
//   # comment
csp::Instance read_csp(std::istream &in);
csp::Instance parse_csp(const std::string &text);
/// Canonical form: header, variables in order, constraints sorted. Fixed
/// variables are written with their single color; retired ones throw.
void write_csp(std::ostream &out, const csp::Instance &inst);
std::string format_csp(const csp::Instance &inst);

// DIMACS graph: p edge <n> <m>, e <u> <v>, c comments, 1-based vertices.
// Extensions: l <v> <k> <c1> .. <ck> (color list of v) and
// d <e1u> <e1v> <e2u> <e2v> (the two edges must get different colors).
struct GraphFile {
	int n = 0;
	std::vector<std::pair<int, int>> edges; // 0-based, file order
	std::vector<std::vector<int>> lists;    // empty, or one list per vertex
	std::vector<std::pair<int, int>> diffs; // indices into edges

	Graph graph() const;
	/// Lists for vertices without an `l` line default to {1,2,3}.
	std::vector<std::vector<int>> lists_or_default() const;
};

GraphFile read_graph(std::istream &in);
GraphFile parse_graph(const std::string &text);
void write_graph(std::ostream &out, const GraphFile &g);
std::string format_graph(const GraphFile &g);
GraphFile graph_file(const Graph &g);

// DIMACS CNF: p cnf <n> <m>, clauses terminated by 0 (one or more per line),
// c comments. Clauses longer than three literals are rejected.
sat::Cnf read_cnf(std::istream &in);
sat::Cnf parse_cnf(const std::string &text);
void write_cnf(std::ostream &out, const sat::Cnf &f);
std::string format_cnf(const sat::Cnf &f);

// solution output
void write_assignment(std::ostream &out, const csp::Assignment &a); // "<var> <color>", 1-based vars
void write_vertex_coloring(std::ostream &out, const std::vector<int> &c);
void write_edge_coloring(std::ostream &out, const GraphFile &g, const std::vector<int> &c);
void write_model(std::ostream &out, const sat::Model &m); // "v 1 -2 ... 0"

} // namespace trichrome::io
