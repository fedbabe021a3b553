#pragma once

#include <cstdint>
#include <random>

#include "trichrome/csp.h"
#include "trichrome/graph.h"
#include "trichrome/sat.h"

namespace trichrome::gen {

// All generators draw from mt19937_64 through the helpers below only, so a
// (kind, params, seed) triple gives the same instance on every platform.

/// Uniform integer in [0, bound); bound > 0.
std::uint64_t below(std::mt19937_64 &rng, std::uint64_t bound);
/// True with probability p.
bool coin(std::mt19937_64 &rng, double p);

/// n variables with d colors (0..d-1); each cross-variable color pair is
/// forbidden with probability `density`. d in 2..16.
csp::Instance random_csp(int n, int d, double density, std::uint64_t seed);

/// G(n, p).
Graph random_graph(int n, double p, std::uint64_t seed);

/// Uniform-ish k-regular simple graph by the pairing model with restarts.
/// Needs n*k even and k < n. Throws std::invalid_argument otherwise.
Graph random_regular(int n, int k, std::uint64_t seed);

/// Random edges kept while both endpoints have degree < 3; about
/// `fill` * 3n/2 edge attempts.
Graph random_subcubic(int n, double fill, std::uint64_t seed);

/// t clauses over n variables, each with three distinct variables and
/// random signs. Needs n >= 3.
sat::Cnf random_3cnf(int n, int t, std::uint64_t seed);

} // namespace trichrome::gen
