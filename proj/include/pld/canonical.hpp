#pragma once

#include <string>
#include <vector>

#include "pld/graph.hpp"

namespace pld::poisson {

// Canonical certificate of a vertex-coloured graph: two coloured graphs get
// equal certificates iff a colour-preserving isomorphism exists. Iterative
// colour refinement plus backtracking individualisation on the first
// non-singleton class; exponential in the worst case, capped by vertex count.
std::string canonical_form(const Graph& g, const std::vector<int>& colours, int cap_vertices = 64);

// convenience: all vertices share one colour
std::string canonical_form(const Graph& g, int cap_vertices = 64);

}  // namespace pld::poisson
