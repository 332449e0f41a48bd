#pragma once

#include "pld/graph.hpp"

namespace pld::logic {

struct EfCaps {
    int max_rounds = 3;
    int max_vertices = 12;
};

// Decides G ≡_k H (agreement on all sentences of quantifier rank <= k) via
// exhaustive search of the k-round Ehrenfeucht-Fraïssé game with memoisation
// on canonicalised positions. Throws CapError beyond the configured caps.
bool ef_equivalent(const Graph& g, const Graph& h, int k, const EfCaps& caps = {});

}  // namespace pld::logic
