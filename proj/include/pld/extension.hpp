#pragma once

#include "pld/graph.hpp"
#include "pld/partition.hpp"

namespace pld::decomp {

// Pattern H = (X1 ∪ X2 ∪ Y, E) with no X1-Y edges, plus a target part.
// X1 embeds inside the target part, X2 outside it, Y must extend into it.
struct ExtensionPattern {
    Graph h;
    VertexSet x1, x2, y;
    int target_part;

    void validate() const;
};

struct ExtensionCaps {
    int max_k = 4;
    int max_vertices = 64;
};

// The extension condition, checked literally: if G[V_p] holds at least
// floor(n^{1/4}) distinct induced copies of H[Y], then every strong embedding
// of H[X1 ∪ X2] with X1 inside V_p and X2 outside extends to a strong
// embedding of H with Y inside V_p. True when the copy guard fails.
bool check_extension_instance(const Graph& g, const Partition& pi, const ExtensionPattern& pat);

// Conjunction of check_extension_instance over all patterns with
// |X1|+|X2|+|Y| <= k (up to colour-respecting isomorphism) and all target
// parts.
bool check_k_extension(const Graph& g, const Partition& pi, int k, const ExtensionCaps& caps = {});

// largest r with r^4 <= n (the copy-count guard threshold)
int floor_fourth_root(int n);

}  // namespace pld::decomp
