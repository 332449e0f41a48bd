#pragma once

#include <functional>
#include <vector>

#include "pld/census.hpp"
#include "pld/graph.hpp"

namespace pld::forbidden {

// K_{1,s_1,...,s_l}: complete (l+1)-partite graph with class sizes
// 1, s_1 <= ... <= s_l. The apex is vertex 1.
struct MultipartitePattern {
    std::vector<int> sizes;

    explicit MultipartitePattern(std::vector<int> s);
    int l() const { return static_cast<int>(sizes.size()); }
    int total_vertices() const;
    Graph build_graph() const;
};

struct ForbiddenCaps {
    int max_pattern_vertices = 14;  // assignment-search verifiers
};

// subgraph (not induced) containment of the pattern in g
bool contains_multipartite(const Graph& g, const MultipartitePattern& pat);

// Exhaustively certifies: every partition of K_{1,s_1..s_l} into l parts in
// which each vertex has at most s_1 - 1 own-part neighbours leaves a
// monochromatic 3-cycle in some part. True iff no counterexample exists.
bool verify_cycle_lemma(int l, const std::vector<int>& s, const ForbiddenCaps& caps = {});

// closed-form predicate: s_1 <= 2 or s_2 >= 2(s_1 - 1); semantics:
// P(l, s_1 - 1) is contained in Forb(K_{1,s_1..s_l})
bool inclusion_criterion(int l, const std::vector<int>& s);

// exhaustive ground truth for inclusion_criterion: true iff K_{1,s_1..s_l}
// admits NO partition into l parts with own-part degrees <= s_1 - 1
bool brute_inclusion_check(int l, const std::vector<int>& s, const ForbiddenCaps& caps = {});

// enumerate_class(n, no subgraph isomorphic to the pattern)
void enumerate_forb(int n, const MultipartitePattern& pat,
                    const std::function<void(const Graph&)>& sink,
                    const census::CensusCaps& caps = {});

}  // namespace pld::forbidden
