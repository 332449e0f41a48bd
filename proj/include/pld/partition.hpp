#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pld/bigint.hpp"
#include "pld/graph.hpp"

namespace pld::decomp {

// OrderedAny:        parts are labelled 1..l and may be empty
// OrderedNonempty:   parts are labelled and every label is attained
// UnorderedNonempty: parts are sets; stored canonically (sorted by min vertex)
enum class PartitionMode { OrderedAny, OrderedNonempty, UnorderedNonempty };

class Partition {
public:
    // assign[v-1] in 1..l is the part of vertex v
    Partition(int l, std::vector<int> assign, PartitionMode mode);

    int l() const { return l_; }
    int n() const { return static_cast<int>(assign_.size()); }
    PartitionMode mode() const { return mode_; }
    int part_of(int v) const { return assign_.at(v - 1); }
    const std::vector<int>& assignment() const { return assign_; }

    std::vector<VertexSet> parts() const;
    std::vector<int> part_sizes() const;

    // relabels parts by minimum vertex and switches to UnorderedNonempty;
    // requires every part nonempty
    Partition canonical_unordered() const;

    // equality as labelled assignments; compare canonical_unordered() for
    // set-of-parts equality
    friend bool operator==(const Partition& a, const Partition& b) {
        return a.l_ == b.l_ && a.assign_ == b.assign_;
    }

private:
    int l_;
    std::vector<int> assign_;
    PartitionMode mode_;
};

// true iff every part has at least alpha vertices
bool is_rich(const Partition& p, double alpha);

struct Decomposition {
    Partition base;
    std::vector<std::pair<int, int>> cross_edges;  // E1: endpoints in distinct parts
    std::vector<std::pair<int, int>> own_edges;    // E2: endpoints in one part
};

struct DecompositionFailure {
    int vertex;       // a vertex with more than d own-part neighbours
    int own_degree;
};

// Splits E(G) along pi; succeeds iff every vertex has at most d own-part
// neighbours (the decomposition is then unique for pi).
std::variant<Decomposition, DecompositionFailure> decomposition_from_partition(const Graph& g,
                                                                               const Partition& pi,
                                                                               int d);

// Number of partitions pi (in the given mode) admitting a pi-based
// decomposition. Backtracking over vertices in index order, pruning as soon
// as an assigned vertex exceeds d own-part neighbours.
BigUint count_decompositions(const Graph& g, int l, int d, PartitionMode mode);

}  // namespace pld::decomp
