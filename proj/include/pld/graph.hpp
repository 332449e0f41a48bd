#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pld {

// Vertices are externally 1-based: a graph on n vertices has vertex set
// {1, ..., n}. Sorted duplicate-free vertex lists double as vertex sets.
using VertexSet = std::vector<int>;

// Shortest-path distance with an explicit unreachable value; unreachable never
// enters arithmetic as a sentinel integer.
class Distance {
public:
    static Distance unreachable() { return Distance{}; }
    static Distance of(int v) {
        if (v < 0) throw std::invalid_argument("Distance: negative");
        Distance d;
        d.reachable_ = true;
        d.value_ = v;
        return d;
    }
    bool is_unreachable() const { return !reachable_; }
    int value() const {
        if (!reachable_) throw std::logic_error("Distance: unreachable has no value");
        return value_;
    }
    friend bool operator==(const Distance& a, const Distance& b) {
        return a.reachable_ == b.reachable_ && (!a.reachable_ || a.value_ == b.value_);
    }

private:
    Distance() = default;
    bool reachable_ = false;
    int value_ = 0;
};

// Labelled simple undirected graph. Immutable after construction and safe to
// share across concurrent readers.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : Graph(n, {}) {}
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return adj_word(u, v);
    }
    int degree(int v) const {
        check_vertex(v);
        return static_cast<int>(adj_[v - 1].size());
    }
    std::span<const int> neighbours(int v) const {
        check_vertex(v);
        return adj_[v - 1];
    }
    int max_degree() const;

    // adjacency row as bit words (vertex u occupies bit u-1 of word (u-1)/64)
    std::span<const std::uint64_t> row_bits(int v) const {
        check_vertex(v);
        return {bits_.data() + static_cast<std::size_t>(v - 1) * words_, words_};
    }
    std::size_t words_per_row() const { return words_; }

    void check_vertex(int v) const {
        if (v < 1 || v > n_) throw std::out_of_range("Graph: vertex out of range");
    }

    // canonical text key (n plus edge bitmask bytes); used for frequency tables
    std::string key() const;

private:
    bool adj_word(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u - 1) * words_ + static_cast<std::size_t>(v - 1) / 64] >>
                ((v - 1) % 64)) &
               1u;
    }
    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::pair<int, int>> edges_;     // sorted, u < v
    std::vector<std::vector<int>> adj_;          // sorted neighbour lists
    std::vector<std::uint64_t> bits_;            // n rows of `words_` words
};

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original;  // new label i+1 -> to_original[i]
};

// G[S], relabelled 1..|S| by ascending original label.
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

Distance distance(const Graph& g, int u, int v);

// min distance between nonempty vertex sets
Distance distance(const Graph& g, const VertexSet& a, const VertexSet& b);

// N_G(A, t) = { v : dist_G(A, v) <= t }; A must be nonempty
VertexSet ball(const Graph& g, const VertexSet& a, int t);

// sorted-unique validation helper; throws on out-of-range or duplicates
VertexSet make_vertex_set(const Graph& g, std::vector<int> vertices);

}  // namespace pld
