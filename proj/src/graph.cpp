#include "pld/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace pld {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    words_ = static_cast<std::size_t>((n + 63) / 64);
    adj_.assign(n_, {});
    bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u == v) throw std::invalid_argument("Graph: loop edge");
        check_vertex(u);
        check_vertex(v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("Graph: duplicate edge");
    }
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
        adj_[u - 1].push_back(v);
        adj_[v - 1].push_back(u);
        bits_[static_cast<std::size_t>(u - 1) * words_ + static_cast<std::size_t>(v - 1) / 64] |=
            1ULL << ((v - 1) % 64);
        bits_[static_cast<std::size_t>(v - 1) * words_ + static_cast<std::size_t>(u - 1) / 64] |=
            1ULL << ((u - 1) % 64);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

std::string Graph::key() const {
    std::string k = std::to_string(n_) + ":";
    for (auto [u, v] : edges_) {
        k += std::to_string(u) + "-" + std::to_string(v) + ",";
    }
    return k;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    VertexSet sorted = make_vertex_set(g, s);
    std::vector<int> to_new(g.n() + 1, 0);
    for (std::size_t i = 0; i < sorted.size(); ++i) to_new[sorted[i]] = static_cast<int>(i + 1);
    std::vector<std::pair<int, int>> edges;
    for (int v : sorted) {
        for (int w : g.neighbours(v)) {
            if (w > v && to_new[w] != 0) edges.emplace_back(to_new[v], to_new[w]);
        }
    }
    return InducedSubgraph{Graph(static_cast<int>(sorted.size()), std::move(edges)), std::move(sorted)};
}

namespace {

// BFS distances from a source set; -1 for unreached
std::vector<int> bfs(const Graph& g, const VertexSet& sources) {
    std::vector<int> dist(g.n() + 1, -1);
    std::queue<int> q;
    for (int s : sources) {
        g.check_vertex(s);
        if (dist[s] == -1) {
            dist[s] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbours(v)) {
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

}  // namespace

Distance distance(const Graph& g, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    auto dist = bfs(g, {u});
    return dist[v] == -1 ? Distance::unreachable() : Distance::of(dist[v]);
}

Distance distance(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("distance: empty vertex set");
    auto dist = bfs(g, a);
    int best = -1;
    for (int v : b) {
        g.check_vertex(v);
        if (dist[v] != -1 && (best == -1 || dist[v] < best)) best = dist[v];
    }
    return best == -1 ? Distance::unreachable() : Distance::of(best);
}

VertexSet ball(const Graph& g, const VertexSet& a, int t) {
    if (a.empty()) throw std::invalid_argument("ball: empty source set");
    if (t < 0) throw std::invalid_argument("ball: negative radius");
    auto dist = bfs(g, a);
    VertexSet out;
    for (int v = 1; v <= g.n(); ++v) {
        if (dist[v] != -1 && dist[v] <= t) out.push_back(v);
    }
    return out;
}

VertexSet make_vertex_set(const Graph& g, std::vector<int> vertices) {
    for (int v : vertices) g.check_vertex(v);
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
        throw std::invalid_argument("VertexSet: duplicate vertex");
    }
    return vertices;
}

}  // namespace pld
