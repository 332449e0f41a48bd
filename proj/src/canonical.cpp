#include "pld/canonical.hpp"

#include <algorithm>
#include <map>

#include "pld/errors.hpp"

namespace pld::poisson {

namespace {

// refine until stable: new colour = rank of (colour, sorted neighbour colours)
std::vector<int> refine(const Graph& g, std::vector<int> col) {
    const int n = g.n();
    for (;;) {
        std::vector<std::pair<std::vector<int>, int>> sig(n);
        for (int v = 1; v <= n; ++v) {
            std::vector<int> nb;
            nb.reserve(g.neighbours(v).size());
            for (int w : g.neighbours(v)) nb.push_back(col[w - 1]);
            std::sort(nb.begin(), nb.end());
            nb.insert(nb.begin(), col[v - 1]);
            sig[v - 1] = {std::move(nb), v};
        }
        std::map<std::vector<int>, int> ranks;
        for (const auto& [s, v] : sig) ranks.emplace(s, 0);
        int r = 0;
        for (auto& [s, rank] : ranks) rank = r++;
        std::vector<int> next(n);
        bool changed = false;
        for (int v = 1; v <= n; ++v) {
            next[v - 1] = ranks[sig[v - 1].first];
            if (next[v - 1] != col[v - 1]) changed = true;
        }
        // a refinement step can only split classes; stop at a fixpoint of the
        // induced partition
        std::map<int, int> classes_of;
        bool same_partition = true;
        for (int v = 0; v < n; ++v) {
            auto it = classes_of.find(col[v]);
            if (it == classes_of.end()) {
                classes_of[col[v]] = next[v];
            } else if (it->second != next[v]) {
                same_partition = false;
                break;
            }
        }
        col = std::move(next);
        if (!changed || same_partition) return col;
    }
}

std::string discrete_certificate(const Graph& g, const std::vector<int>& refined,
                                 const std::vector<int>& original) {
    const int n = g.n();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i + 1;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return refined[a - 1] < refined[b - 1]; });
    std::string cert;
    cert += static_cast<char>(n);
    for (int v : order) {
        cert += static_cast<char>(original[v - 1] & 0xff);
        cert += static_cast<char>((original[v - 1] >> 8) & 0xff);
    }
    // upper-triangular adjacency in canonical order, packed bitwise
    unsigned acc = 0;
    int nbits = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            acc = (acc << 1) | (g.has_edge(order[i], order[j]) ? 1u : 0u);
            if (++nbits == 8) {
                cert += static_cast<char>(acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) cert += static_cast<char>(acc << (8 - nbits));
    return cert;
}

std::string canon_rec(const Graph& g, const std::vector<int>& colours,
                      const std::vector<int>& original) {
    std::vector<int> refined = refine(g, colours);
    const int n = g.n();
    // first non-singleton class by colour value
    std::vector<std::vector<int>> byc;
    {
        int maxc = 0;
        for (int c : refined) maxc = std::max(maxc, c);
        byc.assign(maxc + 1, {});
        for (int v = 1; v <= n; ++v) byc[refined[v - 1]].push_back(v);
    }
    const std::vector<int>* cell = nullptr;
    for (const auto& c : byc) {
        if (c.size() > 1) {
            cell = &c;
            break;
        }
    }
    if (cell == nullptr) return discrete_certificate(g, refined, original);
    std::string best;
    for (int v : *cell) {
        // individualise v ahead of its cell mates
        std::vector<int> next(n);
        for (int u = 1; u <= n; ++u) {
            next[u - 1] = 2 * refined[u - 1] +
                          (refined[u - 1] == refined[v - 1] && u != v ? 1 : 0);
        }
        std::string cert = canon_rec(g, next, original);
        if (best.empty() || cert < best) best = std::move(cert);
    }
    return best;
}

}  // namespace

std::string canonical_form(const Graph& g, const std::vector<int>& colours, int cap_vertices) {
    if (g.n() > cap_vertices) {
        throw CapError("canonical_form: graph exceeds vertex cap " + std::to_string(cap_vertices));
    }
    if (static_cast<int>(colours.size()) != g.n()) {
        throw std::invalid_argument("canonical_form: colour vector size mismatch");
    }
    return canon_rec(g, colours, colours);
}

std::string canonical_form(const Graph& g, int cap_vertices) {
    return canonical_form(g, std::vector<int>(g.n(), 0), cap_vertices);
}

}  // namespace pld::poisson
