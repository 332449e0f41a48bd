#include "pld/extension.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "pld/canonical.hpp"
#include "pld/errors.hpp"

namespace pld::decomp {

int floor_fourth_root(int n) {
    int r = 0;
    while (static_cast<long long>(r + 1) * (r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

void ExtensionPattern::validate() const {
    std::vector<int> cover(h.n() + 1, 0);
    for (int v : x1) {
        h.check_vertex(v);
        ++cover[v];
    }
    for (int v : x2) {
        h.check_vertex(v);
        ++cover[v];
    }
    for (int v : y) {
        h.check_vertex(v);
        ++cover[v];
    }
    for (int v = 1; v <= h.n(); ++v) {
        if (cover[v] != 1) {
            throw std::invalid_argument("ExtensionPattern: X1, X2, Y must partition V(H)");
        }
    }
    for (int a : x1) {
        for (int b : y) {
            if (h.has_edge(a, b)) {
                throw std::invalid_argument("ExtensionPattern: X1-Y edges are not allowed");
            }
        }
    }
    if (target_part < 1) throw std::invalid_argument("ExtensionPattern: bad target part");
}

namespace {

// counts distinct subsets Z of `host_part` with G[Z] isomorphic to `pattern`,
// stopping once `stop_at` copies are found
int count_induced_copies(const Graph& g, const VertexSet& host_part, const Graph& pattern,
                         int stop_at) {
    const int k = pattern.n();
    if (k == 0) return stop_at;  // the empty pattern occurs vacuously
    if (static_cast<int>(host_part.size()) < k) return 0;
    const std::string target = poisson::canonical_form(pattern);
    int found = 0;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    const int hn = static_cast<int>(host_part.size());
    for (;;) {
        VertexSet sub(k);
        for (int i = 0; i < k; ++i) sub[i] = host_part[idx[i]];
        Graph cand = induced_subgraph(g, sub).graph;
        if (poisson::canonical_form(cand) == target) {
            if (++found >= stop_at) return found;
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == hn - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return found;
}

// enumerates strong (induced) embeddings of pattern vertices `order` into g,
// candidate pools restricted per vertex; calls visit on every full embedding,
// stops early if visit returns false (meaning: abort the whole search)
class StrongEmbedder {
public:
    StrongEmbedder(const Graph& g, const Graph& h) : g_(g), h_(h), image_(h.n() + 1, 0),
                                                     used_(g.n() + 1, 0) {}

    // pools[i] = allowed host vertices for order[i]
    bool for_each(const std::vector<int>& order, const std::vector<const VertexSet*>& pools,
                  const std::function<bool(const std::vector<int>&)>& visit) {
        order_ = &order;
        pools_ = &pools;
        visit_ = &visit;
        aborted_ = false;
        recurse(0);
        return !aborted_;
    }

private:
    void recurse(std::size_t depth) {
        if (aborted_) return;
        if (depth == order_->size()) {
            if (!(*visit_)(image_)) aborted_ = true;
            return;
        }
        const int pv = (*order_)[depth];
        for (int host : *(*pools_)[depth]) {
            if (used_[host]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < depth && ok; ++j) {
                const int pw = (*order_)[j];
                ok = h_.has_edge(pv, pw) == g_.has_edge(host, image_[pw]);
            }
            if (!ok) continue;
            image_[pv] = host;
            used_[host] = 1;
            recurse(depth + 1);
            used_[host] = 0;
            image_[pv] = 0;
            if (aborted_) return;
        }
    }

    const Graph& g_;
    const Graph& h_;
    std::vector<int> image_;
    std::vector<char> used_;
    const std::vector<int>* order_ = nullptr;
    const std::vector<const VertexSet*>* pools_ = nullptr;
    const std::function<bool(const std::vector<int>&)>* visit_ = nullptr;
    bool aborted_ = false;
};

}  // namespace

bool check_extension_instance(const Graph& g, const Partition& pi, const ExtensionPattern& pat) {
    pat.validate();
    if (pat.target_part > pi.l()) throw std::invalid_argument("check_extension_instance: bad part");
    if (pi.n() != g.n()) throw std::invalid_argument("check_extension_instance: size mismatch");
    if (pat.y.empty()) return true;  // h0 itself is the required extension

    auto parts = pi.parts();
    const VertexSet& vp = parts[pat.target_part - 1];
    VertexSet rest;
    for (int v = 1; v <= g.n(); ++v) {
        if (pi.part_of(v) != pat.target_part) rest.push_back(v);
    }

    const int threshold = std::max(1, floor_fourth_root(g.n()));
    const Graph hy = induced_subgraph(pat.h, pat.y).graph;
    if (count_induced_copies(g, vp, hy, threshold) < threshold) return true;

    // every strong embedding h0 of H[X1 ∪ X2] must extend into V_p
    std::vector<int> order;
    std::vector<const VertexSet*> pools;
    for (int v : pat.x1) {
        order.push_back(v);
        pools.push_back(&vp);
    }
    for (int v : pat.x2) {
        order.push_back(v);
        pools.push_back(&rest);
    }
    StrongEmbedder outer(g, pat.h);
    bool all_extend = outer.for_each(order, pools, [&](const std::vector<int>& h0_image) {
        // h0 fixed; search for one full strong embedding extending it
        std::vector<int> image = h0_image;
        std::vector<char> used(g.n() + 1, 0);
        for (std::size_t i = 0; i < order.size(); ++i) used[h0_image[order[i]]] = 1;
        std::function<bool(std::size_t)> place = [&](std::size_t depth) -> bool {
            if (depth == pat.y.size()) return true;
            const int pv = pat.y[depth];
            for (int host : vp) {
                if (used[host]) continue;
                bool ok = true;
                for (int pw = 1; pw <= pat.h.n() && ok; ++pw) {
                    if (pw == pv || image[pw] == 0) continue;
                    ok = pat.h.has_edge(pv, pw) == g.has_edge(host, image[pw]);
                }
                if (!ok) continue;
                image[pv] = host;
                used[host] = 1;
                if (place(depth + 1)) return true;
                used[host] = 0;
                image[pv] = 0;
            }
            return false;
        };
        return place(0);  // false aborts: some h0 fails to extend
    });
    return all_extend;
}

bool check_k_extension(const Graph& g, const Partition& pi, int k, const ExtensionCaps& caps) {
    if (k < 0) throw std::invalid_argument("check_k_extension: negative k");
    if (k > caps.max_k) throw CapError("check_k_extension: k exceeds cap " + std::to_string(caps.max_k));
    if (g.n() > caps.max_vertices) {
        throw CapError("check_k_extension: graph exceeds vertex cap " +
                       std::to_string(caps.max_vertices));
    }
    if (k == 0) return true;  // no patterns

    // enumerate patterns up to colour-respecting isomorphism
    std::set<std::string> seen;
    for (int a = 0; a + 1 <= k; ++a) {
        for (int b = 0; a + b + 1 <= k; ++b) {
            for (int c = 1; a + b + c <= k; ++c) {
                const int t = a + b + c;
                std::vector<std::pair<int, int>> pairs;
                for (int u = 1; u <= t; ++u) {
                    for (int v = u + 1; v <= t; ++v) pairs.emplace_back(u, v);
                }
                std::vector<int> colours(t);
                VertexSet x1, x2, y;
                for (int v = 1; v <= t; ++v) {
                    if (v <= a) {
                        colours[v - 1] = 0;
                        x1.push_back(v);
                    } else if (v <= a + b) {
                        colours[v - 1] = 1;
                        x2.push_back(v);
                    } else {
                        colours[v - 1] = 2;
                        y.push_back(v);
                    }
                }
                for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
                    std::vector<std::pair<int, int>> edges;
                    bool bad = false;
                    for (std::size_t j = 0; j < pairs.size(); ++j) {
                        if (((mask >> j) & 1u) == 0) continue;
                        auto [u, v] = pairs[j];
                        // the defining assumption: no X1-Y edges
                        if ((u <= a && v > a + b) || (v <= a && u > a + b)) {
                            bad = true;
                            break;
                        }
                        edges.push_back(pairs[j]);
                    }
                    if (bad) continue;
                    Graph h(t, edges);
                    std::string canon = std::to_string(a) + "/" + std::to_string(b) + "/" +
                                        std::to_string(c) + "/" + poisson::canonical_form(h, colours);
                    if (!seen.insert(canon).second) continue;
                    for (int p = 1; p <= pi.l(); ++p) {
                        ExtensionPattern pat{h, x1, x2, y, p};
                        if (!check_extension_instance(g, pi, pat)) return false;
                    }
                }
            }
        }
    }
    // patterns with Y empty extend trivially and are skipped above
    return true;
}

}  // namespace pld::decomp
