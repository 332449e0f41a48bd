#include "pld/xi.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace pld::logic {

FormulaPtr build_xi(int l, int d) {
    if (l < 2) throw std::invalid_argument("build_xi: l must be >= 2");
    if (d < 0) throw std::invalid_argument("build_xi: d must be >= 0");
    const int m = (l + 1) * d + 1;
    const int nz = (l - 1) * m;
    auto zvar = [](int i) { return "z" + std::to_string(i); };  // z1..z{(l-1)m}

    std::vector<FormulaPtr> conjuncts;
    for (int i = 1; i <= nz; ++i) {
        for (int j = i + 1; j <= nz; ++j) {
            conjuncts.push_back(f_not(f_eq(zvar(i), zvar(j))));
        }
    }
    for (int i = 1; i <= nz; ++i) {
        conjuncts.push_back(f_and(f_edge("x", zvar(i)), f_edge("y", zvar(i))));
    }
    for (int k = 2; k <= l - 1; ++k) {
        for (int i = 1; i <= (k - 1) * m; ++i) {
            for (int j = (k - 1) * m + 1; j <= nz; ++j) {
                conjuncts.push_back(f_edge(zvar(i), zvar(j)));
            }
        }
    }
    FormulaPtr body = conjuncts.front();
    for (std::size_t i = 1; i < conjuncts.size(); ++i) body = f_and(std::move(body), conjuncts[i]);
    for (int i = nz; i >= 1; --i) body = f_exists(zvar(i), std::move(body));
    return body;
}

namespace {

class BlockSearch {
public:
    BlockSearch(const Graph& g, int m) : g_(g), m_(m), words_(g.words_per_row()) {}

    // finds `blocks` pairwise-completely-adjacent blocks of m vertices in pool
    bool run(std::vector<std::uint64_t> pool, int blocks) {
        blocks_ = blocks;
        return place_block(std::move(pool), 0);
    }

private:
    bool place_block(std::vector<std::uint64_t> pool, int done) {
        if (done == blocks_) return true;
        std::vector<int> cand;
        for (int v = 1; v <= g_.n(); ++v) {
            if ((pool[(v - 1) >> 6] >> ((v - 1) & 63)) & 1u) cand.push_back(v);
        }
        if (static_cast<int>(cand.size()) < m_ * (blocks_ - done)) return false;
        if (done == blocks_ - 1) return true;  // last block: within-block adjacency is free
        // candidate ordering: descending adjacency degree within the pool
        std::vector<int> deg(cand.size(), 0);
        for (std::size_t i = 0; i < cand.size(); ++i) {
            auto row = g_.row_bits(cand[i]);
            int c = 0;
            for (std::size_t wi = 0; wi < words_; ++wi) {
                c += static_cast<int>(std::popcount(row[wi] & pool[wi]));
            }
            deg[i] = c;
        }
        std::vector<int> order(cand.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });
        std::vector<int> chosen;
        return choose(pool, cand, order, 0, chosen, done);
    }

    // picks m block members from cand (in heuristic order); remaining blocks
    // must lie in the common neighbourhood of all picked members
    bool choose(const std::vector<std::uint64_t>& pool, const std::vector<int>& cand,
                const std::vector<int>& order, std::size_t from, std::vector<int>& chosen, int done) {
        if (static_cast<int>(chosen.size()) == m_) {
            std::vector<std::uint64_t> next = pool;
            for (int v : chosen) {
                auto row = g_.row_bits(v);
                for (std::size_t wi = 0; wi < words_; ++wi) next[wi] &= row[wi];
            }
            // picked vertices are never adjacent to themselves, so they are
            // already excluded from `next`
            return place_block(std::move(next), done + 1);
        }
        int need = m_ - static_cast<int>(chosen.size());
        for (std::size_t i = from; i + need <= order.size(); ++i) {
            chosen.push_back(cand[order[i]]);
            if (choose(pool, cand, order, i + 1, chosen, done)) return true;
            chosen.pop_back();
        }
        return false;
    }

    const Graph& g_;
    int m_;
    std::size_t words_;
    int blocks_ = 0;
};

}  // namespace

bool eval_xi_fast(const Graph& g, const XiParams& p, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (p.l == 1) return true;  // empty quantifier block
    const std::size_t words = g.words_per_row();
    std::vector<std::uint64_t> common(words);
    auto ru = g.row_bits(u);
    auto rv = g.row_bits(v);
    for (std::size_t i = 0; i < words; ++i) common[i] = ru[i] & rv[i];
    int cnt = 0;
    for (auto x : common) cnt += static_cast<int>(std::popcount(x));
    const int m = p.m();
    if (cnt < (p.l - 1) * m) return false;
    if (p.l == 2) return true;  // single block, no cross constraint
    return BlockSearch(g, m).run(std::move(common), p.l - 1);
}

std::string XiFailure::to_string() const {
    if (reason == Reason::NotTransitive) {
        return "xi relation not transitive: (" + std::to_string(a) + "," + std::to_string(b) +
               ") and (" + std::to_string(b) + "," + std::to_string(c) + ") related but (" +
               std::to_string(a) + "," + std::to_string(c) + ") not";
    }
    return "xi relation has " + std::to_string(found_classes) + " classes";
}

std::variant<decomp::Partition, XiFailure> xi_partition(const Graph& g, const XiParams& p) {
    const int n = g.n();
    if (n == 0) return XiFailure{XiFailure::Reason::ClassCountMismatch, 0, 0, 0, 0};
    // R as bit rows, reflexive closure included
    const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
    std::vector<std::uint64_t> rel(static_cast<std::size_t>(n) * words, 0);
    auto set_rel = [&](int a, int b) {
        rel[static_cast<std::size_t>(a - 1) * words + static_cast<std::size_t>(b - 1) / 64] |=
            1ULL << ((b - 1) % 64);
    };
    auto get_rel = [&](int a, int b) {
        return (rel[static_cast<std::size_t>(a - 1) * words + static_cast<std::size_t>(b - 1) / 64] >>
                ((b - 1) % 64)) &
               1u;
    };
    for (int u = 1; u <= n; ++u) {
        set_rel(u, u);
        for (int v = u + 1; v <= n; ++v) {
            if (eval_xi_fast(g, p, u, v)) {
                set_rel(u, v);
                set_rel(v, u);
            }
        }
    }
    // classes = connected components of R; R is an equivalence iff every
    // component is R-complete
    std::vector<int> cls(n + 1, 0);
    int nclasses = 0;
    for (int s = 1; s <= n; ++s) {
        if (cls[s] != 0) continue;
        ++nclasses;
        std::vector<int> queue{s};
        cls[s] = nclasses;
        std::vector<int> members;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int a = queue[qi];
            members.push_back(a);
            for (int b = 1; b <= n; ++b) {
                if (get_rel(a, b) && cls[b] == 0) {
                    cls[b] = nclasses;
                    queue.push_back(b);
                }
            }
        }
        for (int a : members) {
            for (int b : members) {
                if (get_rel(a, b)) continue;
                // a,b share a component but are unrelated; on a shortest
                // R-path from a to b the first three vertices are a
                // non-transitive triple (a chord would shorten the path)
                std::vector<int> par(n + 1, -1);
                std::vector<int> bfs{a};
                par[a] = 0;
                for (std::size_t qi = 0; qi < bfs.size() && par[b] == -1; ++qi) {
                    int t = bfs[qi];
                    for (int z : members) {
                        if (par[z] == -1 && get_rel(t, z)) {
                            par[z] = t;
                            bfs.push_back(z);
                        }
                    }
                }
                std::vector<int> path;
                for (int t = b; t != 0; t = par[t]) path.push_back(t);
                std::reverse(path.begin(), path.end());
                return XiFailure{XiFailure::Reason::NotTransitive, path[0], path[1], path[2], 0};
            }
        }
    }
    if (nclasses != p.l) {
        return XiFailure{XiFailure::Reason::ClassCountMismatch, 0, 0, 0, nclasses};
    }
    std::vector<int> assign(cls.begin() + 1, cls.end());
    return decomp::Partition(p.l, std::move(assign), decomp::PartitionMode::UnorderedNonempty);
}

}  // namespace pld::logic
