#include "pld/forbidden.hpp"

#include <algorithm>
#include <bit>

#include "pld/errors.hpp"

namespace pld::forbidden {

MultipartitePattern::MultipartitePattern(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.empty()) throw std::invalid_argument("MultipartitePattern: need at least one class");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw std::invalid_argument("MultipartitePattern: sizes must be >= 1");
        if (i > 0 && sizes[i] < sizes[i - 1]) {
            throw std::invalid_argument("MultipartitePattern: sizes must be nondecreasing");
        }
    }
}

int MultipartitePattern::total_vertices() const {
    int t = 1;
    for (int s : sizes) t += s;
    return t;
}

Graph MultipartitePattern::build_graph() const {
    // classes: {1}, then consecutive blocks of sizes s_1..s_l
    const int n = total_vertices();
    std::vector<int> cls(n + 1, 0);
    int v = 2;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        for (int j = 0; j < sizes[i]; ++j) cls[v++] = static_cast<int>(i) + 1;
    }
    std::vector<std::pair<int, int>> edges;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            if (cls[a] != cls[b]) edges.emplace_back(a, b);
        }
    }
    return Graph(n, std::move(edges));
}

namespace {

// backtracking search for disjoint classes S_1..S_l inside the apex
// neighbourhood with complete adjacency between distinct classes; classes are
// placed largest-first
class MultipartiteSearch {
public:
    MultipartiteSearch(const Graph& g, std::vector<int> sizes_desc)
        : g_(g), sizes_(std::move(sizes_desc)), words_(g.words_per_row()) {}

    bool found_with_apex(int apex) {
        std::vector<std::uint64_t> pool(words_, 0);
        auto row = g_.row_bits(apex);
        for (std::size_t i = 0; i < words_; ++i) pool[i] = row[i];
        return place_class(pool, 0);
    }

private:
    int pool_count(const std::vector<std::uint64_t>& pool) const {
        int c = 0;
        for (auto w : pool) c += static_cast<int>(std::popcount(w));
        return c;
    }

    bool place_class(const std::vector<std::uint64_t>& pool, std::size_t idx) {
        if (idx == sizes_.size()) return true;
        int need_total = 0;
        for (std::size_t i = idx; i < sizes_.size(); ++i) need_total += sizes_[i];
        if (pool_count(pool) < need_total) return false;
        std::vector<int> cand;
        for (int v = 1; v <= g_.n(); ++v) {
            if ((pool[(v - 1) >> 6] >> ((v - 1) & 63)) & 1u) cand.push_back(v);
        }
        std::vector<int> chosen;
        return choose(pool, cand, 0, chosen, idx);
    }

    bool choose(const std::vector<std::uint64_t>& pool, const std::vector<int>& cand,
                std::size_t from, std::vector<int>& chosen, std::size_t idx) {
        if (static_cast<int>(chosen.size()) == sizes_[idx]) {
            if (idx + 1 == sizes_.size()) return true;
            std::vector<std::uint64_t> next = pool;
            for (int v : chosen) {
                auto row = g_.row_bits(v);
                for (std::size_t i = 0; i < words_; ++i) next[i] &= row[i];
            }
            return place_class(next, idx + 1);
        }
        int need = sizes_[idx] - static_cast<int>(chosen.size());
        for (std::size_t i = from; i + need <= cand.size(); ++i) {
            chosen.push_back(cand[i]);
            if (choose(pool, cand, i + 1, chosen, idx)) return true;
            chosen.pop_back();
        }
        return false;
    }

    const Graph& g_;
    std::vector<int> sizes_;
    std::size_t words_;
};

}  // namespace

bool contains_multipartite(const Graph& g, const MultipartitePattern& pat) {
    if (pat.total_vertices() > g.n()) return false;
    std::vector<int> desc = pat.sizes;
    std::sort(desc.rbegin(), desc.rend());
    MultipartiteSearch search(g, desc);
    for (int apex = 1; apex <= g.n(); ++apex) {
        if (g.degree(apex) < pat.total_vertices() - 1) continue;
        if (search.found_with_apex(apex)) return true;
    }
    return false;
}

namespace {

// Enumerates assignments of the pattern's vertices to parts 1..l with
// own-part degrees <= s_1 - 1, the apex pinned to part 1 (part labels are
// symmetric). Calls leaf() on every complete valid assignment; stops when
// leaf() returns false.
class AssignmentSearch {
public:
    AssignmentSearch(const Graph& k, int l, int max_own)
        : k_(k), l_(l), max_own_(max_own), part_(k.n() + 1, 0), own_(k.n() + 1, 0) {}

    bool run(const std::function<bool(const std::vector<int>&)>& leaf) {
        leaf_ = &leaf;
        stopped_ = false;
        part_[1] = 1;
        place(2);
        return !stopped_;
    }

private:
    void place(int v) {
        if (stopped_) return;
        if (v > k_.n()) {
            if (!(*leaf_)(part_)) stopped_ = true;
            return;
        }
        for (int p = 1; p <= l_; ++p) {
            int gained = 0;
            bool ok = true;
            for (int w : k_.neighbours(v)) {
                if (w < v && part_[w] == p) {
                    ++gained;
                    if (own_[w] + 1 > max_own_ || gained > max_own_) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            part_[v] = p;
            own_[v] = gained;
            for (int w : k_.neighbours(v)) {
                if (w < v && part_[w] == p) ++own_[w];
            }
            place(v + 1);
            for (int w : k_.neighbours(v)) {
                if (w < v && part_[w] == p) --own_[w];
            }
            part_[v] = 0;
            if (stopped_) return;
        }
    }

    const Graph& k_;
    int l_, max_own_;
    std::vector<int> part_, own_;
    const std::function<bool(const std::vector<int>&)>* leaf_ = nullptr;
    bool stopped_ = false;
};

bool has_monochromatic_triangle(const Graph& k, const std::vector<int>& part) {
    for (auto [a, b] : k.edges()) {
        if (part[a] != part[b]) continue;
        for (int c = 1; c <= k.n(); ++c) {
            if (c == a || c == b || part[c] != part[a]) continue;
            if (k.has_edge(a, c) && k.has_edge(b, c)) return true;
        }
    }
    return false;
}

void check_lemma_args(int l, const std::vector<int>& s, const ForbiddenCaps& caps,
                      const char* who) {
    if (l != static_cast<int>(s.size())) {
        throw std::invalid_argument(std::string(who) + ": l must equal the number of sizes");
    }
    MultipartitePattern pat(s);  // validates sortedness and positivity
    if (pat.total_vertices() > caps.max_pattern_vertices) {
        throw CapError(std::string(who) + ": pattern has " + std::to_string(pat.total_vertices()) +
                       " vertices, cap is " + std::to_string(caps.max_pattern_vertices));
    }
}

}  // namespace

bool verify_cycle_lemma(int l, const std::vector<int>& s, const ForbiddenCaps& caps) {
    check_lemma_args(l, s, caps, "verify_cycle_lemma");
    Graph k = MultipartitePattern(s).build_graph();
    AssignmentSearch search(k, l, s[0] - 1);
    // true iff every valid assignment leaves a monochromatic triangle
    return search.run([&](const std::vector<int>& part) {
        return has_monochromatic_triangle(k, part);
    });
}

bool inclusion_criterion(int l, const std::vector<int>& s) {
    if (l != static_cast<int>(s.size())) {
        throw std::invalid_argument("inclusion_criterion: l must equal the number of sizes");
    }
    MultipartitePattern pat(s);  // validates
    if (l == 1) return true;  // the apex alone always exceeds s_1 - 1 own-part neighbours
    return s[0] <= 2 || s[1] >= 2 * (s[0] - 1);
}

bool brute_inclusion_check(int l, const std::vector<int>& s, const ForbiddenCaps& caps) {
    check_lemma_args(l, s, caps, "brute_inclusion_check");
    Graph k = MultipartitePattern(s).build_graph();
    AssignmentSearch search(k, l, s[0] - 1);
    // run() returns false iff some valid assignment exists (leaf aborts)
    return search.run([](const std::vector<int>&) { return false; });
}

void enumerate_forb(int n, const MultipartitePattern& pat,
                    const std::function<void(const Graph&)>& sink, const census::CensusCaps& caps) {
    census::enumerate_class(
        n, [&](const Graph& g) { return !contains_multipartite(g, pat); }, sink, caps);
}

}  // namespace pld::forbidden
