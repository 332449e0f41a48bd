#include "pld/census.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "pld/errors.hpp"

namespace pld::census {

namespace {

using Layer = std::unordered_map<std::uint64_t, BigUint>;

// states pack the residual census c_1..c_d into 12-bit fields; c_0 is implied
// by the step index and never affects completions
std::uint64_t pack(const std::vector<int>& c) {
    std::uint64_t k = 0;
    for (std::size_t r = 0; r < c.size(); ++r) {
        k |= static_cast<std::uint64_t>(c[r]) << (12 * r);
    }
    return k;
}

std::uint64_t binom_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int j = 1; j <= k; ++j) {
        r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    }
    return r;
}

// all back-edge profiles (k_1..k_d) with sum <= d, in lexicographic order
std::vector<std::vector<int>> make_profiles(int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(std::max(d, 0)), 0);
    std::function<void(int, int)> gen = [&](int r, int left) {
        if (r == d) {
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[r] = k;
            gen(r + 1, left - k);
        }
        cur[r] = 0;
    };
    if (d == 0) {
        out.push_back({});
    } else {
        gen(0, d);
    }
    return out;
}

// census after adding one vertex with back-edge profile k: chosen vertices in
// class r move to r-1, the new vertex enters class d - sum(k)
std::vector<int> apply_profile(const std::vector<int>& c, const std::vector<int>& k, int d) {
    std::vector<int> out = c;
    int total = 0;
    for (int r = 1; r <= d; ++r) {
        out[r - 1] -= k[r - 1];
        if (r - 1 >= 1) out[r - 2] += k[r - 1];
        total += k[r - 1];
    }
    int r0 = d - total;
    if (r0 >= 1) out[r0 - 1] += 1;
    return out;
}

void enumerate_domain(int d, int max_sum, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> c(static_cast<std::size_t>(std::max(d, 0)), 0);
    std::function<void(int, int)> gen = [&](int r, int left) {
        if (r == d) {
            fn(c);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[r] = v;
            gen(r + 1, left - v);
        }
        c[r] = 0;
    };
    if (d == 0) {
        fn(c);
    } else {
        gen(0, max_sum);
    }
}

// completions over the full domain {sum c <= i} from the layer at i+1
Layer backward_step(int d, const std::vector<std::vector<int>>& profiles, const Layer& next, int i) {
    Layer out;
    out.reserve(static_cast<std::size_t>(binom_u64(i + d, d)) + 1);
    enumerate_domain(d, i, [&](const std::vector<int>& c) {
        BigUint total;
        for (const auto& k : profiles) {
            std::uint64_t mult = 1;
            bool ok = true;
            for (int r = 1; r <= d; ++r) {
                if (k[r - 1] > c[r - 1]) {
                    ok = false;
                    break;
                }
                mult *= binom_u64(c[r - 1], k[r - 1]);
            }
            if (!ok) continue;
            auto it = next.find(pack(apply_profile(c, k, d)));
            if (it == next.end()) throw std::logic_error("census: missing DP state");
            BigUint term = it->second;
            term.mul_u64(mult);
            total += term;
        }
        out.emplace(pack(c), std::move(total));
    });
    return out;
}

Layer ones_layer(int d, int i) {
    Layer out;
    out.reserve(static_cast<std::size_t>(binom_u64(i + d, d)) + 1);
    enumerate_domain(d, i, [&](const std::vector<int>& c) { out.emplace(pack(c), BigUint{1}); });
    return out;
}

std::size_t retained_entries(int m, int d) {
    // sum_{i<=m} C(i+d, d) = C(m+d+1, d+1)
    long double v = 1;
    for (int j = 1; j <= d + 1; ++j) v = v * (m + j) / j;
    return v > 1e18L ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(v);
}

void check_m_cap(int m, int d, const CensusCaps& caps, const char* who) {
    if (m < 0) throw std::invalid_argument(std::string(who) + ": negative m");
    if (d < 0) throw std::invalid_argument(std::string(who) + ": negative d");
    if (m > caps.max_m(d)) {
        throw CapError(std::string(who) + ": m=" + std::to_string(m) + " exceeds cap " +
                       std::to_string(caps.max_m(d)) + " for d=" + std::to_string(d));
    }
    if (m > 4000) throw CapError(std::string(who) + ": m exceeds hard state-packing limit");
}

}  // namespace

// ------------------------------------------------------------- CountTable

CountTable::CountTable(int m, int d, const CensusCaps& caps) : m_(m), d_(d) {
    check_m_cap(m, d, caps, "CountTable");
    if (retained_entries(m, d) > caps.max_table_entries) {
        throw CapError("CountTable: full retention would exceed max_table_entries");
    }
    auto profiles = make_profiles(d);
    layers_.resize(m + 1);
    layers_[m] = ones_layer(d, m);
    for (int i = m - 1; i >= 0; --i) {
        layers_[i] = backward_step(d, profiles, layers_[i + 1], i);
    }
}

const BigUint& CountTable::completions(int step, const std::vector<int>& census) const {
    if (step < 0 || step > m_) throw std::out_of_range("CountTable: bad step");
    if (static_cast<int>(census.size()) != d_ + 1) {
        throw std::invalid_argument("CountTable: census must list c_0..c_d");
    }
    int sum = 0;
    for (int c : census) {
        if (c < 0) throw std::invalid_argument("CountTable: negative census entry");
        sum += c;
    }
    if (sum != step) throw std::invalid_argument("CountTable: census does not sum to step");
    std::vector<int> tail(census.begin() + 1, census.end());
    auto it = layers_[step].find(pack(tail));
    if (it == layers_[step].end()) throw std::out_of_range("CountTable: state outside domain");
    return it->second;
}

const BigUint& CountTable::at_start() const {
    std::vector<int> zeros(d_, 0);
    return layers_[0].at(pack(zeros));
}

// ------------------------------------------------------------- counting

std::vector<BigUint> count_bounded_degree_upto(int m, int d, const CensusCaps& caps) {
    check_m_cap(m, d, caps, "count_bounded_degree");
    auto profiles = make_profiles(d);
    std::vector<BigUint> out(m + 1);
    Layer cur;
    cur.emplace(pack(std::vector<int>(d, 0)), BigUint{1});
    out[0] = BigUint{1};
    std::vector<int> c(d, 0);
    for (int i = 0; i < m; ++i) {
        Layer next;
        next.reserve(cur.size() * 2 + 16);
        for (const auto& [key, val] : cur) {
            for (int r = 0; r < d; ++r) c[r] = static_cast<int>((key >> (12 * r)) & 0xfff);
            for (const auto& k : profiles) {
                std::uint64_t mult = 1;
                bool ok = true;
                for (int r = 1; r <= d; ++r) {
                    if (k[r - 1] > c[r - 1]) {
                        ok = false;
                        break;
                    }
                    mult *= binom_u64(c[r - 1], k[r - 1]);
                }
                if (!ok) continue;
                BigUint term = val;
                term.mul_u64(mult);
                next[pack(apply_profile(c, k, d))] += term;
            }
        }
        cur = std::move(next);
        BigUint total;
        for (const auto& [key, val] : cur) total += val;
        out[i + 1] = std::move(total);
    }
    return out;
}

BigUint count_bounded_degree(int m, int d, const CensusCaps& caps) {
    return count_bounded_degree_upto(m, d, caps).back();
}

// ------------------------------------------------------------- sampling

namespace {

// per-sample forward walk through the DP
struct Walk {
    std::vector<int> c;                     // residual census c_1..c_d
    std::vector<std::vector<int>> members;  // vertices per residual class 1..d
    std::vector<std::pair<int, int>> edges;
    Rng rng;

    Walk(int d, const Seed& seed) : c(d, 0), members(d + 1), rng(seed) {}

    // choose the profile for vertex t+1 given the completion layer at t+1
    void step(int d, const std::vector<std::vector<int>>& profiles, const Layer& next_layer, int t) {
        std::vector<std::pair<const std::vector<int>*, BigUint>> weights;
        BigUint total;
        for (const auto& k : profiles) {
            std::uint64_t mult = 1;
            bool ok = true;
            for (int r = 1; r <= d; ++r) {
                if (k[r - 1] > c[r - 1]) {
                    ok = false;
                    break;
                }
                mult *= binom_u64(c[r - 1], k[r - 1]);
            }
            if (!ok) continue;
            auto it = next_layer.find(pack(apply_profile(c, k, d)));
            if (it == next_layer.end()) throw std::logic_error("census: missing sampling state");
            BigUint w = it->second;
            w.mul_u64(mult);
            total += w;
            weights.emplace_back(&k, std::move(w));
        }
        BigUint u = rng.below_big(total);
        const std::vector<int>* chosen = nullptr;
        for (auto& [k, w] : weights) {
            if (u < w) {
                chosen = k;
                break;
            }
            u -= w;
        }
        if (chosen == nullptr) throw std::logic_error("census: profile selection fell through");

        const int v_new = t + 1;
        int total_k = 0;
        for (int r = 1; r <= d; ++r) {
            int kr = (*chosen)[r - 1];
            total_k += kr;
            for (int j = 0; j < kr; ++j) {
                auto& vec = members[r];
                std::uint64_t idx = rng.below(vec.size());
                int w = vec[static_cast<std::size_t>(idx)];
                vec.erase(vec.begin() + static_cast<std::ptrdiff_t>(idx));
                if (r - 1 >= 1) members[r - 1].push_back(w);
                edges.emplace_back(w, v_new);
            }
            c[r - 1] -= kr;
            if (r - 1 >= 1) c[r - 2] += kr;
        }
        int r0 = d - total_k;
        if (r0 >= 1) {
            members[r0].push_back(v_new);
            c[r0 - 1] += 1;
        }
    }
};

std::vector<Graph> batch_sample(int m, int d, const std::vector<Seed>& seeds,
                                const CensusCaps& caps) {
    check_m_cap(m, d, caps, "sample_bounded_degree");
    auto profiles = make_profiles(d);
    std::vector<Walk> walks;
    walks.reserve(seeds.size());
    for (const auto& s : seeds) walks.emplace_back(d, s);

    if (m > 0) {
        if (retained_entries(m, d) <= caps.max_table_entries) {
            CountTable table(m, d, caps);
            for (int t = 0; t < m; ++t) {
                const Layer& next_layer = table.layer(t + 1);
                for (auto& w : walks) w.step(d, profiles, next_layer, t);
            }
        } else {
            // completion layers are rebuilt from sparse checkpoints so the
            // full table never lives in memory at once
            const int stride = std::clamp(m / 24, 1, 32);
            std::map<int, Layer> checkpoints;
            {
                Layer cur = ones_layer(d, m);
                checkpoints.emplace(m, cur);
                for (int i = m - 1; i >= 1; --i) {
                    cur = backward_step(d, profiles, cur, i);
                    if (i % stride == 0) checkpoints.emplace(i, cur);
                }
            }
            std::vector<Layer> segment;  // layers lo..hi, ascending
            int seg_lo = 0, seg_hi = -1;
            for (int t = 0; t < m; ++t) {
                const int want = t + 1;
                if (want > seg_hi) {
                    auto it = checkpoints.lower_bound(want);
                    if (it == checkpoints.end()) throw std::logic_error("census: missing checkpoint");
                    seg_hi = it->first;
                    seg_lo = want;
                    segment.assign(static_cast<std::size_t>(seg_hi - seg_lo + 1), Layer{});
                    segment[static_cast<std::size_t>(seg_hi - seg_lo)] = it->second;
                    for (int i = seg_hi - 1; i >= seg_lo; --i) {
                        segment[static_cast<std::size_t>(i - seg_lo)] =
                            backward_step(d, profiles, segment[static_cast<std::size_t>(i + 1 - seg_lo)], i);
                    }
                }
                const Layer& next_layer = segment[static_cast<std::size_t>(want - seg_lo)];
                for (auto& w : walks) w.step(d, profiles, next_layer, t);
            }
        }
    }

    std::vector<Graph> out;
    out.reserve(walks.size());
    for (auto& w : walks) out.emplace_back(m, std::move(w.edges));
    return out;
}

}  // namespace

Graph sample_bounded_degree(int m, int d, const Seed& seed, const CensusCaps& caps) {
    return batch_sample(m, d, {seed}, caps)[0];
}

std::vector<Graph> sample_bounded_degree_batch(int m, int d, const std::vector<Seed>& seeds,
                                               const CensusCaps& caps) {
    return batch_sample(m, d, seeds, caps);
}

// ------------------------------------------------- partitioned counting

BigUint partition_class_count(const std::vector<int>& sizes, int d, const CensusCaps& caps) {
    long long cross2 = 0;
    long long sum = 0, sumsq = 0;
    for (int s : sizes) {
        if (s < 0) throw std::invalid_argument("partition_class_count: negative size");
        sum += s;
        sumsq += static_cast<long long>(s) * s;
    }
    cross2 = sum * sum - sumsq;  // 2 * number of cross pairs
    BigUint out = BigUint::pow2(static_cast<std::size_t>(cross2 / 2));
    for (int s : sizes) out *= count_bounded_degree(s, d, caps);
    return out;
}

BigUint size_vector_weight(const std::vector<int>& sizes, int d, const CensusCaps& caps) {
    long long n = std::accumulate(sizes.begin(), sizes.end(), 0LL);
    return BigUint::multinomial(static_cast<std::uint64_t>(n), sizes) *
           partition_class_count(sizes, d, caps);
}

// ------------------------------------------------------------ PldSampler

PldSampler::PldSampler(int n, int l, int d, const CensusCaps& caps)
    : n_(n), l_(l), d_(d), caps_(caps) {
    if (n < 1) throw std::invalid_argument("PldSampler: n must be >= 1");
    if (l < 1) throw std::invalid_argument("PldSampler: l must be >= 1");
    if (d < 0) throw std::invalid_argument("PldSampler: d must be >= 0");
    if (l > caps.max_l) throw CapError("PldSampler: l exceeds cap " + std::to_string(caps.max_l));
    if (n > caps.max_n) throw CapError("PldSampler: n exceeds cap " + std::to_string(caps.max_n));
    check_m_cap(n, d, caps, "PldSampler");

    auto counts = count_bounded_degree_upto(n, d, caps);

    // ordered size vectors (compositions of n into l parts, zeros allowed)
    std::vector<int> cur(l, 0);
    std::function<void(int, int)> gen = [&](int idx, int left) {
        if (idx == l - 1) {
            cur[idx] = left;
            sizes_.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[idx] = v;
            gen(idx + 1, left - v);
        }
    };
    gen(0, n);
    if (sizes_.size() > caps.max_size_vectors) {
        throw CapError("PldSampler: too many size vectors");
    }

    weights_.reserve(sizes_.size());
    cumulative_.reserve(sizes_.size());
    for (const auto& sz : sizes_) {
        long long sumsq = 0;
        for (int s : sz) sumsq += static_cast<long long>(s) * s;
        BigUint w = BigUint::multinomial(static_cast<std::uint64_t>(n), sz) *
                    BigUint::pow2(static_cast<std::size_t>((static_cast<long long>(n) * n - sumsq) / 2));
        for (int s : sz) w *= counts[s];
        total_weight_ += w;
        weights_.push_back(std::move(w));
        cumulative_.push_back(total_weight_);
    }
}

Graph PldSampler::sample_part_graph(int m, const Seed& seed) const {
    if (retained_entries(m, d_) <= caps_.max_table_entries) {
        std::shared_ptr<const CountTable> table;
        {
            std::lock_guard<std::mutex> lk(tables_mutex_);
            auto it = part_tables_.find(m);
            if (it == part_tables_.end()) {
                it = part_tables_.emplace(m, std::make_shared<CountTable>(m, d_, caps_)).first;
            }
            table = it->second;
        }
        auto profiles = make_profiles(d_);
        Walk w(d_, seed);
        for (int t = 0; t < m; ++t) w.step(d_, profiles, table->layer(t + 1), t);
        return Graph(m, std::move(w.edges));
    }
    return sample_bounded_degree(m, d_, seed, caps_);
}

PartitionedSample PldSampler::sample_partitioned(const Seed& seed) const {
    Rng rng(seed.child(0));
    // size vector proportional to weight
    BigUint u = rng.below_big(total_weight_);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto& sz = sizes_[static_cast<std::size_t>(it - cumulative_.begin())];

    // uniform arrangement of labels into parts with these sizes
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = n_ - 1; i >= 1; --i) {
        std::uint64_t j = rng.below(static_cast<std::uint64_t>(i) + 1);
        std::swap(perm[i], perm[j]);
    }
    std::vector<int> assign(n_, 0);
    std::vector<std::vector<int>> part_labels(l_);
    int pos = 0;
    for (int p = 1; p <= l_; ++p) {
        for (int j = 0; j < sz[p - 1]; ++j) {
            assign[perm[pos] - 1] = p;
            part_labels[p - 1].push_back(perm[pos]);
            ++pos;
        }
        std::sort(part_labels[p - 1].begin(), part_labels[p - 1].end());
    }

    std::vector<std::pair<int, int>> edges;
    // each cross pair independently with probability 1/2
    for (int u2 = 1; u2 <= n_; ++u2) {
        for (int v2 = u2 + 1; v2 <= n_; ++v2) {
            if (assign[u2 - 1] != assign[v2 - 1] && rng.coin()) edges.emplace_back(u2, v2);
        }
    }
    // own-part graphs via the bounded-degree sampler
    for (int p = 1; p <= l_; ++p) {
        int mp = sz[p - 1];
        if (mp == 0) continue;
        Graph gp = sample_part_graph(mp, seed.child(p));
        for (auto [a, b] : gp.edges()) {
            edges.emplace_back(part_labels[p - 1][a - 1], part_labels[p - 1][b - 1]);
        }
    }
    return PartitionedSample{Graph(n_, std::move(edges)),
                             decomp::Partition(l_, std::move(assign), decomp::PartitionMode::OrderedAny)};
}

PldSampler::UniformDraw PldSampler::sample_uniform(const Seed& seed) const {
    constexpr int kMaxAttempts = 1'000'000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Seed s = seed.child(static_cast<std::uint64_t>(attempt));
        PartitionedSample ps = sample_partitioned(s.child(0));
        BigUint dcount = decomp::count_decompositions(ps.graph, l_, d_, decomp::PartitionMode::OrderedAny);
        if (dcount.is_zero()) throw std::logic_error("sample_uniform: constructed graph not in class");
        bool accept = true;
        if (!(dcount == BigUint{1})) {
            Rng acc_rng(s.child(1));
            accept = acc_rng.below_big(dcount).is_zero();
        }
        if (accept) {
            return UniformDraw{std::move(ps.graph), std::move(ps.partition), std::move(dcount), attempt};
        }
    }
    throw std::runtime_error("sample_uniform: rejection loop exceeded attempt limit");
}

PartitionedSample sample_partitioned(int n, int l, int d, const Seed& seed, const CensusCaps& caps) {
    return PldSampler(n, l, d, caps).sample_partitioned(seed);
}

Graph sample_uniform_pld(int n, int l, int d, const Seed& seed, const CensusCaps& caps) {
    if (l == 1) {
        // single trivial partition: the rejection step always accepts
        return sample_bounded_degree(n, d, seed.child(0).child(0).child(1), caps);
    }
    return PldSampler(n, l, d, caps).sample_uniform(seed).graph;
}

// ------------------------------------------------------------ enumeration

void enumerate_class(int n, const std::function<bool(const Graph&)>& pred,
                     const std::function<void(const Graph&)>& sink, const CensusCaps& caps) {
    if (n < 0) throw std::invalid_argument("enumerate_class: negative n");
    if (n > caps.enum_max_n) {
        throw CapError("enumerate_class: n exceeds cap " + std::to_string(caps.enum_max_n));
    }
    std::vector<std::pair<int, int>> pair_order;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) pair_order.emplace_back(u, v);
    }
    const std::uint64_t total = 1ULL << pair_order.size();
    std::vector<std::pair<int, int>> edges;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        edges.clear();
        for (std::size_t j = 0; j < pair_order.size(); ++j) {
            if ((mask >> j) & 1u) edges.push_back(pair_order[j]);
        }
        Graph g(n, edges);
        if (pred(g)) sink(g);
    }
}

std::vector<Graph> enumerate_class_vec(int n, const std::function<bool(const Graph&)>& pred,
                                       const CensusCaps& caps) {
    std::vector<Graph> out;
    enumerate_class(n, pred, [&](const Graph& g) { out.push_back(g); }, caps);
    return out;
}

// ------------------------------------------------------------- count cache

namespace {
constexpr int kCacheVersion = 1;
}

std::map<std::pair<int, int>, BigUint> load_count_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open count cache: " + path);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "pld-count-cache" || version != kCacheVersion) {
        throw std::runtime_error("count cache: bad header or version in " + path);
    }
    std::map<std::pair<int, int>, BigUint> out;
    int m = 0, d = 0;
    std::string value;
    while (in >> m >> d >> value) out.emplace(std::make_pair(m, d), BigUint(value));
    return out;
}

void save_count_cache(const std::string& path, const std::map<std::pair<int, int>, BigUint>& cache) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write count cache: " + path);
    out << "pld-count-cache " << kCacheVersion << "\n";
    for (const auto& [key, count] : cache) {
        out << key.first << " " << key.second << " " << count.to_decimal() << "\n";
    }
}

// ------------------------------------------------------------------ MCMC

namespace {

class ToggleChain {
public:
    ToggleChain(int n, int d, const Seed& seed) : n_(n), d_(d), rng_(seed), adj_(n * n, 0),
                                                  deg_(n, 0) {
        if (n < 1) throw std::invalid_argument("mcmc_toggle_chain: n must be >= 1");
        if (d < 0) throw std::invalid_argument("mcmc_toggle_chain: d must be >= 0");
        for (int u = 1; u <= n; ++u) {
            for (int v = u + 1; v <= n; ++v) pairs_.emplace_back(u, v);
        }
    }

    void step() {
        if (pairs_.empty()) return;
        auto [u, v] = pairs_[rng_.below(pairs_.size())];
        if (at(u, v)) {
            set(u, v, false);
            --deg_[u - 1];
            --deg_[v - 1];
        } else if (deg_[u - 1] < d_ && deg_[v - 1] < d_) {
            set(u, v, true);
            ++deg_[u - 1];
            ++deg_[v - 1];
        }
        // otherwise stay: the proposal leaves the class
    }

    Graph snapshot() const {
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : pairs_) {
            if (at(u, v)) edges.emplace_back(u, v);
        }
        return Graph(n_, std::move(edges));
    }

private:
    bool at(int u, int v) const { return adj_[(u - 1) * n_ + (v - 1)] != 0; }
    void set(int u, int v, bool b) {
        adj_[(u - 1) * n_ + (v - 1)] = b ? 1 : 0;
        adj_[(v - 1) * n_ + (u - 1)] = b ? 1 : 0;
    }

    int n_, d_;
    Rng rng_;
    std::vector<char> adj_;
    std::vector<int> deg_;
    std::vector<std::pair<int, int>> pairs_;
};

}  // namespace

Graph mcmc_toggle_chain(int n, int d, std::uint64_t steps, const Seed& seed) {
    ToggleChain chain(n, d, seed);
    for (std::uint64_t i = 0; i < steps; ++i) chain.step();
    return chain.snapshot();
}

void mcmc_toggle_run(int n, int d, std::uint64_t burnin, std::uint64_t samples, std::uint64_t thin,
                     const Seed& seed, const std::function<void(const Graph&)>& sink) {
    ToggleChain chain(n, d, seed);
    for (std::uint64_t i = 0; i < burnin; ++i) chain.step();
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::uint64_t i = 0; i < thin; ++i) chain.step();
        sink(chain.snapshot());
    }
}

}  // namespace pld::census
