#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "pld/bigint.hpp"
#include "pld/graph.hpp"
#include "pld/partition.hpp"
#include "pld/rng.hpp"

namespace pld::census {

struct CensusCaps {
    int max_m_low_d = 200;   // counting/sampling cap for d <= 3
    int max_m_high_d = 40;   // counting/sampling cap for d >= 4
    int enum_max_n = 8;      // exhaustive enumeration cap
    int max_l = 4;
    int max_n = 300;         // partitioned sampling cap
    std::size_t max_size_vectors = 2'000'000;
    std::size_t max_table_entries = 3'000'000;  // full-retention table gate

    int max_m(int d) const { return d <= 3 ? max_m_low_d : max_m_high_d; }
};

// Completion-count table of the vertex-addition DP for P_m(1,d). A state
// after i processed vertices is the census (c_0..c_d) of their residual
// capacities; the stored value is the number of ways to complete the
// remaining m-i vertices. Fully retained, so only built below the
// max_table_entries gate.
class CountTable {
public:
    CountTable(int m, int d, const CensusCaps& caps = {});

    int m() const { return m_; }
    int d() const { return d_; }

    // census must have d+1 entries (c_0..c_d) summing to step
    const BigUint& completions(int step, const std::vector<int>& census) const;
    // completion count of the empty initial state; equals |P_m(1,d)|
    const BigUint& at_start() const;

    // internal layer access for the sampler (keys pack c_1..c_d)
    const std::unordered_map<std::uint64_t, BigUint>& layer(int step) const { return layers_[step]; }

private:
    int m_, d_;
    std::vector<std::unordered_map<std::uint64_t, BigUint>> layers_;
};

// |P_m(1,d)|: labelled graphs on [m] with maximum degree <= d
BigUint count_bounded_degree(int m, int d, const CensusCaps& caps = {});
// all of |P_i(1,d)| for i = 0..m in one forward pass
std::vector<BigUint> count_bounded_degree_upto(int m, int d, const CensusCaps& caps = {});

// exactly uniform over P_m(1,d)
Graph sample_bounded_degree(int m, int d, const Seed& seed, const CensusCaps& caps = {});
// lockstep batch: one backward sweep of the DP shared by all draws
std::vector<Graph> sample_bounded_degree_batch(int m, int d, const std::vector<Seed>& seeds,
                                               const CensusCaps& caps = {});

// |P_{n,pi}(l,d)| for any pi with the given part sizes:
// 2^{sum_{i<j} n_i n_j} * prod_i |P_{n_i}(1,d)|
BigUint partition_class_count(const std::vector<int>& sizes, int d, const CensusCaps& caps = {});

// multinomial(n; sizes) * partition_class_count(sizes, d): total weight of
// ordered partitions with these sizes in the (pi, G) pair universe
BigUint size_vector_weight(const std::vector<int>& sizes, int d, const CensusCaps& caps = {});

struct PartitionedSample {
    Graph graph;
    decomp::Partition partition;  // OrderedAny construction partition
};

// Uniform sampling over {(pi, G)} pairs and, via rejection with exact
// 1/count acceptance, over P_n(l,d) itself. Weight tables and per-size part
// samplers are cached, so one instance serves many draws.
class PldSampler {
public:
    PldSampler(int n, int l, int d, const CensusCaps& caps = {});

    PartitionedSample sample_partitioned(const Seed& seed) const;

    struct UniformDraw {
        Graph graph;
        decomp::Partition partition;    // the accepted construction partition
        BigUint decomposition_count;    // ordered-any count of the accepted graph
        int rejected_attempts;
    };
    UniformDraw sample_uniform(const Seed& seed) const;

    const BigUint& total_weight() const { return total_weight_; }
    const std::vector<std::vector<int>>& size_vectors() const { return sizes_; }
    const std::vector<BigUint>& weights() const { return weights_; }

private:
    Graph sample_part_graph(int m, const Seed& seed) const;

    int n_, l_, d_;
    CensusCaps caps_;
    std::vector<std::vector<int>> sizes_;
    std::vector<BigUint> weights_;
    std::vector<BigUint> cumulative_;
    BigUint total_weight_;
    mutable std::mutex tables_mutex_;
    mutable std::map<int, std::shared_ptr<const CountTable>> part_tables_;
};

PartitionedSample sample_partitioned(int n, int l, int d, const Seed& seed,
                                     const CensusCaps& caps = {});
Graph sample_uniform_pld(int n, int l, int d, const Seed& seed, const CensusCaps& caps = {});

// all labelled graphs on [n] passing pred, in lexicographic edge-set order
// (edges ordered (1,2) < (1,3) < ... < (n-1,n); masks ascending)
void enumerate_class(int n, const std::function<bool(const Graph&)>& pred,
                     const std::function<void(const Graph&)>& sink, const CensusCaps& caps = {});
std::vector<Graph> enumerate_class_vec(int n, const std::function<bool(const Graph&)>& pred,
                                       const CensusCaps& caps = {});

// versioned textual cache of |P_m(1,d)| counts keyed by (m,d); unknown or
// mismatched versions are rejected
std::map<std::pair<int, int>, BigUint> load_count_cache(const std::string& path);
void save_count_cache(const std::string& path, const std::map<std::pair<int, int>, BigUint>& cache);

// symmetric single-edge-toggle Metropolis chain on P_n(1,d), empty start;
// returns the state after `steps` proposals
Graph mcmc_toggle_chain(int n, int d, std::uint64_t steps, const Seed& seed);
// observes `samples` states: burn-in, then every `thin` proposals
void mcmc_toggle_run(int n, int d, std::uint64_t burnin, std::uint64_t samples, std::uint64_t thin,
                     const Seed& seed, const std::function<void(const Graph&)>& sink);

}  // namespace pld::census
