#include "pld/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace pld::decomp {

Partition::Partition(int l, std::vector<int> assign, PartitionMode mode)
    : l_(l), assign_(std::move(assign)), mode_(mode) {
    if (l_ < 1) throw std::invalid_argument("Partition: part count must be >= 1");
    std::vector<char> seen(l_ + 1, 0);
    for (int p : assign_) {
        if (p < 1 || p > l_) throw std::invalid_argument("Partition: part index out of range");
        seen[p] = 1;
    }
    if (mode_ != PartitionMode::OrderedAny) {
        for (int p = 1; p <= l_; ++p) {
            if (!seen[p]) throw std::invalid_argument("Partition: empty part in nonempty mode");
        }
    }
    if (mode_ == PartitionMode::UnorderedNonempty) {
        // canonical labels: part containing the smallest unseen vertex first
        std::vector<int> relabel(l_ + 1, 0);
        int next = 0;
        for (int p : assign_) {
            if (relabel[p] == 0) relabel[p] = ++next;
        }
        for (int& p : assign_) p = relabel[p];
    }
}

std::vector<VertexSet> Partition::parts() const {
    std::vector<VertexSet> out(l_);
    for (int v = 1; v <= n(); ++v) out[assign_[v - 1] - 1].push_back(v);
    return out;
}

std::vector<int> Partition::part_sizes() const {
    std::vector<int> out(l_, 0);
    for (int p : assign_) ++out[p - 1];
    return out;
}

Partition Partition::canonical_unordered() const {
    return Partition(l_, assign_, PartitionMode::UnorderedNonempty);
}

bool is_rich(const Partition& p, double alpha) {
    for (int s : p.part_sizes()) {
        if (static_cast<double>(s) < alpha) return false;
    }
    return true;
}

std::variant<Decomposition, DecompositionFailure> decomposition_from_partition(const Graph& g,
                                                                               const Partition& pi,
                                                                               int d) {
    if (pi.n() != g.n()) throw std::invalid_argument("decomposition: partition size mismatch");
    std::vector<int> own_deg(g.n() + 1, 0);
    std::vector<std::pair<int, int>> cross, own;
    for (auto [u, v] : g.edges()) {
        if (pi.part_of(u) == pi.part_of(v)) {
            own.emplace_back(u, v);
            ++own_deg[u];
            ++own_deg[v];
        } else {
            cross.emplace_back(u, v);
        }
    }
    for (int v = 1; v <= g.n(); ++v) {
        if (own_deg[v] > d) return DecompositionFailure{v, own_deg[v]};
    }
    return Decomposition{pi, std::move(cross), std::move(own)};
}

namespace {

// counts assignments [n] -> [l] whose own-part degrees stay <= d
class DecompCounter {
public:
    DecompCounter(const Graph& g, int l, int d) : g_(g), l_(l), d_(d), part_(g.n() + 1, 0),
                                                  own_(g.n() + 1, 0) {}

    BigUint run() {
        count_ = 0;
        place(1);
        return count_;
    }

private:
    void place(int v) {
        if (v > g_.n()) {
            count_.add_u64(1);
            return;
        }
        for (int p = 1; p <= l_; ++p) {
            int gained = 0;
            bool ok = true;
            for (int w : g_.neighbours(v)) {
                if (w < v && part_[w] == p) {
                    ++gained;
                    if (own_[w] + 1 > d_ || gained > d_) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            part_[v] = p;
            own_[v] = gained;
            for (int w : g_.neighbours(v)) {
                if (w < v && part_[w] == p) ++own_[w];
            }
            place(v + 1);
            for (int w : g_.neighbours(v)) {
                if (w < v && part_[w] == p) --own_[w];
            }
            part_[v] = 0;
        }
    }

    const Graph& g_;
    int l_, d_;
    std::vector<int> part_, own_;
    BigUint count_;
};

}  // namespace

BigUint count_decompositions(const Graph& g, int l, int d, PartitionMode mode) {
    if (l < 1) throw std::invalid_argument("count_decompositions: l must be >= 1");
    if (d < 0) throw std::invalid_argument("count_decompositions: d must be >= 0");
    if (mode == PartitionMode::OrderedAny) {
        return DecompCounter(g, l, d).run();
    }
    // surjective (all parts nonempty) counts by inclusion-exclusion over the
    // set of part labels actually used
    BigUint plus, minus;
    for (int j = l; j >= 0; --j) {
        BigUint aj = (j == 0) ? BigUint{g.n() == 0 ? 1u : 0u} : DecompCounter(g, j, d).run();
        BigUint term = BigUint::binomial(l, j) * aj;
        if ((l - j) % 2 == 0) {
            plus += term;
        } else {
            minus += term;
        }
    }
    BigUint total = plus - minus;
    if (mode == PartitionMode::UnorderedNonempty) {
        std::uint64_t lf = 1;
        for (int i = 2; i <= l; ++i) lf *= static_cast<std::uint64_t>(i);
        total.divexact_u64(lf);
    }
    return total;
}

}  // namespace pld::decomp
