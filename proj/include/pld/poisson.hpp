#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pld/graph.hpp"
#include "pld/partition.hpp"
#include "pld/xi.hpp"

namespace pld::poisson {

struct PoissonCaps {
    // small-object enumeration is a bounded DFS; branching is d^size, so the
    // size bound is tighter for d >= 3
    int max_object_size_low_d = 125;  // d <= 2
    int max_object_size_high_d = 8;   // d >= 3
    int max_np_vertices = 64;         // canonical certificate cap

    int max_object_size(int d) const {
        return d <= 2 ? max_object_size_low_d : max_object_size_high_d;
    }
};

// counts of small Poisson objects of G (max degree <= d required):
//   q          vertices of degree exactly d-2
//   cycles[j]  j-cycles, 3 <= j <= t (counted once per edge set)
//   paths[j]   j-edge paths whose endpoints have degree exactly d-1
struct SmallObjectCounts {
    int d = 0;
    int t = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> cycles;  // index j-3
    std::vector<std::uint64_t> paths;   // index j-1

    std::uint64_t cycle_count(int j) const { return cycles.at(j - 3); }
    std::uint64_t path_count(int j) const { return paths.at(j - 1); }
    friend bool operator==(const SmallObjectCounts&, const SmallObjectCounts&) = default;
    friend auto operator<=>(const SmallObjectCounts&, const SmallObjectCounts&) = default;
};

SmallObjectCounts count_small_objects(const Graph& g, int d, int t, const PoissonCaps& caps = {});

enum class ObjectKind { LowDegreeVertex, Cycle, Path };
// supports of every small object with size bound s_max
void enumerate_small_objects(const Graph& g, int d, int s_max,
                             const std::function<void(ObjectKind, const VertexSet&)>& sink,
                             const PoissonCaps& caps = {});

// NP(G, t): vertices within distance t of a small Poisson object, objects
// bounded by 5^k
VertexSet np_ball(const Graph& g, int d, int k, int t, const PoissonCaps& caps = {});

// ------------------------------------------------------------------- P^k

struct PropertyVerdict {
    bool ok = true;
    std::string witness;  // empty when ok
};

struct PkPartReport {
    // properties (1)..(7); (7) applies only when d >= 3
    std::array<PropertyVerdict, 7> property;
    bool all_ok(int d) const {
        for (int i = 0; i < (d >= 3 ? 7 : 6); ++i) {
            if (!property[i].ok) return false;
        }
        return true;
    }
};

struct PkReport {
    bool xi_ok = false;
    std::string xi_diagnostic;
    bool rich_ok = false;
    bool decomposition_ok = false;
    std::string decomposition_diagnostic;
    std::vector<PkPartReport> parts;
    int k = 0, s = 0, t = 0;
    double eps = 0, mu = 0;
    bool overall = false;
};

struct PkOptions {
    // property (2) evaluates sqrt((d±eps)·n') with n' = part size by default;
    // the whole-graph variant is kept behind this flag
    bool whole_graph_n = false;
};

PkReport pk_membership(const Graph& g, int l, int d, int k, double eps, double mu,
                       const PkOptions& opts = {}, const PoissonCaps& caps = {});

// ------------------------------------------------------- signatures

struct PoissonSignature {
    int l = 0, d = 0, k = 0, t = 0;
    std::vector<SmallObjectCounts> per_part;  // sorted lexicographically

    friend bool operator==(const PoissonSignature&, const PoissonSignature&) = default;
    // canonical JSON: sorted keys, counts as decimal strings
    std::string to_json() const;
};

struct SignatureFailure {
    std::string diagnostic;
};

std::variant<PoissonSignature, SignatureFailure> signature(const Graph& g, int l, int d, int k,
                                                           const PoissonCaps& caps = {});

struct PlusCertificate {
    std::string canonical_bytes;  // equality decides ≈_k^+ (within P^k)
    PoissonSignature sig;
    std::string to_json() const;
};

std::variant<PlusCertificate, SignatureFailure> signature_plus(const Graph& g, int l, int d, int k,
                                                               const PoissonCaps& caps = {});

// ------------------------------------------------------- limit masses

struct MeanValue {
    double value = 0;
    std::string provenance;  // "user-supplied" | "empirically-estimated"
};

struct PoissonParams {
    int d = 0;
    std::map<int, MeanValue> lambda;  // cycle means, keys 3..t
    std::map<int, MeanValue> mu;      // path means, keys 1..t
};

// product over parts of the Poisson masses at the signature's counts; the
// degree-(d-2) count converges to Poisson(d-1), so that mean is fixed here
double poisson_mass(const PoissonSignature& sig, const PoissonParams& params);

struct FitStats {
    double tv = 0;     // half L1 against the Poisson pmf, tail lumped
    double chisq = 0;  // Pearson statistic with right-tail pooling at E >= 5
    int chisq_bins = 0;
};

FitStats empirical_fit(const std::vector<std::uint64_t>& samples, double mean);

}  // namespace pld::poisson
