#pragma once

#include <variant>

#include "pld/formula.hpp"
#include "pld/partition.hpp"

namespace pld::logic {

// Parameters of the part-defining formula xi(x,y): with m = (l+1)d + 1, the
// formula asks for (l-1)m common neighbours of x and y arranged in l-1 blocks
// of size m with complete adjacency between distinct blocks.
struct XiParams {
    int l;
    int d;

    XiParams(int l_, int d_) : l(l_), d(d_) {
        if (l < 1) throw std::invalid_argument("XiParams: l must be >= 1");
        if (d < 0) throw std::invalid_argument("XiParams: d must be >= 0");
    }
    int m() const { return (l + 1) * d + 1; }
    int q() const { return 2 + l * m(); }
};

// The formula itself, with free variables x and y and bound z1..z{(l-1)m};
// requires l >= 2.
FormulaPtr build_xi(int l, int d);

// Decides G |= xi(u,v) by backtracking over blocks inside the common
// neighbourhood of u and v; agrees with evaluate(build_xi(l,d)) everywhere.
// For l = 1 the quantifier block is empty and the formula is true.
bool eval_xi_fast(const Graph& g, const XiParams& p, int u, int v);

struct XiFailure {
    enum class Reason { NotTransitive, ClassCountMismatch };
    Reason reason;
    // NotTransitive: related pairs (a,b), (b,c) with (a,c) unrelated
    int a = 0, b = 0, c = 0;
    int found_classes = 0;  // ClassCountMismatch
    std::string to_string() const;
};

// Computes the relation R(u,v) <=> G |= xi(u,v) for u != v, closes it
// reflexively and succeeds iff R is an equivalence with exactly l classes.
std::variant<decomp::Partition, XiFailure> xi_partition(const Graph& g, const XiParams& p);

}  // namespace pld::logic
