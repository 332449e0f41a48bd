#pragma once

#include <cstdint>
#include <vector>

#include "pld/bigint.hpp"

namespace pld {

// Master seed plus a derivation path. Identical (seed, path) pairs yield
// identical streams on every platform and thread schedule, which is what the
// reproducibility contract of the samplers and campaigns rests on.
struct Seed {
    std::uint64_t master = 0;
    std::vector<std::uint64_t> path;

    Seed child(std::uint64_t index) const {
        Seed s = *this;
        s.path.push_back(index);
        return s;
    }
};

// xoshiro256** with a splitmix64-expanded state; self-contained so streams do
// not depend on any standard-library distribution implementation.
class Rng {
public:
    explicit Rng(const Seed& seed);

    std::uint64_t next_u64();

    // uniform on [0, bound), bound > 0; rejection sampling, no modulo bias
    std::uint64_t below(std::uint64_t bound);

    // uniform on [0, bound), bound > 0; exact, via rejection on bit blocks
    BigUint below_big(const BigUint& bound);

    // fair coin
    bool coin() { return (next_u64() >> 63) != 0; }

    double uniform01();  // 53-bit; diagnostics only, never exactness-critical

private:
    std::uint64_t s_[4];
};

}  // namespace pld
