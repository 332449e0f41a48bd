#include "pld/rng.hpp"

#include <stdexcept>

namespace pld {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(const Seed& seed) {
    std::uint64_t x = seed.master;
    (void)splitmix64(x);
    for (std::uint64_t p : seed.path) {
        x ^= splitmix64(x) + 0x632be59bd9b4e019ULL * (p + 1);
    }
    for (auto& w : s_) w = splitmix64(x);
    // xoshiro must not start from the all-zero state
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound) - 1;
    for (;;) {
        std::uint64_t r = next_u64();
        if (r <= limit) return r % bound;
    }
}

BigUint Rng::below_big(const BigUint& bound) {
    if (bound.is_zero()) throw std::invalid_argument("Rng::below_big: zero bound");
    if (bound.fits_u64()) return BigUint{below(bound.to_u64())};
    const std::size_t bits = bound.bit_length();
    const std::size_t nbytes = (bits + 7) / 8;
    std::vector<unsigned char> buf(nbytes);
    const int spare = static_cast<int>(nbytes * 8 - bits);
    for (;;) {
        std::size_t i = 0;
        while (i < nbytes) {
            std::uint64_t w = next_u64();
            for (int b = 0; b < 8 && i < nbytes; ++b, ++i) {
                buf[i] = static_cast<unsigned char>(w >> (8 * b));
            }
        }
        buf[0] &= static_cast<unsigned char>(0xffu >> spare);
        BigUint r = BigUint::from_bytes_be(buf.data(), nbytes);
        if (r < bound) return r;
    }
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace pld
