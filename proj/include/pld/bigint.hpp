#pragma once

#include <gmp.h>

#include <cstdint>
#include <string>
#include <vector>

namespace pld {

// Arbitrary-precision unsigned integer, value semantics. Counting results and
// sampler weights grow like 2^Theta(n^2), so fixed-width arithmetic is never
// used on them.
class BigUint {
public:
    BigUint() { mpz_init(v_); }
    BigUint(std::uint64_t x) { mpz_init_set_ui(v_, x); }  // NOLINT(google-explicit-constructor)
    explicit BigUint(const std::string& decimal);
    BigUint(const BigUint& o) { mpz_init_set(v_, o.v_); }
    BigUint(BigUint&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    BigUint& operator=(const BigUint& o) {
        if (this != &o) mpz_set(v_, o.v_);
        return *this;
    }
    BigUint& operator=(BigUint&& o) noexcept {
        if (this != &o) mpz_swap(v_, o.v_);
        return *this;
    }
    ~BigUint() { mpz_clear(v_); }

    BigUint& operator+=(const BigUint& o) {
        mpz_add(v_, v_, o.v_);
        return *this;
    }
    BigUint& operator-=(const BigUint& o);  // requires *this >= o
    BigUint& operator*=(const BigUint& o) {
        mpz_mul(v_, v_, o.v_);
        return *this;
    }
    BigUint& mul_u64(std::uint64_t k) {
        mpz_mul_ui(v_, v_, k);
        return *this;
    }
    BigUint& add_u64(std::uint64_t k) {
        mpz_add_ui(v_, v_, k);
        return *this;
    }
    // exact division by a small factor (caller guarantees divisibility)
    BigUint& divexact_u64(std::uint64_t k);
    BigUint& shl(std::size_t bits) {
        mpz_mul_2exp(v_, v_, bits);
        return *this;
    }

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }

    int cmp(const BigUint& o) const { return mpz_cmp(v_, o.v_); }
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return a.cmp(b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return a.cmp(b) >= 0; }

    bool is_zero() const { return mpz_sgn(v_) == 0; }
    bool fits_u64() const { return mpz_fits_ulong_p(v_); }
    std::uint64_t to_u64() const;  // throws if too large
    std::size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(v_, 2); }
    double to_double() const { return mpz_get_d(v_); }

    std::string to_decimal() const;

    static BigUint pow2(std::size_t e) {
        BigUint r;
        mpz_setbit(r.v_, e);
        return r;
    }
    static BigUint binomial(std::uint64_t n, std::uint64_t k);
    static BigUint factorial(std::uint64_t n);
    // n! / (parts_1! ... parts_m!), parts must sum to n
    static BigUint multinomial(std::uint64_t n, const std::vector<int>& parts);

    // builds the value from big-endian bytes (used by exact uniform sampling)
    static BigUint from_bytes_be(const unsigned char* data, std::size_t len);

private:
    mpz_t v_;
};

}  // namespace pld
