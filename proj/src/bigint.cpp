#include "pld/bigint.hpp"

#include <stdexcept>

namespace pld {

BigUint::BigUint(const std::string& decimal) {
    if (mpz_init_set_str(v_, decimal.c_str(), 10) != 0 || mpz_sgn(v_) < 0) {
        mpz_clear(v_);
        throw std::invalid_argument("BigUint: bad decimal string: " + decimal);
    }
}

BigUint& BigUint::operator-=(const BigUint& o) {
    if (mpz_cmp(v_, o.v_) < 0) throw std::underflow_error("BigUint: subtraction underflow");
    mpz_sub(v_, v_, o.v_);
    return *this;
}

BigUint& BigUint::divexact_u64(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("BigUint: division by zero");
    if (mpz_divisible_ui_p(v_, k) == 0) throw std::logic_error("BigUint: divexact_u64 not exact");
    mpz_divexact_ui(v_, v_, k);
    return *this;
}

std::uint64_t BigUint::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint: value does not fit in 64 bits");
    return mpz_get_ui(v_);
}

std::string BigUint::to_decimal() const {
    char* s = mpz_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefn)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

BigUint BigUint::binomial(std::uint64_t n, std::uint64_t k) {
    BigUint r;
    if (k > n) return r;  // 0
    mpz_bin_uiui(r.v_, n, k);
    return r;
}

BigUint BigUint::factorial(std::uint64_t n) {
    BigUint r;
    mpz_fac_ui(r.v_, n);
    return r;
}

BigUint BigUint::multinomial(std::uint64_t n, const std::vector<int>& parts) {
    std::uint64_t sum = 0;
    BigUint r{1};
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        sum += static_cast<std::uint64_t>(p);
        r *= binomial(sum, static_cast<std::uint64_t>(p));
    }
    if (sum != n) throw std::invalid_argument("multinomial: parts do not sum to n");
    return r;
}

BigUint BigUint::from_bytes_be(const unsigned char* data, std::size_t len) {
    BigUint r;
    if (len > 0) mpz_import(r.v_, len, 1, 1, 1, 0, data);
    return r;
}

}  // namespace pld
