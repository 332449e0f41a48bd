#include "pld/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace pld::stats {

namespace {

// regularized lower incomplete gamma P(s, x) by series expansion (x < s+1)
double gamma_p_series(double s, double x) {
    double sum = 1.0 / s;
    double term = sum;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (s + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// regularized upper incomplete gamma Q(s, x) by continued fraction (x >= s+1)
double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double chi_square_pvalue(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_pvalue: dof must be positive");
    if (stat <= 0) return 1.0;
    double s = dof / 2.0;
    double x = stat / 2.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_cf(s, x);
}

double binomial_stderr(double p_hat, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("binomial_stderr: n must be positive");
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

double total_variation(const std::map<std::string, std::uint64_t>& observed,
                       const std::map<std::string, double>& exact, std::uint64_t n_observed) {
    if (n_observed == 0) throw std::invalid_argument("total_variation: no observations");
    double tv = 0;
    const double n = static_cast<double>(n_observed);
    for (const auto& [key, p] : exact) {
        auto it = observed.find(key);
        double emp = it == observed.end() ? 0.0 : static_cast<double>(it->second) / n;
        tv += std::abs(emp - p);
    }
    for (const auto& [key, cnt] : observed) {
        if (exact.find(key) == exact.end()) tv += static_cast<double>(cnt) / n;
    }
    return 0.5 * tv;
}

std::pair<double, int> pearson_statistic(const std::map<std::string, std::uint64_t>& observed,
                                         const std::map<std::string, double>& exact,
                                         std::uint64_t n_observed) {
    const double n = static_cast<double>(n_observed);
    double stat = 0;
    int cells = 0;
    for (const auto& [key, p] : exact) {
        if (p <= 0) continue;
        auto it = observed.find(key);
        double obs = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        double expd = p * n;
        stat += (obs - expd) * (obs - expd) / expd;
        ++cells;
    }
    return {stat, cells};
}

}  // namespace pld::stats
