#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pld::stats {

// upper tail P(X >= stat) for X ~ chi-square with dof degrees of freedom
double chi_square_pvalue(double stat, int dof);

// standard error of a binomial proportion estimate
double binomial_stderr(double p_hat, std::uint64_t n);

// half L1 distance between an empirical frequency table and exact
// probabilities over the same keys (missing keys count as zero)
double total_variation(const std::map<std::string, std::uint64_t>& observed,
                       const std::map<std::string, double>& exact, std::uint64_t n_observed);

// Pearson statistic of observed counts against exact cell probabilities;
// returns (statistic, cells)
std::pair<double, int> pearson_statistic(const std::map<std::string, std::uint64_t>& observed,
                                         const std::map<std::string, double>& exact,
                                         std::uint64_t n_observed);

}  // namespace pld::stats
