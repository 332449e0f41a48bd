#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pld/census.hpp"

namespace pld::campaign {

inline constexpr const char* kVersion = "1.0.0";

enum class ExperimentKind {
    XiRecovery,
    UniqueDecomposition,
    PoissonFit,
    SentenceProbability,
    EfClasses,
    ForbCensus,
};

std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

struct CampaignConfig {
    ExperimentKind kind = ExperimentKind::XiRecovery;
    int l = 2;
    int d = 1;
    int k = 1;
    double eps = 1.0;
    double mu = 0.1;
    std::vector<int> n_grid;
    int replicas = 1;
    std::uint64_t seed = 0;
    std::string sentence;          // sentence-probability
    std::vector<int> forb_sizes;   // forb-census
    bool exact = false;            // enumerate instead of sampling (n <= 8)
    int threads = 0;               // 0 = hardware concurrency
    std::string out_csv;
    std::string out_json;
    census::CensusCaps caps;

    void validate() const;  // throws ConfigError
};

CampaignConfig config_from_json(const std::string& json_text);

struct ResultRecord {
    std::string experiment;
    int n = 0;
    int replicas = 0;
    double estimate = 0;
    double stderr_estimate = 0;
    std::uint64_t seed = 0;
    std::string version;
    double wall_ms = 0;  // never part of deterministic output
    std::map<std::string, double> extras;
};

std::vector<ResultRecord> run_campaign(const CampaignConfig& cfg);

// CSV with a fixed header; excludes wall time so reruns are byte-identical
std::string records_to_csv(const std::vector<ResultRecord>& records);
// JSON records; timings only when explicitly requested
std::string records_to_json(const std::vector<ResultRecord>& records, bool with_timings = false);

// one row per n (sorted): estimate ± 2*stderr plus trailing differences;
// records must share one experiment id
std::string convergence_report(const std::vector<ResultRecord>& records);

// rank <= 3 sentences used by the EF cross-checks, with their ranks
const std::vector<std::pair<std::string, int>>& sentence_library();

}  // namespace pld::campaign
