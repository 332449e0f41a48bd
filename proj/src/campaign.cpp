#include "pld/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pld/ef.hpp"
#include "pld/errors.hpp"
#include "pld/forbidden.hpp"
#include "pld/formula.hpp"
#include "pld/poisson.hpp"
#include "pld/stats.hpp"
#include "pld/xi.hpp"

namespace pld::campaign {

std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::XiRecovery: return "xi-recovery";
        case ExperimentKind::UniqueDecomposition: return "unique-decomposition";
        case ExperimentKind::PoissonFit: return "poisson-fit";
        case ExperimentKind::SentenceProbability: return "sentence-probability";
        case ExperimentKind::EfClasses: return "ef-classes";
        case ExperimentKind::ForbCensus: return "forb-census";
    }
    throw std::logic_error("kind_name: bad kind");
}

ExperimentKind kind_from_name(const std::string& name) {
    for (ExperimentKind k : {ExperimentKind::XiRecovery, ExperimentKind::UniqueDecomposition,
                             ExperimentKind::PoissonFit, ExperimentKind::SentenceProbability,
                             ExperimentKind::EfClasses, ExperimentKind::ForbCensus}) {
        if (kind_name(k) == name) return k;
    }
    throw ConfigError("unknown experiment kind: " + name);
}

void CampaignConfig::validate() const {
    if (n_grid.empty()) throw ConfigError("n grid is empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 1) throw ConfigError("n grid entries must be >= 1");
        if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw ConfigError("n grid must be strictly increasing");
    }
    if (replicas < 1) throw ConfigError("replicas must be >= 1");
    if (l < 1) throw ConfigError("l must be >= 1");
    if (d < 0) throw ConfigError("d must be >= 0");
    if (k < 0) throw ConfigError("k must be >= 0");
    if (kind == ExperimentKind::SentenceProbability) {
        if (sentence.empty()) throw ConfigError("sentence-probability needs a sentence");
        try {
            logic::parse_sentence(sentence);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad sentence: ") + e.what());
        }
    }
    if (kind == ExperimentKind::PoissonFit && !(eps > 0 && eps < d)) {
        throw ConfigError("poisson-fit needs 0 < eps < d");
    }
    if (kind == ExperimentKind::ForbCensus) {
        if (forb_sizes.empty()) throw ConfigError("forb-census needs sizes");
        forbidden::MultipartitePattern pat(forb_sizes);  // validates; throws invalid_argument
    }
    if (kind == ExperimentKind::EfClasses) {
        logic::EfCaps ef_caps;
        for (int n : n_grid) {
            if (n > ef_caps.max_vertices) throw ConfigError("ef-classes needs n within the EF cap");
            if (exact && n > 4) throw ConfigError("exact ef-classes is limited to n <= 4");
        }
        if (k > ef_caps.max_rounds) throw ConfigError("ef-classes needs k within the EF cap");
    }
    if (exact) {
        for (int n : n_grid) {
            if (n > caps.enum_max_n) throw ConfigError("exact mode needs n within the enumeration cap");
        }
    }
}

CampaignConfig config_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    CampaignConfig cfg;
    try {
        cfg.kind = kind_from_name(j.at("experiment").get<std::string>());
        if (j.contains("l")) cfg.l = j["l"].get<int>();
        if (j.contains("d")) cfg.d = j["d"].get<int>();
        if (j.contains("k")) cfg.k = j["k"].get<int>();
        if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
        if (j.contains("mu")) cfg.mu = j["mu"].get<double>();
        cfg.n_grid = j.at("n").get<std::vector<int>>();
        if (j.contains("replicas")) cfg.replicas = j["replicas"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("sentence")) cfg.sentence = j["sentence"].get<std::string>();
        if (j.contains("sizes")) cfg.forb_sizes = j["sizes"].get<std::vector<int>>();
        if (j.contains("exact")) cfg.exact = j["exact"].get<bool>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("out_csv")) cfg.out_csv = j["out_csv"].get<std::string>();
        if (j.contains("out_json")) cfg.out_json = j["out_json"].get<std::string>();
        if (j.contains("max_m")) {
            cfg.caps.max_m_low_d = j["max_m"].get<int>();
            cfg.caps.max_n = std::max(cfg.caps.max_n, cfg.caps.max_m_low_d);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    return cfg;
}

namespace {

struct ReplicaOutcome {
    bool primary = false;                  // proportion-style experiments
    bool valid_recovery = false;           // xi-recovery secondary metric
    std::vector<std::uint64_t> q_counts;   // poisson-fit per-part counts
    std::vector<std::uint64_t> deg_counts; // poisson-fit degree-(d-1) counts per part
    std::vector<int> part_sizes;           // poisson-fit band denominators
    Graph graph;                           // ef-classes pool member
};

// runs fn(replica_index) over a thread pool; results land in a pre-sized
// vector so the schedule cannot influence the output
template <typename Fn>
void parallel_replicas(int replicas, int threads, Fn&& fn) {
    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, replicas));
    if (nthreads == 1) {
        for (int r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int r = next.fetch_add(1);
                if (r >= replicas) return;
                fn(r);
            }
        });
    }
    for (auto& th : pool) th.join();
}

bool xi_valid_recovery(const Graph& g, int l, int d) {
    auto res = logic::xi_partition(g, logic::XiParams(l, d));
    if (!std::holds_alternative<decomp::Partition>(res)) return false;
    const auto& pi = std::get<decomp::Partition>(res);
    return std::holds_alternative<decomp::Decomposition>(
        decomp::decomposition_from_partition(g, pi, d));
}

bool xi_matches_construction(const Graph& g, int l, int d, const decomp::Partition& construction) {
    auto res = logic::xi_partition(g, logic::XiParams(l, d));
    if (!std::holds_alternative<decomp::Partition>(res)) return false;
    const auto& pi = std::get<decomp::Partition>(res);
    // compare as unordered partitions; the construction partition may carry
    // empty parts, in which case it cannot match an l-class equivalence
    const auto& ctor = construction.assignment();
    std::vector<int> sizes(l + 1, 0);
    for (int p : ctor) ++sizes[p];
    for (int p = 1; p <= l; ++p) {
        if (sizes[p] == 0) return false;
    }
    decomp::Partition canon_ctor(l, ctor, decomp::PartitionMode::UnorderedNonempty);
    return canon_ctor.assignment() == pi.assignment();
}

struct NContext {
    const CampaignConfig& cfg;
    int n;
    std::unique_ptr<census::PldSampler> sampler;  // sampling mode, l >= 2
    std::vector<Graph> predrawn;                  // l == 1: lockstep batch draws
};

ReplicaOutcome run_replica_sampled(const NContext& ctx, int replica) {
    const CampaignConfig& cfg = ctx.cfg;
    Seed seed{cfg.seed, {}};
    Seed rs = seed.child(static_cast<std::uint64_t>(ctx.n)).child(static_cast<std::uint64_t>(replica));
    ReplicaOutcome out;

    auto draw_uniform = [&]() -> std::pair<Graph, std::optional<decomp::Partition>> {
        if (cfg.l == 1) {
            // drawn up front in one lockstep batch; same seed derivation as
            // sample_uniform_pld, so results match the one-shot path
            return {ctx.predrawn[static_cast<std::size_t>(replica)], std::nullopt};
        }
        auto draw = ctx.sampler->sample_uniform(rs);
        return {std::move(draw.graph), std::move(draw.partition)};
    };

    switch (cfg.kind) {
        case ExperimentKind::XiRecovery: {
            auto [g, pi] = draw_uniform();
            out.valid_recovery = xi_valid_recovery(g, cfg.l, cfg.d);
            out.primary = pi.has_value() ? xi_matches_construction(g, cfg.l, cfg.d, *pi)
                                         : out.valid_recovery;
            return out;
        }
        case ExperimentKind::UniqueDecomposition: {
            auto [g, pi] = draw_uniform();
            out.primary = decomp::count_decompositions(g, cfg.l, cfg.d,
                                                       decomp::PartitionMode::UnorderedNonempty) ==
                          BigUint{1};
            return out;
        }
        case ExperimentKind::PoissonFit: {
            auto [g, pi] = draw_uniform();
            std::vector<VertexSet> parts;
            if (cfg.l == 1) {
                VertexSet all(g.n());
                std::iota(all.begin(), all.end(), 1);
                parts.push_back(std::move(all));
            } else {
                parts = pi->parts();
            }
            for (const auto& part : parts) {
                if (part.empty()) continue;
                Graph h = induced_subgraph(g, part).graph;
                std::uint64_t q = 0, deg1 = 0;
                for (int v = 1; v <= h.n(); ++v) {
                    if (cfg.d >= 2 && h.degree(v) == cfg.d - 2) ++q;
                    if (h.degree(v) == cfg.d - 1) ++deg1;
                }
                out.q_counts.push_back(q);
                out.deg_counts.push_back(deg1);
                out.part_sizes.push_back(h.n());
            }
            return out;
        }
        case ExperimentKind::SentenceProbability: {
            auto [g, pi] = draw_uniform();
            auto f = logic::parse_sentence(cfg.sentence);
            out.primary = logic::evaluate(g, *f);
            return out;
        }
        case ExperimentKind::EfClasses: {
            auto [g, pi] = draw_uniform();
            out.graph = g;
            return out;
        }
        case ExperimentKind::ForbCensus: {
            // uniform random graph on [n]; the pattern-free proportion
            Rng rng(rs);
            std::vector<std::pair<int, int>> edges;
            for (int u = 1; u <= ctx.n; ++u) {
                for (int v = u + 1; v <= ctx.n; ++v) {
                    if (rng.coin()) edges.emplace_back(u, v);
                }
            }
            Graph g(ctx.n, std::move(edges));
            out.primary = !forbidden::contains_multipartite(
                g, forbidden::MultipartitePattern(cfg.forb_sizes));
            return out;
        }
    }
    throw std::logic_error("run_replica_sampled: bad kind");
}

ResultRecord aggregate(const CampaignConfig& cfg, int n, std::vector<ReplicaOutcome> outcomes,
                       bool exact_mode, double exact_total) {
    ResultRecord rec;
    rec.experiment = kind_name(cfg.kind);
    rec.n = n;
    rec.replicas = static_cast<int>(outcomes.size());
    rec.seed = cfg.seed;
    rec.version = kVersion;

    const double denom = exact_mode ? exact_total : static_cast<double>(outcomes.size());
    switch (cfg.kind) {
        case ExperimentKind::XiRecovery: {
            double hits = 0, valid = 0;
            for (const auto& o : outcomes) {
                hits += o.primary ? 1 : 0;
                valid += o.valid_recovery ? 1 : 0;
            }
            rec.estimate = hits / denom;
            rec.extras["valid_recovery"] = valid / denom;
            rec.stderr_estimate = exact_mode ? 0
                                             : stats::binomial_stderr(rec.estimate, outcomes.size());
            return rec;
        }
        case ExperimentKind::UniqueDecomposition:
        case ExperimentKind::SentenceProbability:
        case ExperimentKind::ForbCensus: {
            double hits = 0;
            for (const auto& o : outcomes) hits += o.primary ? 1 : 0;
            rec.estimate = hits / denom;
            rec.stderr_estimate = exact_mode ? 0
                                             : stats::binomial_stderr(rec.estimate, outcomes.size());
            return rec;
        }
        case ExperimentKind::PoissonFit: {
            std::vector<std::uint64_t> qs;
            double in_band = 0, total_parts = 0;
            for (const auto& o : outcomes) {
                for (std::size_t i = 0; i < o.q_counts.size(); ++i) {
                    qs.push_back(o.q_counts[i]);
                    double nn = static_cast<double>(o.part_sizes[i]);
                    double lo = std::sqrt((cfg.d - cfg.eps) * nn);
                    double hi = std::sqrt((cfg.d + cfg.eps) * nn);
                    double c = static_cast<double>(o.deg_counts[i]);
                    if (c >= lo && c <= hi) in_band += 1;
                    total_parts += 1;
                }
            }
            if (qs.empty()) throw std::logic_error("poisson-fit: no counts collected");
            auto fit = poisson::empirical_fit(qs, std::max(1e-12, static_cast<double>(cfg.d - 1)));
            rec.estimate = fit.tv;
            rec.stderr_estimate = 0;
            rec.extras["chisq"] = fit.chisq;
            rec.extras["chisq_bins"] = fit.chisq_bins;
            rec.extras["band_fraction"] = total_parts > 0 ? in_band / total_parts : 0.0;
            rec.extras["mean_q"] = [&qs] {
                double s = 0;
                for (auto q : qs) s += static_cast<double>(q);
                return s / static_cast<double>(qs.size());
            }();
            return rec;
        }
        case ExperimentKind::EfClasses: {
            // class count over the pool via pairwise EF games
            std::vector<const Graph*> reps;
            for (const auto& o : outcomes) {
                bool fresh = true;
                for (const Graph* r : reps) {
                    if (logic::ef_equivalent(o.graph, *r, cfg.k)) {
                        fresh = false;
                        break;
                    }
                }
                if (fresh) reps.push_back(&o.graph);
            }
            rec.estimate = static_cast<double>(reps.size());
            rec.stderr_estimate = 0;
            return rec;
        }
    }
    throw std::logic_error("aggregate: bad kind");
}

std::vector<ReplicaOutcome> run_exact(const CampaignConfig& cfg, int n, double& total_out) {
    std::vector<ReplicaOutcome> outcomes;
    double total = 0;
    auto member = [&](const Graph& g) {
        if (cfg.kind == ExperimentKind::ForbCensus) return true;  // proportion over all graphs
        return !decomp::count_decompositions(g, cfg.l, cfg.d, decomp::PartitionMode::OrderedAny)
                    .is_zero();
    };
    census::enumerate_class(
        n, member,
        [&](const Graph& g) {
            total += 1;
            ReplicaOutcome out;
            switch (cfg.kind) {
                case ExperimentKind::XiRecovery:
                    out.valid_recovery = xi_valid_recovery(g, cfg.l, cfg.d);
                    out.primary = out.valid_recovery;
                    break;
                case ExperimentKind::UniqueDecomposition:
                    out.primary = decomp::count_decompositions(
                                      g, cfg.l, cfg.d, decomp::PartitionMode::UnorderedNonempty) ==
                                  BigUint{1};
                    break;
                case ExperimentKind::PoissonFit: {
                    VertexSet all(g.n());
                    std::iota(all.begin(), all.end(), 1);
                    std::vector<VertexSet> parts;
                    if (cfg.l == 1) {
                        parts.push_back(all);
                    } else {
                        auto res = logic::xi_partition(g, logic::XiParams(cfg.l, cfg.d));
                        if (std::holds_alternative<decomp::Partition>(res)) {
                            parts = std::get<decomp::Partition>(res).parts();
                        } else {
                            parts.push_back(all);  // fall back to the whole graph
                        }
                    }
                    for (const auto& part : parts) {
                        Graph h = induced_subgraph(g, part).graph;
                        std::uint64_t q = 0, deg1 = 0;
                        for (int v = 1; v <= h.n(); ++v) {
                            if (cfg.d >= 2 && h.degree(v) == cfg.d - 2) ++q;
                            if (h.degree(v) == cfg.d - 1) ++deg1;
                        }
                        out.q_counts.push_back(q);
                        out.deg_counts.push_back(deg1);
                        out.part_sizes.push_back(h.n());
                    }
                    break;
                }
                case ExperimentKind::SentenceProbability: {
                    auto f = logic::parse_sentence(cfg.sentence);
                    out.primary = logic::evaluate(g, *f);
                    break;
                }
                case ExperimentKind::EfClasses:
                    out.graph = g;
                    break;
                case ExperimentKind::ForbCensus:
                    out.primary = !forbidden::contains_multipartite(
                        g, forbidden::MultipartitePattern(cfg.forb_sizes));
                    break;
            }
            outcomes.push_back(std::move(out));
        },
        cfg.caps);
    total_out = total;
    return outcomes;
}

}  // namespace

namespace {

void flush_outputs(const CampaignConfig& cfg, const std::vector<ResultRecord>& records) {
    if (!cfg.out_csv.empty()) {
        std::ofstream out(cfg.out_csv);
        out << records_to_csv(records);
    }
    if (!cfg.out_json.empty()) {
        std::ofstream out(cfg.out_json);
        out << records_to_json(records);
    }
}

void run_campaign_impl(const CampaignConfig& cfg, std::vector<ResultRecord>& records) {
    for (int n : cfg.n_grid) {
        auto t0 = std::chrono::steady_clock::now();
        ResultRecord rec;
        if (cfg.exact) {
            double total = 0;
            auto outcomes = run_exact(cfg, n, total);
            rec = aggregate(cfg, n, std::move(outcomes), true, total);
            rec.replicas = static_cast<int>(total);
        } else {
            NContext ctx{cfg, n, nullptr, {}};
            if (cfg.l > 1) {
                ctx.sampler = std::make_unique<census::PldSampler>(n, cfg.l, cfg.d, cfg.caps);
            } else if (cfg.kind != ExperimentKind::ForbCensus) {
                Seed master{cfg.seed, {}};
                std::vector<Seed> seeds;
                seeds.reserve(cfg.replicas);
                for (int r = 0; r < cfg.replicas; ++r) {
                    seeds.push_back(master.child(static_cast<std::uint64_t>(n))
                                        .child(static_cast<std::uint64_t>(r))
                                        .child(0)
                                        .child(0)
                                        .child(1));
                }
                ctx.predrawn = census::sample_bounded_degree_batch(n, cfg.d, seeds, cfg.caps);
            }
            std::vector<ReplicaOutcome> outcomes(cfg.replicas);
            std::exception_ptr err;
            std::mutex err_mutex;
            parallel_replicas(cfg.replicas, cfg.threads, [&](int r) {
                try {
                    outcomes[r] = run_replica_sampled(ctx, r);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!err) err = std::current_exception();
                }
            });
            if (err) std::rethrow_exception(err);
            rec = aggregate(cfg, n, std::move(outcomes), false, 0);
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                          .count();
        records.push_back(std::move(rec));
    }
}

}  // namespace

std::vector<ResultRecord> run_campaign(const CampaignConfig& cfg) {
    cfg.validate();
    std::vector<ResultRecord> records;
    try {
        run_campaign_impl(cfg, records);
    } catch (...) {
        // partial results are flushed before the error propagates
        flush_outputs(cfg, records);
        throw;
    }
    flush_outputs(cfg, records);
    return records;
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

}  // namespace

std::string records_to_csv(const std::vector<ResultRecord>& records) {
    std::ostringstream os;
    os << "experiment,n,replicas,estimate,stderr,seed,version\n";
    for (const auto& r : records) {
        os << r.experiment << "," << r.n << "," << r.replicas << "," << fmt_double(r.estimate) << ","
           << fmt_double(r.stderr_estimate) << "," << r.seed << "," << r.version << "\n";
    }
    return os.str();
}

std::string records_to_json(const std::vector<ResultRecord>& records, bool with_timings) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j;
        j["experiment"] = r.experiment;
        j["n"] = r.n;
        j["replicas"] = r.replicas;
        j["estimate"] = r.estimate;
        j["stderr"] = r.stderr_estimate;
        j["seed"] = r.seed;
        j["version"] = r.version;
        if (with_timings) j["wall_ms"] = r.wall_ms;
        if (!r.extras.empty()) {
            nlohmann::json ex;
            for (const auto& [k2, v] : r.extras) ex[k2] = v;
            j["extras"] = ex;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string convergence_report(const std::vector<ResultRecord>& records) {
    if (records.empty()) return "(no records)\n";
    for (const auto& r : records) {
        if (r.experiment != records.front().experiment) {
            throw std::invalid_argument("convergence_report: mixed experiment ids");
        }
    }
    std::vector<const ResultRecord*> rows;
    for (const auto& r : records) rows.push_back(&r);
    std::sort(rows.begin(), rows.end(),
              [](const ResultRecord* a, const ResultRecord* b) { return a->n < b->n; });
    std::ostringstream os;
    os << "experiment: " << records.front().experiment << "\n";
    os << "      n   estimate    +-2se       |diff|\n";
    const ResultRecord* prev = nullptr;
    for (const ResultRecord* r : rows) {
        os << "  " << std::setw(5) << r->n << "   ";
        os << std::fixed << std::setprecision(6) << r->estimate << "   " << 2 * r->stderr_estimate
           << "   ";
        if (prev == nullptr) {
            os << "       -";
        } else {
            os << std::fixed << std::setprecision(6) << std::abs(r->estimate - prev->estimate);
        }
        os << "\n";
        prev = r;
    }
    return os.str();
}

const std::vector<std::pair<std::string, int>>& sentence_library() {
    static const std::vector<std::pair<std::string, int>> lib = {
        {"exists x. E(x,x)", 1},
        {"exists x. x = x", 1},
        {"forall x. x = x", 1},
        {"exists x. exists y. E(x,y)", 2},
        {"forall x. exists y. E(x,y)", 2},
        {"exists x. forall y. (E(x,y) | x = y)", 2},
        {"exists x. exists y. !(x = y)", 2},
        {"forall x. forall y. (E(x,y) -> E(y,x))", 2},
        {"exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z))", 3},
        {"exists x. exists y. exists z. (!(x = z) & E(x,y) & E(y,z))", 3},
        {"forall x. exists y. exists z. (!(y = z) & E(x,y) & E(x,z))", 3},
        {"forall x. forall y. (E(x,y) -> exists z. (E(x,z) & E(y,z)))", 3},
    };
    return lib;
}

}  // namespace pld::campaign
