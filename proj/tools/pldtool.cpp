// pldtool: counting, exact-uniform sampling, first-order evaluation and
// convergence experiments for graphs that split into l parts with at most d
// own-part neighbours.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pld/campaign.hpp"
#include "pld/census.hpp"
#include "pld/ef.hpp"
#include "pld/errors.hpp"
#include "pld/forbidden.hpp"
#include "pld/graph_io.hpp"
#include "pld/poisson.hpp"
#include "pld/stats.hpp"
#include "pld/xi.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCap = 3;

pld::ParsedGraph load_graph(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return pld::read_graph_text(ss.str());
    }
    return pld::read_graph_file(path);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"graphs with l parts and at most d own-part neighbours: exact counting, "
                 "exact-uniform sampling, first-order logic, Poisson censuses, forbidden "
                 "subgraphs, convergence campaigns"};
    app.require_subcommand(1);

    int l = 2, d = 1, k = 1, n = 8, replicas = 1;
    std::uint64_t seed = 0;
    double eps = 1.0, mu = 0.1;
    std::string in_path, in_path2, out_path, sizes_csv, sentence, config_path, mode = "unordered-nonempty";
    std::string kind = "bounded";
    bool exact = false;
    int count = 1;
    int max_m = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--l", l, "part count");
        cmd->add_option("--d", d, "own-part degree bound");
        cmd->add_option("--k", k, "logic/Poisson depth parameter");
        cmd->add_option("--eps", eps, "epsilon for degree-band checks");
        cmd->add_option("--mu", mu, "richness fraction");
        cmd->add_option("--n", n, "vertex count");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--max-m", max_m, "raise the counting/sampling size cap");
    };

    auto* c_count = app.add_subcommand("count", "exact counts");
    add_common(c_count);
    c_count->add_option("--sizes", sizes_csv, "part sizes for the fixed-partition count");
    c_count->add_option("--in", in_path, "graph file for decomposition counting");
    c_count->add_option("--mode", mode, "ordered-any | ordered-nonempty | unordered-nonempty");
    std::string cache_path;
    c_count->add_option("--cache", cache_path, "count cache file, read and updated");

    auto* c_sample = app.add_subcommand("sample", "exact-uniform samplers");
    add_common(c_sample);
    c_sample->add_option("--kind", kind, "bounded | partitioned | uniform | mcmc");
    c_sample->add_option("--count", count, "number of draws");
    c_sample->add_option("--replicas", replicas, "alias of --count");

    auto* c_enum = app.add_subcommand("enumerate", "exhaustive enumeration (n <= 8)");
    add_common(c_enum);
    c_enum->add_option("--kind", kind, "all | pld | forb");
    c_enum->add_option("--sizes", sizes_csv, "pattern sizes for forb");

    auto* c_xi = app.add_subcommand("xi", "xi formula and xi-defined partition");
    add_common(c_xi);
    c_xi->add_option("--in", in_path, "graph file")->required();

    auto* c_ef = app.add_subcommand("ef", "Ehrenfeucht-Fraisse equivalence");
    add_common(c_ef);
    c_ef->add_option("--in", in_path, "first graph")->required();
    c_ef->add_option("--in2", in_path2, "second graph")->required();

    auto* c_poisson = app.add_subcommand("poisson", "Poisson census and signatures");
    add_common(c_poisson);
    c_poisson->add_option("--in", in_path, "graph file")->required();
    bool do_pk = false, do_plus = false;
    c_poisson->add_flag("--pk", do_pk, "run the P^k membership report");
    c_poisson->add_flag("--plus", do_plus, "emit the =_k^+ certificate");

    auto* c_forbid = app.add_subcommand("forbid", "forbidden-subgraph lemma verifiers");
    add_common(c_forbid);
    c_forbid->add_option("--sizes", sizes_csv, "pattern sizes s_1<=...<=s_l")->required();
    c_forbid->add_option("--in", in_path, "optional host graph for containment");

    auto* c_campaign = app.add_subcommand("campaign", "reproducible experiment campaigns");
    add_common(c_campaign);
    c_campaign->add_option("--config", config_path, "JSON config file");
    c_campaign->add_option("--kind", kind, "experiment kind");
    c_campaign->add_option("--replicas", replicas, "replicas per n");
    c_campaign->add_option("--sentence", sentence, "sentence for sentence-probability");
    c_campaign->add_option("--sizes", sizes_csv, "pattern sizes for forb-census");
    std::vector<int> grid;
    c_campaign->add_option("--grid", grid, "n grid (overrides --n)");
    c_campaign->add_flag("--exact", exact, "enumerate exactly instead of sampling");
    std::string out_json;
    c_campaign->add_option("--out-json", out_json, "JSON records output path");

    CLI11_PARSE(app, argc, argv);

    pld::census::CensusCaps caps;
    if (max_m > 0) {
        caps.max_m_low_d = std::max(caps.max_m_low_d, max_m);
        caps.max_n = std::max(caps.max_n, max_m);
    }

    if (c_count->parsed()) {
        std::ostringstream os;
        if (!in_path.empty()) {
            auto pg = load_graph(in_path);
            pld::decomp::PartitionMode pm = pld::decomp::PartitionMode::UnorderedNonempty;
            if (mode == "ordered-any") pm = pld::decomp::PartitionMode::OrderedAny;
            else if (mode == "ordered-nonempty") pm = pld::decomp::PartitionMode::OrderedNonempty;
            else if (mode != "unordered-nonempty") throw pld::ConfigError("bad --mode: " + mode);
            os << pld::decomp::count_decompositions(pg.graph, l, d, pm).to_decimal() << "\n";
        } else if (!sizes_csv.empty()) {
            auto sizes = parse_sizes(sizes_csv);
            nlohmann::json j;
            j["sizes"] = sizes;
            j["d"] = d;
            j["class_count"] = pld::census::partition_class_count(sizes, d, caps).to_decimal();
            j["weight"] = pld::census::size_vector_weight(sizes, d, caps).to_decimal();
            os << j.dump(2) << "\n";
        } else {
            pld::BigUint value;
            bool from_cache = false;
            std::map<std::pair<int, int>, pld::BigUint> cache;
            if (!cache_path.empty()) {
                try {
                    cache = pld::census::load_count_cache(cache_path);
                } catch (const std::runtime_error&) {
                    // absent cache files start empty
                }
                auto it = cache.find({n, d});
                if (it != cache.end()) {
                    value = it->second;
                    from_cache = true;
                }
            }
            if (!from_cache) {
                value = pld::census::count_bounded_degree(n, d, caps);
                if (!cache_path.empty()) {
                    cache.emplace(std::make_pair(n, d), value);
                    pld::census::save_count_cache(cache_path, cache);
                }
            }
            nlohmann::json j;
            j["m"] = n;
            j["d"] = d;
            j["count"] = value.to_decimal();
            j["cached"] = from_cache;
            os << j.dump(2) << "\n";
        }
        write_output(out_path, os.str());
        return kExitOk;
    }

    if (c_sample->parsed()) {
        int draws = std::max(count, replicas);
        std::ostringstream os;
        for (int i = 0; i < draws; ++i) {
            pld::Seed s{seed, {static_cast<std::uint64_t>(i)}};
            if (kind == "bounded") {
                pld::write_graph_text(os, pld::census::sample_bounded_degree(n, d, s, caps));
            } else if (kind == "partitioned") {
                auto ps = pld::census::sample_partitioned(n, l, d, s, caps);
                pld::write_graph_text(os, ps.graph, &ps.partition.assignment());
            } else if (kind == "uniform") {
                pld::write_graph_text(os, pld::census::sample_uniform_pld(n, l, d, s, caps));
            } else if (kind == "mcmc") {
                pld::write_graph_text(os, pld::census::mcmc_toggle_chain(n, d, 100000, s));
            } else {
                throw pld::ConfigError("bad --kind: " + kind);
            }
            os << "\n";
        }
        write_output(out_path, os.str());
        return kExitOk;
    }

    if (c_enum->parsed()) {
        std::ostringstream os;
        std::uint64_t total = 0;
        auto sink = [&](const pld::Graph& g) {
            ++total;
            pld::write_graph_text(os, g);
            os << "\n";
        };
        if (kind == "all" || kind == "bounded") {
            pld::census::enumerate_class(n, [](const pld::Graph&) { return true; }, sink, caps);
        } else if (kind == "pld") {
            pld::census::enumerate_class(
                n,
                [&](const pld::Graph& g) {
                    return !pld::decomp::count_decompositions(g, l, d,
                                                              pld::decomp::PartitionMode::OrderedAny)
                                .is_zero();
                },
                sink, caps);
        } else if (kind == "forb") {
            pld::forbidden::enumerate_forb(n, pld::forbidden::MultipartitePattern(parse_sizes(sizes_csv)),
                                           sink, caps);
        } else {
            throw pld::ConfigError("bad --kind: " + kind);
        }
        std::cerr << "graphs: " << total << "\n";
        write_output(out_path, os.str());
        return kExitOk;
    }

    if (c_xi->parsed()) {
        auto pg = load_graph(in_path);
        std::ostringstream os;
        pld::logic::XiParams params(l, d);
        auto res = pld::logic::xi_partition(pg.graph, params);
        nlohmann::json j;
        j["l"] = l;
        j["d"] = d;
        j["m"] = params.m();
        j["q"] = params.q();
        if (l >= 2) j["formula"] = pld::logic::to_string(*pld::logic::build_xi(l, d));
        if (std::holds_alternative<pld::decomp::Partition>(res)) {
            const auto& pi = std::get<pld::decomp::Partition>(res);
            j["partition"] = pi.parts();
            j["recovered"] = true;
        } else {
            j["recovered"] = false;
            j["diagnostic"] = std::get<pld::logic::XiFailure>(res).to_string();
        }
        os << j.dump(2) << "\n";
        write_output(out_path, os.str());
        return kExitOk;
    }

    if (c_ef->parsed()) {
        auto g1 = load_graph(in_path);
        auto g2 = load_graph(in_path2);
        bool eq = pld::logic::ef_equivalent(g1.graph, g2.graph, k);
        std::cout << (eq ? "equivalent" : "distinguishable") << " at k=" << k << "\n";
        return kExitOk;
    }

    if (c_poisson->parsed()) {
        auto pg = load_graph(in_path);
        std::ostringstream os;
        if (do_pk) {
            auto rep = pld::poisson::pk_membership(pg.graph, l, d, k, eps, mu);
            nlohmann::json j;
            j["overall"] = rep.overall;
            j["xi_ok"] = rep.xi_ok;
            j["rich_ok"] = rep.rich_ok;
            j["decomposition_ok"] = rep.decomposition_ok;
            if (!rep.xi_ok) j["xi_diagnostic"] = rep.xi_diagnostic;
            nlohmann::json parts = nlohmann::json::array();
            for (const auto& p : rep.parts) {
                nlohmann::json pj = nlohmann::json::array();
                for (int i = 0; i < 7; ++i) {
                    nlohmann::json v;
                    v["ok"] = p.property[i].ok;
                    if (!p.property[i].ok) v["witness"] = p.property[i].witness;
                    pj.push_back(v);
                }
                parts.push_back(pj);
            }
            j["parts"] = parts;
            os << j.dump(2) << "\n";
        } else if (do_plus) {
            auto res = pld::poisson::signature_plus(pg.graph, l, d, k);
            if (std::holds_alternative<pld::poisson::PlusCertificate>(res)) {
                os << std::get<pld::poisson::PlusCertificate>(res).to_json() << "\n";
            } else {
                os << "{\"failure\":\"" << std::get<pld::poisson::SignatureFailure>(res).diagnostic
                   << "\"}\n";
            }
        } else {
            auto res = pld::poisson::signature(pg.graph, l, d, k);
            if (std::holds_alternative<pld::poisson::PoissonSignature>(res)) {
                os << std::get<pld::poisson::PoissonSignature>(res).to_json() << "\n";
            } else {
                os << "{\"failure\":\"" << std::get<pld::poisson::SignatureFailure>(res).diagnostic
                   << "\"}\n";
            }
        }
        write_output(out_path, os.str());
        return kExitOk;
    }

    if (c_forbid->parsed()) {
        auto sizes = parse_sizes(sizes_csv);
        std::ostringstream os;
        nlohmann::json j;
        j["sizes"] = sizes;
        int ll = static_cast<int>(sizes.size());
        j["criterion"] = pld::forbidden::inclusion_criterion(ll, sizes);
        j["brute_no_partition"] = pld::forbidden::brute_inclusion_check(ll, sizes);
        j["cycle_lemma"] = pld::forbidden::verify_cycle_lemma(ll, sizes);
        if (!in_path.empty()) {
            auto pg = load_graph(in_path);
            j["contains"] =
                pld::forbidden::contains_multipartite(pg.graph, pld::forbidden::MultipartitePattern(sizes));
        }
        os << j.dump(2) << "\n";
        write_output(out_path, os.str());
        return kExitOk;
    }

    if (c_campaign->parsed()) {
        pld::campaign::CampaignConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw pld::ConfigError("cannot open config file: " + config_path);
            std::ostringstream ss;
            ss << in.rdbuf();
            cfg = pld::campaign::config_from_json(ss.str());
        } else {
            cfg.kind = pld::campaign::kind_from_name(kind == "bounded" ? "xi-recovery" : kind);
            cfg.l = l;
            cfg.d = d;
            cfg.k = k;
            cfg.eps = eps;
            cfg.mu = mu;
            cfg.n_grid = grid.empty() ? std::vector<int>{n} : grid;
            cfg.replicas = replicas;
            cfg.seed = seed;
            cfg.sentence = sentence;
            cfg.exact = exact;
            if (!sizes_csv.empty()) cfg.forb_sizes = parse_sizes(sizes_csv);
            cfg.caps = caps;
        }
        if (!out_path.empty()) cfg.out_csv = out_path;
        if (!out_json.empty()) cfg.out_json = out_json;
        auto records = pld::campaign::run_campaign(cfg);
        std::string csv = pld::campaign::records_to_csv(records);
        if (!cfg.out_csv.empty()) write_output(cfg.out_csv, csv);
        if (!cfg.out_json.empty()) write_output(cfg.out_json, pld::campaign::records_to_json(records));
        std::cout << pld::campaign::convergence_report(records);
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pld::CapError& e) {
        std::cerr << "cap violation: " << e.what() << "\n";
        return kExitCap;
    } catch (const pld::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
