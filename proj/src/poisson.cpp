#include "pld/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pld/canonical.hpp"
#include "pld/errors.hpp"

namespace pld::poisson {

namespace {

void check_degree_bound(const Graph& g, int d, const char* who) {
    if (g.max_degree() > d) {
        throw std::invalid_argument(std::string(who) + ": graph has a vertex of degree > d");
    }
}

void check_object_cap(int d, int s_max, const PoissonCaps& caps, const char* who) {
    if (s_max > caps.max_object_size(d)) {
        throw CapError(std::string(who) + ": object size bound " + std::to_string(s_max) +
                       " exceeds cap for d=" + std::to_string(d));
    }
}

// cycles as vertex sequences starting at their minimal vertex, enumerated by
// DFS over vertices larger than the start; each cycle closes twice (two
// orientations), deduplicated by requiring second vertex < last vertex
void enumerate_cycles(const Graph& g, int max_len,
                      const std::function<void(const std::vector<int>&)>& sink) {
    if (max_len < 3) return;
    std::vector<int> path;
    std::vector<char> on_path(g.n() + 1, 0);
    std::function<void(int, int)> dfs = [&](int start, int v) {
        for (int w : g.neighbours(v)) {
            if (w == start && path.size() >= 3) {
                if (path[1] < path.back()) sink(path);
                continue;
            }
            if (w <= start || on_path[w]) continue;
            if (static_cast<int>(path.size()) >= max_len) continue;
            path.push_back(w);
            on_path[w] = 1;
            dfs(start, w);
            on_path[w] = 0;
            path.pop_back();
        }
    };
    for (int s = 1; s <= g.n(); ++s) {
        path = {s};
        on_path.assign(g.n() + 1, 0);
        on_path[s] = 1;
        dfs(s, s);
    }
}

// simple paths with >= 1 edge whose two endpoints have degree exactly d-1,
// each reported once (from its smaller endpoint)
void enumerate_flagged_paths(const Graph& g, int d, int max_edges,
                             const std::function<void(const std::vector<int>&)>& sink) {
    if (max_edges < 1) return;
    std::vector<int> path;
    std::vector<char> on_path(g.n() + 1, 0);
    std::function<void(int)> dfs = [&](int u) {
        int v = path.back();
        for (int w : g.neighbours(v)) {
            if (on_path[w]) continue;
            path.push_back(w);
            on_path[w] = 1;
            if (g.degree(w) == d - 1 && u < w) sink(path);
            if (static_cast<int>(path.size()) <= max_edges) dfs(u);
            on_path[w] = 0;
            path.pop_back();
        }
    };
    for (int u = 1; u <= g.n(); ++u) {
        if (g.degree(u) != d - 1) continue;
        path = {u};
        on_path.assign(g.n() + 1, 0);
        on_path[u] = 1;
        dfs(u);
    }
}

}  // namespace

SmallObjectCounts count_small_objects(const Graph& g, int d, int t, const PoissonCaps& caps) {
    check_degree_bound(g, d, "count_small_objects");
    if (t < 0) throw std::invalid_argument("count_small_objects: negative t");
    check_object_cap(d, t, caps, "count_small_objects");
    SmallObjectCounts out;
    out.d = d;
    out.t = t;
    out.cycles.assign(t >= 3 ? t - 2 : 0, 0);
    out.paths.assign(t >= 1 ? t : 0, 0);
    if (d >= 2) {
        for (int v = 1; v <= g.n(); ++v) {
            if (g.degree(v) == d - 2) ++out.q;
        }
    }
    enumerate_cycles(g, t, [&](const std::vector<int>& cyc) {
        ++out.cycles[cyc.size() - 3];
    });
    enumerate_flagged_paths(g, d, t, [&](const std::vector<int>& p) {
        ++out.paths[p.size() - 2];  // j edges = j+1 vertices
    });
    return out;
}

void enumerate_small_objects(const Graph& g, int d, int s_max,
                             const std::function<void(ObjectKind, const VertexSet&)>& sink,
                             const PoissonCaps& caps) {
    check_degree_bound(g, d, "enumerate_small_objects");
    check_object_cap(d, s_max, caps, "enumerate_small_objects");
    if (d >= 2) {
        for (int v = 1; v <= g.n(); ++v) {
            if (g.degree(v) == d - 2) sink(ObjectKind::LowDegreeVertex, {v});
        }
    }
    enumerate_cycles(g, s_max, [&](const std::vector<int>& cyc) {
        VertexSet s = cyc;
        std::sort(s.begin(), s.end());
        sink(ObjectKind::Cycle, s);
    });
    enumerate_flagged_paths(g, d, s_max, [&](const std::vector<int>& p) {
        VertexSet s = p;
        std::sort(s.begin(), s.end());
        sink(ObjectKind::Path, s);
    });
}

VertexSet np_ball(const Graph& g, int d, int k, int t, const PoissonCaps& caps) {
    if (k < 0 || t < 0) throw std::invalid_argument("np_ball: negative parameter");
    long long s_max = 1;
    for (int i = 0; i < k; ++i) s_max *= 5;
    if (s_max > 1'000'000) throw CapError("np_ball: 5^k overflows the object cap");
    VertexSet support;
    enumerate_small_objects(g, d, static_cast<int>(s_max),
                            [&](ObjectKind, const VertexSet& s) {
                                support.insert(support.end(), s.begin(), s.end());
                            },
                            caps);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.empty()) return {};
    return ball(g, support, t);
}

// ------------------------------------------------------------------- P^k

namespace {

// truncated BFS distance from a source set within g
std::vector<int> bfs_within(const Graph& g, const VertexSet& sources, int radius) {
    std::vector<int> dist(g.n() + 1, -1);
    std::vector<int> queue;
    for (int s : sources) {
        if (dist[s] == -1) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        if (dist[v] == radius) continue;
        for (int w : g.neighbours(v)) {
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::string vec_str(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

PkPartReport check_part(const Graph& h, int d, int s, int t, double eps, long long n_for_band,
                        const PoissonCaps& caps) {
    PkPartReport rep;

    // (1) no vertex with degree less than d-2
    for (int v = 1; v <= h.n(); ++v) {
        if (h.degree(v) < d - 2) {
            rep.property[0] = {false, "vertex " + std::to_string(v) + " has degree " +
                                          std::to_string(h.degree(v))};
            break;
        }
    }

    // (2) between sqrt((d-eps)n') and sqrt((d+eps)n') vertices of degree d-1
    {
        long long cnt = 0;
        for (int v = 1; v <= h.n(); ++v) {
            if (h.degree(v) == d - 1) ++cnt;
        }
        double lo = std::sqrt((d - eps) * static_cast<double>(n_for_band));
        double hi = std::sqrt((d + eps) * static_cast<double>(n_for_band));
        if (static_cast<double>(cnt) < lo || static_cast<double>(cnt) > hi) {
            rep.property[1] = {false, std::to_string(cnt) + " degree-(d-1) vertices outside [" +
                                          std::to_string(lo) + ", " + std::to_string(hi) + "]"};
        }
    }

    // short cycles once, shared by (3) and (4)
    std::vector<VertexSet> cycles;
    enumerate_cycles(h, s, [&](const std::vector<int>& cyc) {
        VertexSet v = cyc;
        std::sort(v.begin(), v.end());
        cycles.push_back(std::move(v));
    });
    (void)caps;

    // (3) no two distinct short cycles within distance t
    for (std::size_t i = 0; i < cycles.size() && rep.property[2].ok; ++i) {
        auto dist = bfs_within(h, cycles[i], t);
        for (std::size_t j = i + 1; j < cycles.size(); ++j) {
            bool close = false;
            for (int v : cycles[j]) {
                if (dist[v] != -1 && dist[v] <= t) {
                    close = true;
                    break;
                }
            }
            if (close) {
                rep.property[2] = {false, "cycles " + vec_str(cycles[i]) + " and " +
                                              vec_str(cycles[j]) + " within distance " +
                                              std::to_string(t)};
                break;
            }
        }
    }

    // (4) no vertex of degree < d within distance t of a short cycle
    for (const auto& cyc : cycles) {
        if (!rep.property[3].ok) break;
        auto dist = bfs_within(h, cyc, t);
        for (int v = 1; v <= h.n(); ++v) {
            if (h.degree(v) < d && dist[v] != -1 && dist[v] <= t) {
                rep.property[3] = {false, "vertex " + std::to_string(v) + " of degree " +
                                              std::to_string(h.degree(v)) + " near cycle " +
                                              vec_str(cyc)};
                break;
            }
        }
    }

    // low-degree vertices for (5) and (6)
    VertexSet low;  // degree <= d-1
    for (int v = 1; v <= h.n(); ++v) {
        if (h.degree(v) <= d - 1) low.push_back(v);
    }
    std::vector<std::vector<int>> low_dist;
    low_dist.reserve(low.size());
    for (int v : low) low_dist.push_back(bfs_within(h, {v}, t));

    // (5) no three vertices of degree <= d-1 pairwise within distance t
    for (std::size_t i = 0; i < low.size() && rep.property[4].ok; ++i) {
        for (std::size_t j = i + 1; j < low.size() && rep.property[4].ok; ++j) {
            int dij = low_dist[i][low[j]];
            if (dij == -1 || dij > t) continue;
            for (std::size_t m = j + 1; m < low.size(); ++m) {
                int dim = low_dist[i][low[m]];
                int djm = low_dist[j][low[m]];
                if (dim != -1 && dim <= t && djm != -1 && djm <= t) {
                    rep.property[4] = {false, "vertices " + std::to_string(low[i]) + "," +
                                                  std::to_string(low[j]) + "," +
                                                  std::to_string(low[m]) + " pairwise within " +
                                                  std::to_string(t)};
                    break;
                }
            }
        }
    }

    // (6) no degree <= d-1 vertex within distance t of a degree <= d-2 vertex
    for (std::size_t i = 0; i < low.size() && rep.property[5].ok; ++i) {
        for (int w = 1; w <= h.n(); ++w) {
            if (w == low[i] || h.degree(w) > d - 2) continue;
            int dv = low_dist[i][w];
            if (dv != -1 && dv <= t) {
                rep.property[5] = {false, "deg<=d-1 vertex " + std::to_string(low[i]) +
                                              " within " + std::to_string(t) + " of deg<=d-2 vertex " +
                                              std::to_string(w)};
                break;
            }
        }
    }

    // (7) every connected component has more than t vertices (d >= 3 only)
    if (d >= 3) {
        std::vector<char> seen(h.n() + 1, 0);
        for (int v = 1; v <= h.n() && rep.property[6].ok; ++v) {
            if (seen[v]) continue;
            VertexSet comp = ball(h, {v}, h.n());
            for (int w : comp) seen[w] = 1;
            if (static_cast<int>(comp.size()) <= t) {
                rep.property[6] = {false, "component " + vec_str(comp) + " has " +
                                              std::to_string(comp.size()) + " <= t vertices"};
            }
        }
    }
    return rep;
}

}  // namespace

PkReport pk_membership(const Graph& g, int l, int d, int k, double eps, double mu,
                       const PkOptions& opts, const PoissonCaps& caps) {
    if (!(eps > 0 && eps < d)) throw std::invalid_argument("pk_membership: need 0 < eps < d");
    if (!(mu > 0)) throw std::invalid_argument("pk_membership: need mu > 0");
    if (k < 0) throw std::invalid_argument("pk_membership: negative k");
    PkReport rep;
    rep.k = k;
    long long s = 1;
    for (int i = 0; i < k; ++i) s *= 5;
    rep.s = static_cast<int>(s);
    rep.t = static_cast<int>(5 * s);
    rep.eps = eps;
    rep.mu = mu;

    auto res = logic::xi_partition(g, logic::XiParams(l, d));
    if (std::holds_alternative<logic::XiFailure>(res)) {
        rep.xi_diagnostic = std::get<logic::XiFailure>(res).to_string();
        rep.overall = false;
        return rep;
    }
    rep.xi_ok = true;
    const auto& pi = std::get<decomp::Partition>(res);
    rep.rich_ok = decomp::is_rich(pi, mu * g.n());

    auto dres = decomp::decomposition_from_partition(g, pi, d);
    if (std::holds_alternative<decomp::DecompositionFailure>(dres)) {
        const auto& f = std::get<decomp::DecompositionFailure>(dres);
        rep.decomposition_diagnostic = "vertex " + std::to_string(f.vertex) + " has " +
                                       std::to_string(f.own_degree) + " own-part neighbours";
    } else {
        rep.decomposition_ok = true;
    }

    bool parts_ok = true;
    if (rep.decomposition_ok) {
        for (const auto& part : pi.parts()) {
            Graph h = induced_subgraph(g, part).graph;
            long long n_band = opts.whole_graph_n ? g.n() : h.n();
            rep.parts.push_back(check_part(h, d, rep.s, rep.t, eps, n_band, caps));
            parts_ok = parts_ok && rep.parts.back().all_ok(d);
        }
    }
    rep.overall = rep.xi_ok && rep.rich_ok && rep.decomposition_ok && parts_ok;
    return rep;
}

// ------------------------------------------------------- signatures

std::variant<PoissonSignature, SignatureFailure> signature(const Graph& g, int l, int d, int k,
                                                           const PoissonCaps& caps) {
    auto res = logic::xi_partition(g, logic::XiParams(l, d));
    if (std::holds_alternative<logic::XiFailure>(res)) {
        return SignatureFailure{std::get<logic::XiFailure>(res).to_string()};
    }
    const auto& pi = std::get<decomp::Partition>(res);
    long long t = 1;
    for (int i = 0; i < k; ++i) t *= 5;
    PoissonSignature sig;
    sig.l = l;
    sig.d = d;
    sig.k = k;
    sig.t = static_cast<int>(t);
    for (const auto& part : pi.parts()) {
        Graph h = induced_subgraph(g, part).graph;
        if (h.max_degree() > d) {
            return SignatureFailure{"part induced graph violates the degree bound d=" +
                                    std::to_string(d)};
        }
        sig.per_part.push_back(count_small_objects(h, d, sig.t, caps));
    }
    std::sort(sig.per_part.begin(), sig.per_part.end());
    return sig;
}

namespace {

std::string counts_json(const SmallObjectCounts& c) {
    std::ostringstream os;
    os << "{\"cycles\":[";
    for (std::size_t i = 0; i < c.cycles.size(); ++i) os << (i ? "," : "") << "\"" << c.cycles[i] << "\"";
    os << "],\"paths\":[";
    for (std::size_t i = 0; i < c.paths.size(); ++i) os << (i ? "," : "") << "\"" << c.paths[i] << "\"";
    os << "],\"q\":\"" << c.q << "\"}";
    return os.str();
}

}  // namespace

std::string PoissonSignature::to_json() const {
    std::ostringstream os;
    os << "{\"d\":" << d << ",\"k\":" << k << ",\"l\":" << l << ",\"parts\":[";
    for (std::size_t i = 0; i < per_part.size(); ++i) os << (i ? "," : "") << counts_json(per_part[i]);
    os << "],\"t\":" << t << "}";
    return os.str();
}

std::string PlusCertificate::to_json() const {
    std::ostringstream os;
    os << "{\"certificate\":\"";
    static const char* hex = "0123456789abcdef";
    for (unsigned char b : canonical_bytes) {
        os << hex[b >> 4] << hex[b & 0xf];
    }
    os << "\",\"signature\":" << sig.to_json() << "}";
    return os.str();
}

std::variant<PlusCertificate, SignatureFailure> signature_plus(const Graph& g, int l, int d, int k,
                                                               const PoissonCaps& caps) {
    auto sres = signature(g, l, d, k, caps);
    if (std::holds_alternative<SignatureFailure>(sres)) {
        return std::get<SignatureFailure>(sres);
    }
    auto pres = logic::xi_partition(g, logic::XiParams(l, d));
    const auto& pi = std::get<decomp::Partition>(pres);
    long long t = 1;
    for (int i = 0; i < k; ++i) t *= 5;

    // union of per-part NP balls (radius 5^k, objects sized 5^k), with the
    // original labels; cross edges enter via the induced subgraph on the union
    VertexSet uni;
    for (const auto& part : pi.parts()) {
        auto sub = induced_subgraph(g, part);
        VertexSet np = np_ball(sub.graph, d, k, static_cast<int>(t), caps);
        for (int v : np) uni.push_back(sub.to_original[v - 1]);
    }
    std::sort(uni.begin(), uni.end());

    auto sub = induced_subgraph(g, uni);
    if (sub.graph.n() > caps.max_np_vertices) {
        return SignatureFailure{"NP union exceeds the certificate cap of " +
                                std::to_string(caps.max_np_vertices) + " vertices"};
    }
    std::vector<int> base_colour(sub.graph.n());
    for (int i = 0; i < sub.graph.n(); ++i) base_colour[i] = pi.part_of(sub.to_original[i]);

    // minimise the canonical form over all part-colour permutations
    std::vector<int> perm(l);
    for (int i = 0; i < l; ++i) perm[i] = i + 1;
    std::string best;
    do {
        std::vector<int> colours(base_colour.size());
        for (std::size_t i = 0; i < colours.size(); ++i) colours[i] = perm[base_colour[i] - 1];
        std::string cert = canonical_form(sub.graph, colours, caps.max_np_vertices);
        if (best.empty() || cert < best) best = std::move(cert);
    } while (std::next_permutation(perm.begin(), perm.end()));

    return PlusCertificate{std::move(best), std::get<PoissonSignature>(sres)};
}

// ------------------------------------------------------- limit masses

namespace {

double poisson_factor(std::uint64_t count, double mean) {
    if (mean == 0.0) return count == 0 ? 1.0 : 0.0;
    double c = static_cast<double>(count);
    return std::exp(c * std::log(mean) - mean - std::lgamma(c + 1.0));
}

}  // namespace

double poisson_mass(const PoissonSignature& sig, const PoissonParams& params) {
    if (params.d != sig.d) throw std::invalid_argument("poisson_mass: degree bound mismatch");
    double mass = 1.0;
    const double deg_mean = sig.d >= 1 ? static_cast<double>(sig.d - 1) : 0.0;
    for (const auto& part : sig.per_part) {
        mass *= poisson_factor(part.q, deg_mean);
        for (int j = 3; j <= sig.t; ++j) {
            auto it = params.lambda.find(j);
            if (it == params.lambda.end()) {
                throw std::invalid_argument("poisson_mass: missing lambda_" + std::to_string(j));
            }
            if (!(it->second.value > 0)) throw std::invalid_argument("poisson_mass: lambda must be > 0");
            mass *= poisson_factor(part.cycle_count(j), it->second.value);
        }
        for (int j = 1; j <= sig.t; ++j) {
            auto it = params.mu.find(j);
            if (it == params.mu.end()) {
                throw std::invalid_argument("poisson_mass: missing mu_" + std::to_string(j));
            }
            if (!(it->second.value > 0)) throw std::invalid_argument("poisson_mass: mu must be > 0");
            mass *= poisson_factor(part.path_count(j), it->second.value);
        }
    }
    return mass;
}

FitStats empirical_fit(const std::vector<std::uint64_t>& samples, double mean) {
    if (samples.empty()) throw std::invalid_argument("empirical_fit: no samples");
    if (!(mean > 0)) throw std::invalid_argument("empirical_fit: mean must be positive");
    std::uint64_t qmax = 0;
    for (auto s : samples) qmax = std::max(qmax, s);
    std::vector<double> emp(qmax + 1, 0.0);
    const double n = static_cast<double>(samples.size());
    for (auto s : samples) emp[s] += 1.0 / n;

    std::vector<double> poi(qmax + 1, 0.0);
    poi[0] = std::exp(-mean);
    for (std::uint64_t q = 1; q <= qmax; ++q) poi[q] = poi[q - 1] * mean / static_cast<double>(q);

    FitStats out;
    double covered = 0;
    for (std::uint64_t q = 0; q <= qmax; ++q) {
        out.tv += std::abs(emp[q] - poi[q]);
        covered += poi[q];
    }
    out.tv = 0.5 * (out.tv + std::max(0.0, 1.0 - covered));  // tail beyond qmax is lumped

    // Pearson with the right tail pooled so expected counts stay >= 5
    std::uint64_t cut = qmax + 1;
    double tail = std::max(0.0, 1.0 - covered);
    while (cut > 0 && tail * n < 5.0) {
        --cut;
        tail += poi[cut];
    }
    double chisq = 0;
    int bins = 0;
    for (std::uint64_t q = 0; q < cut; ++q) {
        double expd = poi[q] * n;
        if (expd <= 0) continue;
        double obs = emp[q] * n;
        chisq += (obs - expd) * (obs - expd) / expd;
        ++bins;
    }
    if (tail > 0) {
        double obs = 0;
        for (std::uint64_t q = cut; q <= qmax; ++q) obs += emp[q] * n;
        double expd = tail * n;
        chisq += (obs - expd) * (obs - expd) / expd;
        ++bins;
    }
    out.chisq = chisq;
    out.chisq_bins = bins;
    return out;
}

}  // namespace pld::poisson
