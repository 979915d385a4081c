// midlayer: exact enumeration and structural analysis of maximal independent
// sets in the two-layer Boolean-lattice graphs B(n,k).
//
// Subcommands: build, enumerate, count, classify, matching, containers
// (basic | sapozhenko), iso audit, lowerbound [value], asympt, hujter-tuza.
// All outputs are machine-readable (JSON / JSONL / CSV, schema v1) and
// byte-deterministic for a fixed configuration and seed; MIDLAYER_THREADS
// overrides --workers. Exit codes: 0 success, 1 invalid input, 2 budget abort
// (partial results flagged).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>

#include "midlayer/asymptotics.hpp"
#include "midlayer/containers.hpp"
#include "midlayer/io.hpp"
#include "midlayer/isoperimetry.hpp"
#include "midlayer/lower_bound.hpp"
#include "midlayer/matching.hpp"
#include "midlayer/mis.hpp"
#include "midlayer/shadows.hpp"

using namespace midlayer;

namespace {

struct OutStream {
    std::ostream* os = &std::cout;
    std::ofstream file;

    void open(const std::string& path) {
        if (path.empty() || path == "-" || path == "stream" || path == "json" || path == "csv")
            return;
        file.open(path);
        if (!file) fail(errc::precondition_failed, "cannot open output file " + path);
        os = &file;
    }
};

int resolve_workers(int cli_workers) {
    if (const char* env = std::getenv("MIDLAYER_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return std::max(1, cli_workers);
}

LayerGraph build_from(int d, int n, int k, std::uint64_t budget) {
    if (d > 0) return LayerGraph::build(2 * d - 1, d, budget);
    require(n > 0 && k > 0, errc::invalid_layer, "supply --d or both --n and --k");
    return LayerGraph::build(n, k, budget);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact structural toolkit for maximal independent sets in B(n,k)"};
    app.require_subcommand(1);

    int d = 0, n = 0, k = 0, workers = 1, direction = 0, phi = 0, psi = 2, m = 0;
    int samples = 200, mmax = 0, max_m = 8, prec = 128;
    std::uint64_t budget = 1'000'000'000ull, seed = 0;
    std::int64_t stop_a = 0, stop_b = INT64_MAX;
    std::string out_path, format = "json", set_hex, family_path, emit;
    double j1_mult = -2, j2_mult = -2, u_mult = -2;
    int pair_limit = 50;

    auto add_graph_opts = [&](CLI::App* c) {
        c->add_option("--d", d, "self-complementary instance B(2d-1,d)");
        c->add_option("--n", n, "ground-set size");
        c->add_option("--k", k, "upper layer cardinality");
        c->add_option("--budget", budget, "node/vertex budget");
        c->add_option("--workers", workers, "worker threads (MIDLAYER_THREADS overrides)");
        c->add_option("--out", out_path, "output path ('-' = stdout)");
    };

    auto* cmd_build = app.add_subcommand("build", "emit the graph description JSON");
    add_graph_opts(cmd_build);

    auto* cmd_enum = app.add_subcommand("enumerate", "stream maximal independent sets");
    add_graph_opts(cmd_enum);
    cmd_enum->add_option("--format", format, "json (stats) | stream (hex per line)");

    auto* cmd_count = app.add_subcommand("count", "count maximal independent sets");
    add_graph_opts(cmd_count);
    std::string oracle_mode = "both";
    cmd_count->add_option("--oracle", oracle_mode, "both | primary | oracle");

    auto* cmd_classify = app.add_subcommand("classify", "per-MIS matching/typicality table");
    add_graph_opts(cmd_classify);
    cmd_classify->add_option("--j1-mult", j1_mult, "override J1 multiplier of C(2d-2,d-1)");
    cmd_classify->add_option("--j2-mult", j2_mult, "override J2 multiplier");
    cmd_classify->add_option("--u-mult", u_mult, "override U multiplier");

    auto* cmd_matching = app.add_subcommand("matching", "canonical matchings and M(I)");
    add_graph_opts(cmd_matching);
    cmd_matching->add_option("--direction", direction, "canonical matching direction");
    cmd_matching->add_option("--set", set_hex, "independent set as hex; emits M(I)");

    auto* cmd_containers = app.add_subcommand("containers", "container machinery");
    cmd_containers->require_subcommand(1);
    auto* cmd_basic = cmd_containers->add_subcommand("basic", "certificate transcripts per MIS");
    add_graph_opts(cmd_basic);
    cmd_basic->add_option("--stop-a", stop_a, "stop when |Z| <= a");
    cmd_basic->add_option("--stop-b", stop_b, "stop when |C| >= b");
    auto* cmd_sap = cmd_containers->add_subcommand("sapozhenko", "phi/psi approximation traces");
    add_graph_opts(cmd_sap);
    cmd_sap->add_option("--phi", phi, "phi parameter (default d/2 rounded up)");
    cmd_sap->add_option("--psi", psi, "psi parameter");
    cmd_sap->add_option("--seed", seed, "draw seed");
    cmd_sap->add_option("--pairs", pair_limit, "max harvested pairs");

    auto* cmd_iso = app.add_subcommand("iso", "isoperimetry checkers");
    cmd_iso->require_subcommand(1);
    auto* cmd_audit = cmd_iso->add_subcommand("audit", "CSV of inequality reports");
    add_graph_opts(cmd_audit);
    cmd_audit->add_option("--samples", samples, "random vertex sets to audit");
    cmd_audit->add_option("--seed", seed, "sampling seed");
    cmd_audit->add_option("--family", family_path, "set-family file: shadow/shift audit rows");

    auto* cmd_lb = app.add_subcommand("lowerbound", "the matching-based construction");
    add_graph_opts(cmd_lb);
    cmd_lb->add_option("--m", m, "defect count (0 = plain construction)");
    cmd_lb->add_option("--direction", direction, "construction direction (default 1)");
    cmd_lb->add_option("--emit", emit, "stream: emit each construction output");
    auto* cmd_lbv = cmd_lb->add_subcommand("value", "exact lower-bound series");
    cmd_lbv->add_option("--d", d, "instance parameter")->required();
    cmd_lbv->add_option("--mmax", mmax, "series truncation");
    cmd_lbv->add_option("--prec", prec, "precision bits");
    cmd_lbv->add_option("--budget", budget, "cap on the dominating bigint size in bits");
    cmd_lbv->add_option("--out", out_path, "output path");

    auto* cmd_asympt = app.add_subcommand("asympt", "main-formula evaluation");
    cmd_asympt->add_option("--d", d, "instance parameter")->required();
    cmd_asympt->add_option("--prec", prec, "precision bits");
    cmd_asympt->add_option("--budget", budget, "cap on the dominating bigint size in bits");
    cmd_asympt->add_option("--out", out_path, "output path");

    auto* cmd_ht = app.add_subcommand("hujter-tuza", "exhaustive triangle-free audit");
    cmd_ht->add_option("--max-m", max_m, "largest vertex count (<= 8)");
    cmd_ht->add_option("--budget", budget, "cap on audited graphs (abort exits 2)");
    cmd_ht->add_option("--out", out_path, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        workers = resolve_workers(workers);
        OutStream out;
        out.open(out_path);
        if (out_path == "stream") format = "stream";

        if (*cmd_build) {
            auto g = build_from(d, n, k, budget);
            *out.os << graph_json(g).dump() << "\n";
            return 0;
        }

        if (*cmd_enum) {
            auto g = build_from(d, n, k, budget);
            MisOptions o;
            o.workers = workers;
            o.node_budget = budget;
            if (format == "stream") {
                EnumerationStats stats = enumerate_mis(view_of(g), [&](const VertexSet& s) {
                    *out.os << s.to_hex() << "\n";
                    return true;
                }, o);
                std::cerr << stats_json(stats).dump() << "\n";
                return stats.aborted ? 2 : 0;
            }
            EnumerationStats stats = count_mis_stats(view_of(g), o);
            *out.os << stats_json(stats).dump() << "\n";
            return stats.aborted ? 2 : 0;
        }

        if (*cmd_count) {
            auto g = build_from(d, n, k, budget);
            MisOptions o;
            o.workers = workers;
            o.node_budget = budget;
            ordered_json j;
            j["schema"] = "v1";
            j["n"] = g.n;
            j["k"] = g.k;
            bool aborted = false;
            if (oracle_mode != "oracle") {
                auto stats = count_mis_stats(view_of(g), o);
                j["total"] = to_decimal(stats.total);
                j["elapsed_ms"] = int(stats.elapsed_ms);
                j["workers"] = stats.workers;
                aborted = aborted || stats.aborted;
            }
            if (oracle_mode != "primary")
                j["oracle_total"] = to_decimal(count_mis_oracle(view_of(g), o));
            if (oracle_mode == "both") j["agree"] = j["total"] == j["oracle_total"];
            if (aborted) j["aborted"] = true;
            *out.os << j.dump() << "\n";
            return aborted ? 2 : 0;
        }

        if (*cmd_classify) {
            auto g = build_from(d, n, k, budget);
            auto thr = ClassificationThresholds::defaults(g);
            Rational base = BigInt(binomial(g.n - 1, g.k - 1));
            if (j1_mult > -2) thr.j1 = Rational(j1_mult) * base;
            if (j2_mult > -2) thr.j2 = Rational(j2_mult) * base;
            if (u_mult > -2) thr.u = Rational(u_mult) * base;
            if (thr.degenerate)
                std::cerr << "warning: default thresholds are degenerate at d=" << g.k
                          << " (a multiplier falls outside (0,1))\n";
            *out.os << "mis_hex,matching_size,beta,best_k,in_J1,in_J2\n";
            MisOptions o;
            o.workers = workers;
            o.node_budget = budget;
            enumerate_mis(view_of(g), [&](const VertexSet& I) {
                auto prof = direction_profile(g, I);
                auto best = classify_typical(g, I);
                *out.os << I.to_hex() << "," << prof.matching_size << ","
                        << rational_to_string(prof.beta) << ","
                        << (best ? std::to_string(*best) : std::string("-")) << ","
                        << (Rational(prof.matching_size) > thr.j1 ? 1 : 0) << ","
                        << (Rational(prof.matching_size) > thr.j2 ? 1 : 0) << "\n";
                return true;
            }, o);
            return 0;
        }

        if (*cmd_matching) {
            auto g = build_from(d, n, k, budget);
            ordered_json j;
            j["schema"] = "v1";
            if (!set_hex.empty()) {
                VertexSet I = VertexSet::from_hex(std::size_t(g.vertex_count()), set_hex);
                MatchingSearchOptions mo;
                mo.node_budget = budget;
                if (direction >= 1) mo.prefer_direction = direction;
                auto M = assign_matching(g, I, mo);
                j["set"] = I.to_hex();
                j["size"] = M.size();
                ordered_json edges = ordered_json::array();
                for (auto& e : M.edges) edges.push_back(ordered_json::array({e.first, e.second}));
                j["edges"] = std::move(edges);
                auto prof = direction_profile(g, I);
                j["beta"] = rational_to_string(prof.beta);
                j["direction_counts"] = prof.counts;
            } else {
                require(direction >= 1, errc::direction_out_of_range,
                        "matching needs --set or --direction");
                auto cm = g.canonical_matching(direction);
                j["direction"] = cm.direction;
                j["size"] = cm.edges.size();
                ordered_json edges = ordered_json::array();
                for (auto& e : cm.edges) edges.push_back(ordered_json::array({e.first, e.second}));
                j["edges"] = std::move(edges);
            }
            *out.os << j.dump() << "\n";
            return 0;
        }

        if (*cmd_basic) {
            auto g = build_from(d, n, k, budget);
            ContainerThresholds t;
            t.a_threshold = stop_a;
            t.b_threshold = stop_b;
            MisOptions o;
            o.workers = workers;
            o.node_budget = budget;
            enumerate_mis(view_of(g), [&](const VertexSet& I) {
                auto c = run_basic_container(view_of(g), I, t);
                *out.os << certificate_json(c).dump() << "\n";
                return true;
            }, o);
            return 0;
        }

        if (*cmd_sap) {
            auto g = build_from(d, n, k, budget);
            if (phi <= 0) phi = (g.k + 1) / 2;
            psi = std::max(2, std::min(psi, g.k));
            int emitted = 0;
            MisOptions o;
            o.workers = workers;
            o.node_budget = budget;
            try {
                enumerate_mis(view_of(g), [&](const VertexSet& I) {
                    for (auto& p : harvest_g1_pairs(g, I)) {
                        auto ctx = ApproxContext::from(g, p);
                        auto ph = phi_approx(ctx, phi, seed);
                        bool phi_ok = verify_phi(ctx, phi, ph.F_prime).ok;
                        auto ps = psi_approx(ctx, ph, psi);
                        bool psi_ok = verify_psi(ctx, psi, ps.S, ps.F).ok;
                        std::optional<Rational> sf;
                        if (psi_ok && psi < g.k) sf = sf_bound_report(ctx, psi, ps.S, ps.F).slack;
                        *out.os << approx_trace_json(ps, phi_ok, psi_ok, sf ? &*sf : nullptr).dump()
                                << "\n";
                        if (++emitted >= pair_limit) return false;
                    }
                    return true;
                }, o);
            } catch (const error& e) {
                if (e.code != errc::sink_aborted) throw;  // pair limit reached mid-stream
            }
            return 0;
        }

        if (*cmd_audit) {
            *out.os << "variant,lhs,rhs,slack,hypothesis_met\n";
            if (!family_path.empty()) {
                std::ifstream in(family_path);
                require(bool(in), errc::precondition_failed, "cannot open " + family_path);
                auto F = read_family(in);
                for (int q = 0; q <= std::min(F.m, 3); ++q)
                    *out.os << iso_report_csv_row(shadow_bound_report(F, q)) << "\n";
                for (int i = 2; i <= F.n; ++i) {
                    auto SF = shift(F, i);
                    IsoReport r = IsoReport::make("shift-size-i" + std::to_string(i),
                                                  BigInt(SF.size()), BigInt(F.size()));
                    *out.os << iso_report_csv_row(r) << "\n";
                }
                return 0;
            }
            auto g = build_from(d, n, k, budget);
            InducedMatching empty;
            for (int s = 0; s < samples; ++s) {
                VertexSet A = g.empty_set();
                g.upper_set().for_each([&](int v) {
                    if (rng_bernoulli(0.3, seed, std::uint64_t(s), std::uint64_t(v)))
                        A.set(std::size_t(v));
                });
                *out.os << iso_report_csv_row(vertex_iso_report(g, A, IsoVariant::vertex_i)) << "\n";
                if (g.k >= 2)
                    *out.os << iso_report_csv_row(vertex_iso_report(g, A, IsoVariant::vertex_iii))
                            << "\n";
                *out.os << iso_report_csv_row(adjacent_triplet_report(g, A)) << "\n";
                *out.os << iso_report_csv_row(bey_bound_report(g, A)) << "\n";
                *out.os << iso_report_csv_row(edge_iso_report(g, A, empty)) << "\n";
            }
            return 0;
        }

        if (*cmd_lbv) {
            require(binomial(2 * d - 2, d - 1) <= BigInt(budget), errc::budget_exceeded,
                    "series exponent exceeds the bit budget");
            auto v = lower_bound_value(d, mmax, unsigned(prec));
            ordered_json j;
            j["schema"] = "v1";
            j["d"] = d;
            j["mmax"] = mmax;
            j["y"] = rational_to_string(v.y);
            j["log2_sum"] = v.log2_value.str();
            j["taylor_remainder_bound"] = v.taylor_remainder_bound.str();
            *out.os << j.dump() << "\n";
            return 0;
        }

        if (*cmd_lb) {
            auto g = build_from(d, n, k, budget);
            int dir = direction >= 1 ? direction : 1;
            require(m == 0, errc::precondition_failed,
                    "the CLI drives the defect-free construction; m >= 1 runs via the library");
            ordered_json j;
            j["schema"] = "v1";
            j["direction"] = dir;
            std::set<std::string> distinct;
            BigInt total = enumerate_construction_m0(
                g, dir,
                [&](const VertexSet& I) {
                    if (emit == "stream") *out.os << I.to_hex() << "\n";
                    distinct.insert(I.to_hex());
                    return true;
                },
                budget);
            j["total"] = to_decimal(total);
            j["distinct"] = distinct.size();
            if (emit == "stream") std::cerr << j.dump() << "\n";
            else *out.os << j.dump() << "\n";
            return 0;
        }

        if (*cmd_asympt) {
            require(binomial(2 * d - 2, d - 1) <= BigInt(budget), errc::budget_exceeded,
                    "formula terms exceed the bit budget");
            auto est = main_formula_log2(d, unsigned(prec));
            auto gap = stirling_gap(d, unsigned(prec));
            ordered_json j;
            j["schema"] = "v1";
            j["d"] = d;
            j["precision_bits"] = est.precision_bits;
            j["prefactor"] = est.prefactor;
            j["linear_term"] = to_decimal(est.linear_term);
            j["exponent_rational"] = rational_to_string(est.exponent_rational);
            j["log2_total"] = est.log2_total.str();
            j["stirling_expansion"] = gap.expansion.str();
            j["stirling_gap_times_sqrt_d"] = gap.gap_times_sqrt_d.str();
            *out.os << j.dump() << "\n";
            return 0;
        }

        if (*cmd_ht) {
            require(max_m >= 1 && max_m <= 8, errc::precondition_failed,
                    "the exhaustive audit runs for m <= 8");
            ordered_json j;
            j["schema"] = "v1";
            long long graphs = 0, violations = 0, equalities = 0, matchings = 0;
            bool ht_aborted = false;
            for (int mm = 1; mm <= max_m && !ht_aborted; ++mm) {
                for_each_triangle_free(mm, [&](const std::vector<std::uint32_t>& adj) {
                    if (std::uint64_t(graphs) >= budget) {
                        ht_aborted = true;
                        return;
                    }
                    ++graphs;
                    std::uint64_t cnt = count_mis_small(adj);
                    BigInt sq = BigInt(cnt) * cnt;
                    BigInt lim = BigInt(1) << unsigned(mm);
                    bool pm = true;
                    for (int v = 0; v < mm; ++v)
                        if (popcount64(adj[std::size_t(v)]) != 1) pm = false;
                    if (sq > lim || ((sq == lim) != pm)) ++violations;
                    if (sq == lim) ++equalities;
                    if (pm) ++matchings;
                });
            }
            j["max_m"] = max_m;
            j["graphs"] = graphs;
            j["violations"] = violations;
            j["equality_count"] = equalities;
            j["perfect_matchings"] = matchings;
            if (ht_aborted) j["aborted"] = true;
            *out.os << j.dump() << "\n";
            if (ht_aborted) return 2;
            return violations == 0 ? 0 : 1;
        }

        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code == errc::budget_exceeded ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
