// ffil -- finite-field incidence lab command-line frontend.
//
// Exit codes: 0 all verdicts true; 1 a verified inequality came out false
// (falsification); 2 invalid input; 3 a resource cap was exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ffil/experiments.hpp"
#include "ffil/kernels.hpp"
#include "ffil/report.hpp"
#include "ffil/rng.hpp"
#include "ffil/runconfig.hpp"
#include "ffil/spectral.hpp"
#include "ffil/suite.hpp"

namespace {

using namespace ffil;

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < e; ++i) out *= base;
    return out;
}

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream os(cfg.out_path, std::ios::binary);
        if (!os) throw invalid_input("cannot open output file: " + cfg.out_path);
        os << payload;
        if (!payload.empty() && payload.back() != '\n') os << '\n';
    }
}

template <typename Report>
std::string render(const RunConfig& cfg, const Report& r) {
    if (cfg.format == "csv") return report::csv_header(r) + "\n" + report::csv_row(r);
    return report::to_json(r);
}

AlgebraicGraph graph_from_config(const RunConfig& cfg) {
    if (cfg.kind == "sp" || cfg.kind == "sum-product") {
        return AlgebraicGraph::sum_product(Ring(parse_odd_q(cfg.q_text)), cfg.d);
    }
    Field F = field_from_config(cfg);
    DiagonalForm Q = form_from_config(cfg, F);
    if (cfg.kind == "cayley" || cfg.kind == "cayley_q") {
        return AlgebraicGraph::cayley_q(std::move(Q));
    }
    if (cfg.kind == "cayley-prime" || cfg.kind == "cayley_qprime") {
        return AlgebraicGraph::cayley_qprime(std::move(Q));
    }
    throw invalid_input("unknown graph kind: " + cfg.kind);
}

// sampled or full or file-provided point/sphere sets for the field geometry
std::pair<PointSet, SphereSet> field_instance(const RunConfig& cfg, const Field& F,
                                              const DiagonalForm& Q) {
    const std::uint64_t q = F.q();
    const std::uint32_t d = Q.d();
    if (!cfg.points_file.empty() || !cfg.spheres_file.empty()) {
        if (cfg.points_file.empty() || cfg.spheres_file.empty()) {
            throw invalid_input("--points-file and --spheres-file go together");
        }
        std::ifstream pf(cfg.points_file), sf(cfg.spheres_file);
        if (!pf) throw invalid_input("cannot open " + cfg.points_file);
        if (!sf) throw invalid_input("cannot open " + cfg.spheres_file);
        return {read_points_csv(pf, F, d), read_spheres_csv(sf, F, d)};
    }
    if (cfg.full_sets) return {all_points(q, d), all_spheres(F, d)};
    const std::uint64_t npoints = ipow(q, d);
    const std::uint64_t nspheres = ipow(q, d + 1);
    std::uint64_t ps = cfg.p_size == 0 ? std::min<std::uint64_t>(10, npoints) : cfg.p_size;
    std::uint64_t ss = cfg.s_size == 0 ? std::min<std::uint64_t>(10, nspheres) : cfg.s_size;
    if (ps > npoints || ss > nspheres) throw invalid_input("sample size exceeds the space");
    rng::Rand rand(cfg.seed);
    auto pc = rng::sample_without_replacement(npoints, ps, rand);
    auto sc = rng::sample_without_replacement(nspheres, ss, rand);
    return {points_from_codes(pc, q, d), spheres_from_codes(sc, q, d)};
}

PointSet field_point_instance(const RunConfig& cfg, const Field& F, std::uint32_t d) {
    const std::uint64_t q = F.q();
    const std::uint64_t npoints = ipow(q, d);
    if (cfg.full_sets) return all_points(q, d);
    std::uint64_t sz = cfg.p_size == 0 ? std::min<std::uint64_t>(30, npoints) : cfg.p_size;
    if (sz > npoints) throw invalid_input("sample size exceeds the space");
    rng::Rand rand(cfg.seed);
    return points_from_codes(rng::sample_without_replacement(npoints, sz, rand), q, d);
}

int cmd_cert(const RunConfig& cfg) {
    AlgebraicGraph g = graph_from_config(cfg);
    SpectralCert cert = certify(g, cfg.jobs);
    emit(cfg, report::to_json(cert));
    return cert.verdict ? kExitOk : kExitFalsified;
}

int cmd_spectrum(const RunConfig& cfg) {
    AlgebraicGraph g = graph_from_config(cfg);
    SpectralCert cert = certify(g, cfg.jobs);
    std::string csv = g.is_cayley() ? report::spectrum_csv(cayley_spectrum(g, cfg.jobs))
                                    : report::spectrum_csv(symmetric_spectrum(g));
    emit(cfg, csv + report::to_json(cert));
    if (!cfg.gnuplot_path.empty()) {
        std::ofstream gp(cfg.gnuplot_path);
        if (!gp) throw invalid_input("cannot open " + cfg.gnuplot_path);
        std::string csv_name = cfg.out_path.empty() ? "spectrum.csv" : cfg.out_path;
        gp << report::gnuplot_script(csv_name,
                                     std::string(graph_kind_name(g.kind())) + " eigenvalues");
    }
    return cert.verdict ? kExitOk : kExitFalsified;
}

int cmd_incidence(const RunConfig& cfg) {
    Field F = field_from_config(cfg);
    DiagonalForm Q = form_from_config(cfg, F);
    auto [P, S] = field_instance(cfg, F, Q);
    IncidenceReport r = incidence_bound_report(P, S, Q);
    emit(cfg, render(cfg, r));
    return r.verdict ? kExitOk : kExitFalsified;
}

int cmd_ring_incidence(const RunConfig& cfg) {
    Ring R(parse_odd_q(cfg.q_text));
    const std::uint64_t q = R.q();
    const std::uint32_t d = cfg.d;
    PointSet P;
    RingSphereSet S;
    if (cfg.full_sets) {
        P = all_points(q, d);
        S = all_ring_spheres(R, d);
    } else {
        const std::uint64_t npoints = ipow(q, d);
        const std::uint64_t nspheres = ipow(q, d + 1);
        std::uint64_t ps = cfg.p_size == 0 ? std::min<std::uint64_t>(10, npoints) : cfg.p_size;
        std::uint64_t ss = cfg.s_size == 0 ? std::min<std::uint64_t>(10, nspheres) : cfg.s_size;
        if (ps > npoints || ss > nspheres) throw invalid_input("sample size exceeds the space");
        rng::Rand rand(cfg.seed);
        P = points_from_codes(rng::sample_without_replacement(npoints, ps, rand), q, d);
        S = ring_spheres_from_codes(rng::sample_without_replacement(nspheres, ss, rand), q, d);
    }
    IncidenceReport r = ring_incidence_bound_report(P, S, R, d);
    emit(cfg, render(cfg, r));
    return r.verdict ? kExitOk : kExitFalsified;
}

int cmd_pinned(const RunConfig& cfg) {
    Field F = field_from_config(cfg);
    DiagonalForm Q = form_from_config(cfg, F);
    PointSet E = field_point_instance(cfg, F, Q.d());
    PinnedReport r = pinned_distance_report(E, Q, cfg.c);
    emit(cfg, render(cfg, r));
    return (r.verdict && r.average_ok) ? kExitOk : kExitFalsified;
}

int cmd_random(const RunConfig& cfg) {
    Field F = field_from_config(cfg);
    DiagonalForm Q = form_from_config(cfg, F);
    RandomTrialsReport r = random_incidence_trials(Q, cfg.t, cfg.trials, cfg.seed, cfg.jobs);
    emit(cfg, render(cfg, r));
    return kExitOk;  // a measurement, not an inequality
}

int cmd_isosceles(const RunConfig& cfg) {
    Field F = field_from_config(cfg);
    DiagonalForm Q = form_from_config(cfg, F);
    PointSet E = field_point_instance(cfg, F, Q.d());
    TripleReport r = isosceles_report(E, Q);
    emit(cfg, render(cfg, r));
    return (r.identity_ok && r.bound_ok) ? kExitOk : kExitFalsified;
}

int cmd_t2(const RunConfig& cfg) {
    Field F = field_from_config(cfg);
    DiagonalForm Q = form_from_config(cfg, F);
    PointSet E = field_point_instance(cfg, F, Q.d());
    T2Report r = t2_report(E, Q);
    emit(cfg, render(cfg, r));
    return r.verdict ? kExitOk : kExitFalsified;
}

int cmd_ddsubset(const RunConfig& cfg) {
    Field F = field_from_config(cfg);
    DiagonalForm Q = form_from_config(cfg, F);
    PointSet E = field_point_instance(cfg, F, Q.d());
    DdSubsetReport r;
    if (cfg.method == "greedy") {
        DdOrder order;
        order.kind = cfg.order == "shuffle" ? DdOrder::shuffle : DdOrder::lex;
        order.seed = cfg.seed;
        r = greedy_ddsubset(E, Q, order);
    } else if (cfg.method == "deletion") {
        r = deletion_ddsubset(E, Q, cfg.seed);
    } else {
        throw invalid_input("unknown method: " + cfg.method);
    }
    emit(cfg, report::to_json(r));
    return r.valid ? kExitOk : kExitFalsified;
}

int cmd_suite(const RunConfig& cfg) {
    SuiteOptions opts;
    opts.seed = cfg.seed;
    opts.jobs = cfg.jobs;
    opts.fail_fast = !cfg.keep_going;
    SuiteOutcome out = run_acceptance(opts);
    emit(cfg, out.log);
    return out.all_pass ? kExitOk : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ffil -- incidence geometry over finite fields and rings: "
                 "spectral certification and inequality verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("FFIL_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (...) {
            std::cerr << "ignoring unparseable FFIL_SEED\n";
        }
    }

    auto add_common = [&cfg](CLI::App* sub, bool field_cmd, bool q_required = true) {
        auto* qopt = sub->add_option(
            "--q", cfg.q_text, field_cmd ? "field size, prime power or p^k" : "odd modulus");
        if (q_required) qopt->required();
        sub->add_option("--d", cfg.d, "dimension");
        sub->add_option("--seed", cfg.seed, "random seed (default: FFIL_SEED or 1)");
        sub->add_option("--jobs", cfg.jobs, "worker thread bound");
        sub->add_option("--format", cfg.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "write the report here instead of stdout");
        if (field_cmd) {
            sub->add_option("--exps", [&cfg](const std::vector<std::string>& v) {
                    cfg.exps = parse_uint_list(v.back());
                    return true;
                }, "comma-separated exponents c_1..c_d (default all 2)");
            sub->add_option("--coeffs", [&cfg](const std::vector<std::string>& v) {
                    cfg.coeffs = parse_uint_list(v.back());
                    return true;
                }, "comma-separated coefficients a_1..a_d (default all 1)");
            sub->add_option("--exp-cap", cfg.exp_cap, "exponent cap (default 16)");
        }
    };

    auto* cert = app.add_subcommand("cert", "spectral certificate for one graph");
    add_common(cert, true);
    cert->add_option("--kind", cfg.kind, "cayley|cayley-prime|sp");

    auto* spectrum = app.add_subcommand("spectrum", "full spectrum CSV plus certificate");
    add_common(spectrum, true);
    spectrum->add_option("--kind", cfg.kind, "cayley|cayley-prime|sp");
    spectrum->add_option("--gnuplot", cfg.gnuplot_path, "write a gnuplot script here");

    auto* incidence = app.add_subcommand("incidence", "point-sphere incidence bound check");
    add_common(incidence, true);
    incidence->add_flag("--full", cfg.full_sets, "use all points and all spheres");
    incidence->add_option("--psize", cfg.p_size, "points to sample");
    incidence->add_option("--ssize", cfg.s_size, "spheres to sample");
    incidence->add_option("--points-file", cfg.points_file, "points CSV");
    incidence->add_option("--spheres-file", cfg.spheres_file, "spheres CSV");

    auto* ring = app.add_subcommand("ring-incidence", "incidence bound check over Z_q");
    add_common(ring, false);
    ring->add_flag("--full", cfg.full_sets, "use all points and all spheres");
    ring->add_option("--psize", cfg.p_size, "points to sample");
    ring->add_option("--ssize", cfg.s_size, "spheres to sample");

    auto* pinned = app.add_subcommand("pinned", "pinned distance-set counts");
    add_common(pinned, true);
    pinned->add_option("--c", cfg.c, "pin parameter in (0,1)");
    pinned->add_flag("--full", cfg.full_sets, "use the full space as E");
    pinned->add_option("--size", cfg.p_size, "size of the random E");

    auto* random = app.add_subcommand("random", "random point/sphere incidence trials");
    add_common(random, true);
    random->add_option("--t", cfg.t, "points and spheres per trial");
    random->add_option("--trials", cfg.trials, "number of trials");

    auto* iso = app.add_subcommand("isosceles", "isosceles triple accounting");
    add_common(iso, true);
    iso->add_flag("--full", cfg.full_sets, "use the full space as E");
    iso->add_option("--size", cfg.p_size, "size of the random E");

    auto* t2 = app.add_subcommand("t2", "pair-coincidence count bound");
    add_common(t2, true);
    t2->add_flag("--full", cfg.full_sets, "use the full space as E");
    t2->add_option("--size", cfg.p_size, "size of the random E");

    auto* dd = app.add_subcommand("ddsubset", "extract a distinct-distance subset");
    add_common(dd, true);
    dd->add_flag("--full", cfg.full_sets, "use the full space as E");
    dd->add_option("--size", cfg.p_size, "size of the random E");
    dd->add_option("--method", cfg.method, "greedy|deletion");
    dd->add_option("--order", cfg.order, "greedy scan order: lex|shuffle");

    auto* suite = app.add_subcommand("suite", "run the full verification suite");
    add_common(suite, false, /*q_required=*/false);
    suite->add_flag("--keep-going", cfg.keep_going,
                    "run every criterion even after a failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (cert->parsed()) return cmd_cert(cfg);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (incidence->parsed()) return cmd_incidence(cfg);
        if (ring->parsed()) return cmd_ring_incidence(cfg);
        if (pinned->parsed()) return cmd_pinned(cfg);
        if (random->parsed()) return cmd_random(cfg);
        if (iso->parsed()) return cmd_isosceles(cfg);
        if (t2->parsed()) return cmd_t2(cfg);
        if (dd->parsed()) return cmd_ddsubset(cfg);
        if (suite->parsed()) return cmd_suite(cfg);
        std::cerr << "no subcommand\n";
        return kExitInvalid;
    } catch (const invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const cap_exceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    }
}
