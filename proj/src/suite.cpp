#include "ffil/suite.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <tuple>

#include "ffil/rng.hpp"
#include "ffil/spectral.hpp"

namespace ffil {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < e; ++i) out *= base;
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

Field field_for(std::uint64_t q) {
    switch (q) {
        case 9: return Field::make(3, 2);
        case 25: return Field::make(5, 2);
        case 27: return Field::make(3, 3);
        default: return Field::make(static_cast<std::uint32_t>(q), 1);
    }
}

DiagonalForm sum_of_squares(const Field& F, std::uint32_t d) {
    return DiagonalForm::make(F, std::vector<Felem>(d, 1), std::vector<std::uint32_t>(d, 2));
}

std::string exps_label(const DiagonalForm& Q) {
    std::string out;
    for (std::size_t i = 0; i < Q.exps().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(Q.exps()[i]);
    }
    return out;
}

struct CertEntry {
    std::string label;
    AlgebraicGraph graph;
    SpectralCert cert;
};

struct SuiteState {
    SuiteOptions opts;
    std::vector<CertEntry> certs;  // filled by the certification criteria
};

using CriterionFn = std::function<std::pair<bool, std::string>(SuiteState&)>;

struct Criterion {
    int id;
    std::string name;
    CriterionFn fn;
};

// ---- criterion 1: Cayley digraph certification grid -------------------------

std::pair<bool, std::string> c1_cayley_grid(SuiteState& st) {
    std::ostringstream detail;
    int entries = 0, passed = 0;
    std::vector<std::string> failures;
    for (std::uint64_t q : {3, 5, 7, 9}) {
        Field F = field_for(q);
        for (std::uint32_t d : {1u, 2u}) {
            std::vector<DiagonalForm> forms;
            forms.push_back(sum_of_squares(F, d));
            if (d == 2 && F.p() != 3) {
                forms.push_back(DiagonalForm::make(F, {1, 1}, {2, 3}));
            }
            for (auto& Q : forms) {
                AlgebraicGraph g = AlgebraicGraph::cayley_q(Q);
                SpectralCert cert = certify(g, st.opts.jobs);
                ++entries;
                bool trivial_ok =
                    std::abs(cert.trivial - static_cast<double>(cert.degree)) <=
                    1e-9 * static_cast<double>(cert.degree);
                bool ok = cert.verdict && trivial_ok;
                if (ok) {
                    ++passed;
                } else {
                    failures.push_back("q=" + std::to_string(q) + " d=" + std::to_string(d) +
                                       " exps=" + exps_label(Q) + " lambda=" + fmt(cert.lambda) +
                                       " bound=" + fmt(cert.bound));
                }
                st.certs.push_back({"cayley_q q=" + std::to_string(q) + " d=" +
                                        std::to_string(d) + " exps=" + exps_label(Q),
                                    std::move(g), cert});
            }
        }
    }
    // frozen modulus multiset for (q=3, d=1, x^2): {3, sqrt(3) x6, 0 x2}
    bool multiset_ok = true;
    {
        Field F3 = field_for(3);
        auto spec = cayley_spectrum(AlgebraicGraph::cayley_q(sum_of_squares(F3, 1)));
        std::vector<double> mods;
        for (auto z : spec) mods.push_back(std::abs(z));
        std::sort(mods.begin(), mods.end());
        const double s3 = std::sqrt(3.0);
        std::vector<double> want{0, 0, s3, s3, s3, s3, s3, s3, 3};
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (std::abs(mods[i] - want[i]) > 1e-9) multiset_ok = false;
        }
    }
    bool pass = (passed == entries) && multiset_ok;
    detail << passed << "/" << entries << " grid entries within q^(d/2); "
           << "(3,1,x^2) modulus multiset " << (multiset_ok ? "exact" : "MISMATCH");
    for (const auto& f : failures) detail << "; FALSIFIED " << f;
    return {pass, detail.str()};
}

// ---- criterion 2: doubled-form Cayley graphs ---------------------------------

std::pair<bool, std::string> c2_qprime(SuiteState& st) {
    std::ostringstream detail;
    bool pass = true;
    for (std::uint64_t q : {3, 5}) {
        Field F = field_for(q);
        AlgebraicGraph g = AlgebraicGraph::cayley_qprime(sum_of_squares(F, 1));
        SpectralCert cert = certify(g, st.opts.jobs);
        bool trivial_ok = std::abs(cert.trivial - static_cast<double>(cert.degree)) <=
                          1e-9 * static_cast<double>(cert.degree);
        bool ok = cert.verdict && trivial_ok &&
                  std::abs(cert.bound - static_cast<double>(q)) < 1e-12;
        pass = pass && ok;
        detail << "q=" << q << " lambda=" << fmt(cert.lambda) << " bound=" << fmt(cert.bound)
               << (ok ? " ok; " : " FAIL; ");
        st.certs.push_back({"cayley_qprime q=" + std::to_string(q) + " d=1", std::move(g), cert});
    }
    return {pass, detail.str()};
}

// ---- criterion 3: sum-product graph certification ------------------------------

std::pair<bool, std::string> c3_sum_product(SuiteState& st) {
    std::ostringstream detail;
    bool pass = true;
    const std::pair<std::uint64_t, std::uint32_t> grid[] = {{5, 1}, {9, 1}, {15, 1}, {5, 2}};
    for (auto [q, d] : grid) {
        AlgebraicGraph g = AlgebraicGraph::sum_product(Ring(q), d);
        SpectralCert cert = certify(g, st.opts.jobs);
        verify_regularity(g);  // throws on any in/out-degree violation
        bool trivial_ok = std::abs(cert.trivial - static_cast<double>(cert.degree)) <=
                          1e-6 * static_cast<double>(cert.degree);
        bool ok = cert.verdict && trivial_ok;
        pass = pass && ok;
        detail << "q=" << q << " d=" << d << " lambda=" << fmt(cert.lambda)
               << " bound=" << fmt(cert.bound) << (cert.vacuous ? " (vacuous)" : "")
               << (ok ? " ok; " : " FAIL; ");
        st.certs.push_back({"sum_product q=" + std::to_string(q) + " d=" + std::to_string(d),
                            std::move(g), cert});
    }
    return {pass, detail.str()};
}

// ---- criterion 4: eigenvector residuals -----------------------------------------

std::pair<bool, std::string> c4_residuals(SuiteState& st) {
    double worst_rel = 0;
    int graphs = 0;
    for (const CertEntry& e : st.certs) {
        if (!e.graph.is_cayley() || e.graph.n() > 2000) continue;
        ++graphs;
        rng::Rand rand(rng::derive(st.opts.seed, 4000 + graphs));
        for (int i = 0; i < 50; ++i) {
            std::uint64_t m = rand.below(e.graph.n());
            double resid = eigvec_residual(e.graph, m);
            worst_rel = std::max(worst_rel, resid / static_cast<double>(e.graph.degree()));
        }
    }
    bool pass = worst_rel <= 1e-9;
    return {pass, std::to_string(graphs) + " graphs x 50 characters, worst residual/degree=" +
                      fmt(worst_rel)};
}

// ---- criterion 5: trace and Parseval identities ----------------------------------

std::pair<bool, std::string> c5_identities(SuiteState& st) {
    // sum of eigenvalues = trace = loop count (n for the Cayley kinds, which
    // carry one loop per vertex); sum of squared moduli = n * degree
    bool pass = true;
    double worst_trace = 0, worst_parseval = 0;
    for (const CertEntry& e : st.certs) {
        double n = static_cast<double>(e.cert.n);
        double nd = n * static_cast<double>(e.cert.degree);
        double trace_target = static_cast<double>(e.cert.loops);
        double tr_rel = std::abs(e.cert.eig_sum - trace_target) / std::max(1.0, trace_target);
        double pv_rel = std::abs(e.cert.eig_sq_sum - nd) / nd;
        if (e.graph.is_cayley() && e.cert.loops != e.cert.n) pass = false;  // one loop per vertex
        worst_trace = std::max(worst_trace, tr_rel);
        worst_parseval = std::max(worst_parseval, pv_rel);
    }
    pass = pass && worst_trace <= 1e-6 && worst_parseval <= 1e-6;
    return {pass, "worst trace rel err=" + fmt(worst_trace) +
                      ", worst parseval rel err=" + fmt(worst_parseval) + " over " +
                      std::to_string(st.certs.size()) + " graphs"};
}

// ---- criterion 6: field incidence inequality --------------------------------------

std::pair<bool, std::string> c6_incidence_field(SuiteState& st) {
    std::ostringstream detail;
    bool pass = true;
    int violations = 0;
    bool exact_ok = true;
    int cfg_index = 0;
    for (std::uint64_t q : {3, 5}) {
        Field F = field_for(q);
        for (std::uint32_t d : {1u, 2u}) {
            DiagonalForm Q = sum_of_squares(F, d);
            PointSet fullP = all_points(q, d);
            SphereSet fullS = all_spheres(F, d);
            IncidenceReport full = incidence_bound_report(fullP, fullS, Q);
            if (!full.verdict) ++violations;
            if (q == 3 && d == 1) {
                exact_ok = (full.count == 9) && (full.main == 9.0);
            }
            rng::Rand rand(rng::derive(st.opts.seed, 6000 + cfg_index));
            ++cfg_index;
            const std::uint64_t npoints = ipow(q, d);
            const std::uint64_t nspheres = ipow(q, d + 1);
            for (int i = 0; i < 1000; ++i) {
                std::uint64_t ps = 1 + rand.below(npoints);
                std::uint64_t ss = 1 + rand.below(nspheres);
                auto pc = rng::sample_without_replacement(npoints, ps, rand);
                auto sc = rng::sample_without_replacement(nspheres, ss, rand);
                IncidenceReport r = incidence_bound_report(points_from_codes(pc, q, d),
                                                           spheres_from_codes(sc, q, d), Q);
                if (!r.verdict) ++violations;
            }
        }
    }
    pass = (violations == 0) && exact_ok;
    detail << "4 configs x (full set + 1000 random pairs): " << violations << " violations; "
           << "(3,1) full-set count=9=main " << (exact_ok ? "exact" : "MISMATCH");
    return {pass, detail.str()};
}

// ---- criterion 7: ring incidence inequality + encoding -----------------------------

std::pair<bool, std::string> c7_incidence_ring(SuiteState& st) {
    std::ostringstream detail;
    int violations = 0;
    int encode_failures = 0;
    int cfg_index = 0;
    for (std::uint64_t q : {9, 15}) {
        Ring R(q);
        const std::uint32_t d = 1;
        PointSet fullP = all_points(q, d);
        RingSphereSet fullS = all_ring_spheres(R, d);
        if (!ring_incidence_bound_report(fullP, fullS, R, d).verdict) ++violations;
        rng::Rand rand(rng::derive(st.opts.seed, 7000 + cfg_index));
        ++cfg_index;
        const std::uint64_t npoints = q;
        const std::uint64_t nspheres = q * q;
        for (int i = 0; i < 1000; ++i) {
            std::uint64_t ps = 1 + rand.below(npoints);
            std::uint64_t ss = 1 + rand.below(nspheres);
            auto pc = rng::sample_without_replacement(npoints, ps, rand);
            auto sc = rng::sample_without_replacement(nspheres, ss, rand);
            IncidenceReport r = ring_incidence_bound_report(
                points_from_codes(pc, q, d), ring_spheres_from_codes(sc, q, d), R, d);
            if (!r.verdict) ++violations;
        }
        // encoding bijection, d = 2 to exercise several coordinates
        const std::uint32_t d2 = 2;
        Ring R2(q);
        rng::Rand rand2(rng::derive(st.opts.seed, 7500 + cfg_index));
        for (int i = 0; i < 500; ++i) {
            Point p = point_from_code(rand2.below(ipow(q, d2)), q, d2);
            RingSphere s{point_from_code(rand2.below(ipow(q, d2)), q, d2),
                         static_cast<std::uint32_t>(rand2.below(q))};
            if (!sp_encoding_check(p, s, R2, d2)) ++encode_failures;
        }
    }
    bool pass = violations == 0 && encode_failures == 0;
    detail << "2 moduli x (full + 1000 random pairs): " << violations
           << " violations; encoding agreement failures: " << encode_failures << "/1000";
    return {pass, detail.str()};
}

// ---- criterion 8: mixing inequality -------------------------------------------------

std::pair<bool, std::string> c8_mixing(SuiteState& st) {
    int violations = 0;
    int checks = 0;
    int graph_index = 0;
    for (const CertEntry& e : st.certs) {
        rng::Rand rand(rng::derive(st.opts.seed, 8000 + graph_index));
        ++graph_index;
        const std::uint64_t n = e.graph.n();
        for (int i = 0; i < 100; ++i) {
            std::uint64_t bs = 1 + rand.below(n);
            std::uint64_t cs = 1 + rand.below(n);
            auto B = rng::sample_without_replacement(n, bs, rand);
            auto C = rng::sample_without_replacement(n, cs, rand);
            MixingReport r = mixing_check(e.cert, e.graph, B, C);
            ++checks;
            if (!r.verdict) ++violations;
        }
    }
    return {violations == 0, std::to_string(checks) + " random (B,C) pairs over " +
                                 std::to_string(graph_index) + " graphs, " +
                                 std::to_string(violations) + " violations"};
}

// ---- criterion 9: pinned distances ---------------------------------------------------

std::pair<bool, std::string> c9_pinned(SuiteState& st) {
    const std::uint64_t q = 13;
    const std::uint32_t d = 2;
    const double c = 0.9;
    Field F = field_for(q);
    DiagonalForm Q = sum_of_squares(F, d);
    int bad = 0;
    double min_avg = 1e300;
    for (int run = 0; run < 20; ++run) {
        rng::Rand rand(rng::derive(st.opts.seed, 9000 + run));
        auto codes = rng::sample_without_replacement(ipow(q, d), 30, rand);
        PointSet E = points_from_codes(codes, q, d);
        PinnedReport r = pinned_distance_report(E, Q, c);
        min_avg = std::min(min_avg, r.average);
        if (!(r.applicable && r.verdict && r.average_ok)) ++bad;
    }
    return {bad == 0, "20 random 30-point sets in F_13^2, c=0.9: " + std::to_string(bad) +
                          " failures, min average pinned-set size=" + fmt(min_avg)};
}

// ---- criterion 10: isosceles accounting ----------------------------------------------

std::pair<bool, std::string> c10_isosceles(SuiteState& st) {
    int identity_bad = 0, bound_bad = 0, oracle_bad = 0;
    int cfg_index = 0;
    for (std::uint64_t q : {5, 7}) {
        Field F = field_for(q);
        DiagonalForm Q = sum_of_squares(F, 2);
        PointSet plane = all_points(q, 2);
        TripleReport full = isosceles_report(plane, Q);
        if (!full.identity_ok) ++identity_bad;
        if (!full.bound_ok) ++bound_bad;
        if (full.iso != isosceles_count_cubic_oracle(plane, Q)) ++oracle_bad;
        rng::Rand rand(rng::derive(st.opts.seed, 10000 + cfg_index));
        ++cfg_index;
        for (int i = 0; i < 50; ++i) {
            std::uint64_t sz = 4 + rand.below(q * q - 3);
            auto codes = rng::sample_without_replacement(q * q, sz, rand);
            PointSet E = points_from_codes(codes, q, 2);
            TripleReport r = isosceles_report(E, Q);
            if (!r.identity_ok) ++identity_bad;
            if (!r.bound_ok) ++bound_bad;
            if (i < 5 && r.iso != isosceles_count_cubic_oracle(E, Q)) ++oracle_bad;
        }
    }
    // larger oracle comparison, |E| = 169 <= 200
    {
        Field F = field_for(13);
        DiagonalForm Q = sum_of_squares(F, 2);
        PointSet plane = all_points(13, 2);
        TripleReport r = isosceles_report(plane, Q);
        if (r.iso != isosceles_count_cubic_oracle(plane, Q)) ++oracle_bad;
        if (!r.identity_ok) ++identity_bad;
    }
    bool pass = identity_bad == 0 && bound_bad == 0 && oracle_bad == 0;
    return {pass, "identity failures=" + std::to_string(identity_bad) +
                      ", bound failures=" + std::to_string(bound_bad) +
                      ", histogram-vs-cubic-oracle mismatches=" + std::to_string(oracle_bad)};
}

// ---- criterion 11: pair-coincidence (T2) bound ------------------------------------------

std::pair<bool, std::string> c11_t2(SuiteState& st) {
    int bad = 0;
    bool exact_ok;
    {
        Field F3 = field_for(3);
        DiagonalForm Q = DiagonalForm::make(F3, {1}, {2});
        T2Report r = t2_report(all_points(3, 1), Q);
        exact_ok = (r.t2 == 45) && (r.deviation == 18.0) && (r.bound == 27.0) && r.verdict;
    }
    int cfg_index = 0;
    for (std::uint64_t q : {5, 7}) {
        Field F = field_for(q);
        DiagonalForm Q = sum_of_squares(F, 2);
        if (!t2_report(all_points(q, 2), Q).verdict) ++bad;
        rng::Rand rand(rng::derive(st.opts.seed, 11000 + cfg_index));
        ++cfg_index;
        for (int i = 0; i < 50; ++i) {
            std::uint64_t sz = 1 + rand.below(q * q);
            auto codes = rng::sample_without_replacement(q * q, sz, rand);
            if (!t2_report(points_from_codes(codes, q, 2), Q).verdict) ++bad;
        }
    }
    bool pass = bad == 0 && exact_ok;
    return {pass, "violations=" + std::to_string(bad) + "; (3,1) instance t2=45 dev=18<=27 " +
                      (exact_ok ? "exact" : "MISMATCH")};
}

// ---- criterion 12: distinct-distance subsets ---------------------------------------------

std::pair<bool, std::string> c12_ddsubset(SuiteState& st) {
    std::ostringstream detail;
    int invalid = 0, not_maximal = 0, excursions = 0;
    for (std::uint64_t q : {7, 11, 13}) {
        Field F = field_for(q);
        DiagonalForm Q = sum_of_squares(F, 2);
        PointSet plane = all_points(q, 2);
        std::vector<std::size_t> sizes;
        auto check_greedy = [&](const DdSubsetReport& rep) {
            if (!rep.valid) ++invalid;
            if (!rep.within_envelope) ++excursions;
            sizes.push_back(rep.subset.size());
            // maximality: no remaining point of the plane can be added
            for (const Point& w : plane) {
                if (std::find(rep.subset.begin(), rep.subset.end(), w) != rep.subset.end()) {
                    continue;
                }
                PointSet trial = rep.subset;
                trial.push_back(w);
                if (is_distinct_distance_subset(trial, Q)) {
                    ++not_maximal;
                    break;
                }
            }
        };
        check_greedy(greedy_ddsubset(plane, Q, {DdOrder::lex, 0}));
        for (int i = 0; i < 10; ++i) {
            check_greedy(greedy_ddsubset(
                plane, Q, {DdOrder::shuffle, rng::derive(st.opts.seed, 12000 + q * 100 + i)}));
        }
        for (int i = 0; i < 10; ++i) {
            DdSubsetReport rep =
                deletion_ddsubset(plane, Q, rng::derive(st.opts.seed, 12500 + q * 100 + i));
            if (!rep.valid) ++invalid;
            if (!rep.within_envelope) ++excursions;
            sizes.push_back(rep.subset.size());
        }
        auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
        detail << "q=" << q << " sizes in [" << *lo << "," << *hi << "] envelope ["
               << icbrt_u64(q) / 2 << "," << isqrt_u64(2 * q) + 1 << "]; ";
    }
    bool pass = invalid == 0 && not_maximal == 0;
    detail << "invalid=" << invalid << ", non-maximal greedy=" << not_maximal
           << ", envelope excursions=" << excursions << " (recorded, not failed)";
    return {pass, detail.str()};
}

// ---- criterion 13: random incidence trials ------------------------------------------------

std::pair<bool, std::string> c13_random(SuiteState&) {
    Field F = field_for(23);
    DiagonalForm Q = sum_of_squares(F, 2);
    RandomTrialsReport main_run = random_incidence_trials(Q, 4 * 23, 200, 1);
    RandomTrialsReport control = random_incidence_trials(Q, 0, 200, 1);
    bool pass = main_run.zero_frequency <= 0.01 && control.zero_frequency == 1.0;
    return {pass, "t=92: zero-incidence frequency=" + fmt(main_run.zero_frequency) +
                      " (mean incidences=" + fmt(main_run.mean_incidences) +
                      "); t=0 control frequency=" + fmt(control.zero_frequency)};
}

// ---- driver ----------------------------------------------------------------------

std::vector<Criterion> criteria_1_to_13() {
    return {
        {1, "cayley spectral certification grid", c1_cayley_grid},
        {2, "doubled-form cayley certification", c2_qprime},
        {3, "sum-product spectral certification", c3_sum_product},
        {4, "eigenvector residuals", c4_residuals},
        {5, "trace and parseval identities", c5_identities},
        {6, "field incidence inequality", c6_incidence_field},
        {7, "ring incidence inequality + encoding", c7_incidence_ring},
        {8, "mixing inequality with certified lambda", c8_mixing},
        {9, "pinned distance counts", c9_pinned},
        {10, "isosceles accounting", c10_isosceles},
        {11, "pair-coincidence bound", c11_t2},
        {12, "distinct-distance subsets", c12_ddsubset},
        {13, "random incidence trials", c13_random},
    };
}

std::pair<std::vector<CriterionResult>, std::string> run_1_to_13(const SuiteOptions& opts) {
    SuiteState st{opts, {}};
    std::vector<CriterionResult> results;
    std::ostringstream log;
    for (const Criterion& c : criteria_1_to_13()) {
        bool pass = false;
        std::string detail;
        try {
            std::tie(pass, detail) = c.fn(st);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        results.push_back({c.id, c.name, pass, detail});
        log << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.name
            << " -- " << detail << "\n";
        if (!pass && opts.fail_fast) break;
    }
    return {std::move(results), log.str()};
}

}  // namespace

std::uint64_t isosceles_count_cubic_oracle(const PointSet& E, const DiagonalForm& Q) {
    if (E.size() > 200) throw cap_exceeded("cubic oracle cap exceeded");
    std::uint64_t count = 0;
    for (std::size_t x = 0; x < E.size(); ++x) {
        for (std::size_t y = 0; y < E.size(); ++y) {
            if (y == x) continue;
            for (std::size_t z = 0; z < E.size(); ++z) {
                if (z == x || z == y) continue;
                if (Q.eval_diff(E[x], E[y]) == Q.eval_diff(E[x], E[z])) ++count;
            }
        }
    }
    return count;
}

SuiteOutcome run_acceptance(const SuiteOptions& opts) {
    SuiteOutcome out;
    auto [results, log] = run_1_to_13(opts);
    out.results = std::move(results);
    out.log = log;

    bool stopped_early = opts.fail_fast && !out.results.empty() && !out.results.back().pass;
    if (!stopped_early) {
        // criterion 14: the entire suite must be byte-identical on a re-run
        auto [results2, log2] = run_1_to_13(opts);
        (void)results2;
        bool identical = (log2 == log);
        std::string detail = identical
                                 ? "second run of criteria 1-13 byte-identical (" +
                                       std::to_string(log.size()) + " bytes)"
                                 : "second run DIFFERS";
        out.results.push_back({14, "determinism", identical, detail});
        out.log += std::string(identical ? "[PASS] " : "[FAIL] ") +
                   "criterion 14: determinism -- " + detail + "\n";
    }

    out.all_pass = true;
    for (const auto& r : out.results) out.all_pass = out.all_pass && r.pass;
    return out;
}

}  // namespace ffil
