#include "ffil/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "ffil/parallel.hpp"
#include "ffil/rng.hpp"
#include "ffil/spectral.hpp"

namespace ffil {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < e; ++i) out *= base;
    return out;
}

constexpr double kSlackCushion = 1e-9;

bool slack_ok(double deviation, double allowance) {
    return deviation <= allowance + kSlackCushion * (1.0 + allowance);
}

}  // namespace

std::uint64_t isqrt_u64(std::uint64_t x) {
    if (x == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

std::uint64_t icbrt_u64(std::uint64_t x) {
    if (x == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(x)));
    while (r > 0 && r * r * r > x) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
    return r;
}

// --- incidence bounds ---------------------------------------------------------

IncidenceReport incidence_bound_report(const PointSet& P, const SphereSet& S,
                                       const DiagonalForm& Q) {
    IncidenceReport r;
    r.p_size = P.size();
    r.s_size = S.size();
    r.count = count_incidences(P, S, Q);
    const double q = static_cast<double>(Q.field().q());
    const double ps = static_cast<double>(r.p_size) * static_cast<double>(r.s_size);
    r.main = ps / q;
    r.error_bound = std::pow(q, Q.d() / 2.0) * std::sqrt(ps);
    double dev = std::abs(static_cast<double>(r.count) - r.main);
    r.slack = r.error_bound - dev;
    r.verdict = slack_ok(dev, r.error_bound);
    return r;
}

IncidenceReport ring_incidence_bound_report(const PointSet& P, const RingSphereSet& S,
                                            const Ring& R, std::uint32_t d) {
    IncidenceReport r;
    r.p_size = P.size();
    r.s_size = S.size();
    r.count = count_incidences_ring(P, S, R);
    const double q = static_cast<double>(R.q());
    const double ps = static_cast<double>(r.p_size) * static_cast<double>(r.s_size);
    DivisorStats ds = divisor_stats(R.q());
    r.main = ps / q;
    r.error_bound = std::sqrt(2.0 * static_cast<double>(ds.tau)) *
                    std::pow(q, static_cast<double>(d)) /
                    std::pow(static_cast<double>(ds.gamma), d / 2.0) * std::sqrt(ps);
    double dev = std::abs(static_cast<double>(r.count) - r.main);
    r.slack = r.error_bound - dev;
    r.verdict = slack_ok(dev, r.error_bound);
    return r;
}

bool sp_encoding_check(const Point& p, const RingSphere& s, const Ring& R, std::uint32_t d) {
    if (p.size() != d || s.center.size() != d) throw invalid_input("arity mismatch");
    bool incident = on_ring_sphere(R, s, p);
    // point vertex (-sum b_i^2, b), sphere vertex (r - sum a_i^2, -2a)
    std::uint32_t sum_b2 = 0, sum_a2 = 0;
    for (std::uint32_t i = 0; i < d; ++i) {
        sum_b2 = R.add(sum_b2, R.mul(p[i], p[i]));
        sum_a2 = R.add(sum_a2, R.mul(s.center[i], s.center[i]));
    }
    std::uint32_t x0 = R.neg(sum_b2);
    std::uint32_t y0 = R.sub(s.radius, sum_a2);
    // adjacency: x0 + y0 == b . e with e = -2a
    std::uint32_t dot = 0;
    for (std::uint32_t i = 0; i < d; ++i) {
        std::uint32_t e_i = R.neg(R.add(s.center[i], s.center[i]));
        dot = R.add(dot, R.mul(p[i], e_i));
    }
    bool adjacent = R.add(x0, y0) == dot;
    return incident == adjacent;
}

// --- pinned distances ------------------------------------------------------------

PinnedReport pinned_distance_report(const PointSet& E, const DiagonalForm& Q, double c) {
    if (!(c > 0.0 && c < 1.0)) throw invalid_input("pin parameter must lie in (0,1)");
    PinnedReport r;
    r.c = c;
    r.e_size = E.size();
    const double q = static_cast<double>(Q.field().q());
    r.threshold_size = std::sqrt((1.0 - c * c) / (c * c * c * c)) *
                       std::pow(q, (Q.d() + 1) / 2.0);
    r.applicable = static_cast<double>(E.size()) > r.threshold_size;
    double total = 0;
    const double need = (1.0 - c) * q;
    for (const Point& p : E) {
        auto delta = pinned_distance_set(E, p, Q);
        total += static_cast<double>(delta.size());
        if (static_cast<double>(delta.size()) > need) r.good_pins += 1;
    }
    r.average = E.empty() ? 0.0 : total / static_cast<double>(E.size());
    if (r.applicable) {
        r.verdict = static_cast<double>(r.good_pins) >= (1.0 - c) * static_cast<double>(E.size());
        r.average_ok = r.average > (1.0 - c * c) * q;
    } else {
        r.verdict = true;
        r.average_ok = true;
    }
    return r;
}

// --- random incidence trials -------------------------------------------------------

RandomTrialsReport random_incidence_trials(const DiagonalForm& Q, std::uint32_t t,
                                           std::uint32_t trials, std::uint64_t seed,
                                           unsigned jobs) {
    const std::uint64_t q = Q.field().q();
    const std::uint32_t d = Q.d();
    const std::uint64_t npoints = ipow(q, d);
    const std::uint64_t nspheres = ipow(q, d + 1);
    if (t > npoints || t > nspheres) throw invalid_input("sample size exceeds the space");
    RandomTrialsReport rep;
    rep.t = t;
    rep.trials = trials;
    rep.seed = seed;
    if (trials == 0) return rep;

    std::vector<std::uint8_t> zero(trials, 0);
    std::vector<std::uint64_t> counts(trials, 0);
    parallel_chunks(trials, jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            rng::Rand rand(rng::derive(seed, i));
            auto pcodes = rng::sample_without_replacement(npoints, t, rand);
            auto scodes = rng::sample_without_replacement(nspheres, t, rand);
            PointSet P = points_from_codes(pcodes, q, d);
            SphereSet S = spheres_from_codes(scodes, q, d);
            std::uint64_t inc = count_incidences(P, S, Q);
            counts[i] = inc;
            zero[i] = (inc == 0) ? 1 : 0;
        }
    });
    rep.zero_count = std::accumulate(zero.begin(), zero.end(), std::uint64_t{0});
    rep.zero_frequency = static_cast<double>(rep.zero_count) / trials;
    rep.mean_incidences =
        static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0})) /
        trials;
    return rep;
}

// --- isosceles / T2 -------------------------------------------------------------------

TripleReport isosceles_report(const PointSet& E, const DiagonalForm& Q) {
    TripleReport r;
    r.e_size = E.size();
    const std::uint64_t q = Q.field().q();
    const std::uint32_t d = Q.d();

    // iso via per-apex histograms: sum_r m_r (m_r - 1)
    std::vector<std::uint64_t> hist(q, 0);
    for (std::size_t x = 0; x < E.size(); ++x) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::size_t y = 0; y < E.size(); ++y) {
            if (y == x) continue;
            hist[Q.eval_diff(E[x], E[y])] += 1;
        }
        for (std::uint64_t m : hist) r.iso += m * (m - 1);
    }
    r.z = zero_distance_pairs(E, Q);

    // t1 independently, as an edge count in the doubled-form Cayley graph
    AlgebraicGraph g = AlgebraicGraph::cayley_qprime(Q);
    std::vector<std::uint64_t> U, W;
    U.reserve(E.size());
    W.reserve(E.size() * E.size());
    std::vector<std::uint32_t> coords(2 * d + 1);
    auto vertex_id = [&](Felem first, const Point& a, const Point& b) {
        coords[0] = first;
        for (std::uint32_t i = 0; i < d; ++i) {
            coords[1 + i] = a[i];
            coords[1 + d + i] = b[i];
        }
        return g.encode(coords);
    };
    for (const Point& x : E) U.push_back(vertex_id(1, x, x));
    for (const Point& y : E) {
        for (const Point& zpt : E) W.push_back(vertex_id(1, y, zpt));
    }
    r.t1 = edge_count(g, U, W);

    r.identity_ok =
        r.t1 == static_cast<std::uint64_t>(E.size()) * E.size() + r.iso + 2 * r.z;
    const double e = static_cast<double>(E.size());
    r.main = e * e * e / static_cast<double>(q);
    r.bound = std::pow(static_cast<double>(q), static_cast<double>(d)) * std::pow(e, 1.5);
    r.bound_ok = slack_ok(std::abs(static_cast<double>(r.t1) - r.main), r.bound);
    return r;
}

T2Report t2_report(const PointSet& E, const DiagonalForm& Q) {
    T2Report r;
    r.e_size = E.size();
    auto hist = distance_histogram(E, Q, /*include_equal=*/true);
    for (std::uint64_t nr : hist) r.t2 += nr * nr;
    const double q = static_cast<double>(Q.field().q());
    const double e = static_cast<double>(E.size());
    r.main = e * e * e * e / q;
    r.bound = std::pow(q, static_cast<double>(Q.d())) * e * e;
    r.deviation = std::abs(static_cast<double>(r.t2) - r.main);
    r.verdict = slack_ok(r.deviation, r.bound);
    return r;
}

// --- distinct-distance subsets ------------------------------------------------------

namespace {

struct PairVals {
    Felem a, b;  // Q(u - v) and Q(v - u)
};

PairVals pair_vals(const DiagonalForm& Q, const Point& u, const Point& v) {
    return {Q.eval_diff(u, v), Q.eval_diff(v, u)};
}

bool vals_meet(const PairVals& x, const PairVals& y) {
    return x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b;
}

// true iff some 4-subset of the given quad has two coinciding distances
// (pairs sharing a point included): the "singular" notion
bool quad_singular(const PointSet& E, const std::array<std::size_t, 4>& q4,
                   const DiagonalForm& Q) {
    PairVals vals[6];
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) vals[idx++] = pair_vals(Q, E[q4[i]], E[q4[j]]);
    }
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
            if (vals_meet(vals[i], vals[j])) return true;
        }
    }
    return false;
}

std::uint64_t envelope_lo_for(std::uint64_t q) { return icbrt_u64(q) / 2; }
std::uint64_t envelope_hi_for(std::uint64_t q) { return isqrt_u64(2 * q) + 1; }

void finish_report(DdSubsetReport& rep, const DiagonalForm& Q) {
    rep.valid = is_distinct_distance_subset(rep.subset, Q);
    const std::uint64_t q = Q.field().q();
    rep.envelope_lo = envelope_lo_for(q);
    rep.envelope_hi = envelope_hi_for(q);
    rep.within_envelope =
        rep.subset.size() >= rep.envelope_lo && rep.subset.size() <= rep.envelope_hi;
}

}  // namespace

bool is_distinct_distance_subset(const PointSet& U, const DiagonalForm& Q) {
    const std::size_t n = U.size();
    if (n < 4) return true;
    std::vector<PairVals> vals;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            vals.push_back(pair_vals(Q, U[i], U[j]));
            pairs.emplace_back(i, j);
        }
    }
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const auto& [i, j] = pairs[a];
            const auto& [k, l] = pairs[b];
            if (i == k || i == l || j == k || j == l) continue;  // share a point
            if (vals_meet(vals[a], vals[b])) return false;
        }
    }
    return true;
}

DdSubsetReport greedy_ddsubset(const PointSet& E, const DiagonalForm& Q, const DdOrder& order) {
    PointSet scan = E;
    if (order.kind == DdOrder::lex) {
        std::sort(scan.begin(), scan.end());
    } else {
        rng::Rand rand(order.seed);
        for (std::size_t i = scan.size(); i > 1; --i) {
            std::swap(scan[i - 1], scan[rand.below(i)]);
        }
    }
    DdSubsetReport rep;
    rep.method = "greedy";
    PointSet& U = rep.subset;
    std::vector<PairVals> uvals;                               // pair values within U
    std::vector<std::pair<std::size_t, std::size_t>> upairs;   // index pairs within U
    auto can_add = [&](const Point& w) {
        // new pairs {w, u}; conflict iff an existing pair avoiding u matches
        for (std::size_t u = 0; u < U.size(); ++u) {
            PairVals nv = pair_vals(Q, w, U[u]);
            for (std::size_t e = 0; e < upairs.size(); ++e) {
                if (upairs[e].first == u || upairs[e].second == u) continue;
                if (vals_meet(nv, uvals[e])) return false;
            }
        }
        return true;
    };
    for (const Point& w : scan) {
        if (!can_add(w)) continue;
        for (std::size_t u = 0; u < U.size(); ++u) {
            uvals.push_back(pair_vals(Q, w, U[u]));
            upairs.emplace_back(U.size(), u);
        }
        U.push_back(w);
    }
    finish_report(rep, Q);
    return rep;
}

DdSubsetReport deletion_ddsubset(const PointSet& E, const DiagonalForm& Q, std::uint64_t seed) {
    if (E.size() < 4) throw invalid_input("deletion method needs at least 4 points");
    const std::uint64_t q = Q.field().q();
    // edge estimate m ~ |E|^4 / (12 q) (ordered coincidence bound scaled to
    // 4-subsets); Spencer's k=4 sample size s = (n^4 / (4 m))^{1/3}
    const double n4 = std::pow(static_cast<double>(E.size()), 4.0);
    const double m_hat = std::max(1.0, 2.0 * n4 / static_cast<double>(q) / 24.0);
    std::uint64_t s = static_cast<std::uint64_t>(std::floor(std::cbrt(0.25 * n4 / m_hat)));
    s = std::max<std::uint64_t>(4, s);
    s = std::min<std::uint64_t>(s, E.size());

    rng::Rand rand(seed);
    auto picks = rng::sample_without_replacement(E.size(), s, rand);
    PointSet sample;
    sample.reserve(s);
    for (std::uint64_t i : picks) sample.push_back(E[i]);

    std::vector<char> dead(s, 0);
    std::array<std::size_t, 4> q4{};
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = a + 1; b < s; ++b) {
            for (std::size_t c = b + 1; c < s; ++c) {
                for (std::size_t e = c + 1; e < s; ++e) {
                    if (dead[a] || dead[b] || dead[c] || dead[e]) continue;
                    q4 = {a, b, c, e};
                    if (quad_singular(sample, q4, Q)) dead[e] = 1;
                }
            }
        }
    }
    DdSubsetReport rep;
    rep.method = "deletion";
    for (std::size_t i = 0; i < s; ++i) {
        if (!dead[i]) rep.subset.push_back(sample[i]);
    }
    finish_report(rep, Q);
    return rep;
}

std::uint64_t count_singular_4subsets(const PointSet& E, const DiagonalForm& Q,
                                      std::uint64_t cap) {
    if (E.size() > cap) throw cap_exceeded("singular 4-subset oracle cap exceeded");
    const std::size_t n = E.size();
    std::uint64_t count = 0;
    std::array<std::size_t, 4> q4{};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                for (std::size_t e = c + 1; e < n; ++e) {
                    q4 = {a, b, c, e};
                    if (quad_singular(E, q4, Q)) ++count;
                }
            }
        }
    }
    return count;
}

}  // namespace ffil
