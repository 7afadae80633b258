#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffil/geometry.hpp"

namespace ffil {

// Point-sphere incidence count against the main term |P||S|/q and the
// spectral error term. verdict false on any instance falsifies the bound.
struct IncidenceReport {
    std::uint64_t count = 0;
    double main = 0;         // |P||S|/q
    double error_bound = 0;  // q^{d/2} sqrt(|P||S|), or the ring analogue
    double slack = 0;        // error_bound - |count - main|
    bool verdict = false;    // slack >= 0 (tiny fp cushion)
    std::uint64_t p_size = 0;
    std::uint64_t s_size = 0;
};

IncidenceReport incidence_bound_report(const PointSet& P, const SphereSet& S,
                                       const DiagonalForm& Q);

// Ring version: error term sqrt(2 tau(q)) * q^d / gamma(q)^{d/2} * sqrt(|P||S|).
IncidenceReport ring_incidence_bound_report(const PointSet& P, const RingSphereSet& S,
                                            const Ring& R, std::uint32_t d);

// Point-on-sphere must agree with adjacency of the encoded vertices
//   point  b        -> (-sum b_i^2,  b)
//   sphere (a, r)   -> (r - sum a_i^2, -2a)
// in the sum-product graph. Returns whether the two sides agree.
bool sp_encoding_check(const Point& p, const RingSphere& s, const Ring& R, std::uint32_t d);

struct PinnedReport {
    double c = 0;
    double threshold_size = 0;    // sqrt((1-c^2)/c^4) * q^{(d+1)/2}
    std::uint64_t good_pins = 0;  // pins p in E with |pinned set| > (1-c) q
    bool applicable = false;      // |E| > threshold_size
    bool verdict = false;         // good_pins >= (1-c)|E| when applicable, else vacuously true
    double average = 0;           // mean |pinned set| over pins in E
    bool average_ok = false;      // average > (1-c^2) q when applicable, else vacuously true
    std::uint64_t e_size = 0;
};

PinnedReport pinned_distance_report(const PointSet& E, const DiagonalForm& Q, double c);

struct RandomTrialsReport {
    std::uint32_t t = 0;
    std::uint32_t trials = 0;
    std::uint64_t zero_count = 0;
    double zero_frequency = 0;
    double mean_incidences = 0;
    std::uint64_t seed = 0;
};

// Per trial: t points sampled uniformly without replacement from F_q^d and t
// spheres from all q^{d+1} (center, radius) pairs; reports the fraction of
// trials with zero incidences. Trial i uses rng::derive(seed, i).
RandomTrialsReport random_incidence_trials(const DiagonalForm& Q, std::uint32_t t,
                                           std::uint32_t trials, std::uint64_t seed,
                                           unsigned jobs = 1);

// Isosceles accounting: iso = ordered distinct triples (x,y,z), Q(x-y)=Q(x-z);
// t1 = edges between U={(1,x,x)} and W={(1,y,z)} in the doubled-form Cayley
// graph; z = ordered zero-distance pairs. t1 = |E|^2 + iso + 2z must hold
// exactly, and |t1 - |E|^3/q| <= q^d |E|^{3/2}.
struct TripleReport {
    std::uint64_t iso = 0;
    std::uint64_t t1 = 0;
    std::uint64_t z = 0;
    bool identity_ok = false;
    bool bound_ok = false;
    double main = 0;   // |E|^3 / q
    double bound = 0;  // q^d |E|^{3/2}
    std::uint64_t e_size = 0;
};

TripleReport isosceles_report(const PointSet& E, const DiagonalForm& Q);

struct T2Report {
    std::uint64_t t2 = 0;  // sum_r N_r^2, pairs with x = y included
    double main = 0;       // |E|^4 / q
    double bound = 0;      // q^d |E|^2
    double deviation = 0;  // |t2 - main|
    bool verdict = false;  // deviation <= bound
    std::uint64_t e_size = 0;
};

T2Report t2_report(const PointSet& E, const DiagonalForm& Q);

// True iff no four pairwise-distinct points x,y,z,t in U satisfy
// Q(x-y) = Q(z-t). Pairs sharing a point are exempt. Both orientations of
// each pair are considered, so forms with odd exponents are handled. O(|U|^4).
bool is_distinct_distance_subset(const PointSet& U, const DiagonalForm& Q);

struct DdOrder {
    enum Kind { lex, shuffle } kind = lex;
    std::uint64_t seed = 0;
};

struct DdSubsetReport {
    PointSet subset;
    std::string method;  // "greedy" | "deletion"
    bool valid = false;
    // recorded envelope [floor(q^{1/3})/2, floor(sqrt(2q)) + 1]; excursions
    // are reported, not failed
    std::uint64_t envelope_lo = 0;
    std::uint64_t envelope_hi = 0;
    bool within_envelope = false;
};

// Scans E in the given order, adding a point whenever the subset stays a
// distinct-distance subset. The result is maximal for that order.
DdSubsetReport greedy_ddsubset(const PointSet& E, const DiagonalForm& Q, const DdOrder& order);

// Random-sample + deletion: samples s = max(4, floor((3q)^{1/3})) vertices
// (derived from the Spencer sample-size rule with the edge count estimated by
// the |E|^4/(12 q) pair-coincidence bound), enumerates singular 4-subsets
// within the sample and deletes one vertex from each. Requires |E| >= 4.
DdSubsetReport deletion_ddsubset(const PointSet& E, const DiagonalForm& Q, std::uint64_t seed);

// Number of 4-element subsets that are not regular: some two of the six
// pairwise distances coincide (pairs sharing a point included). O(|E|^4),
// guarded by the cap.
std::uint64_t count_singular_4subsets(const PointSet& E, const DiagonalForm& Q,
                                      std::uint64_t cap = 60);

// integer-exact floor(sqrt(x)) and floor(cbrt(x))
std::uint64_t isqrt_u64(std::uint64_t x);
std::uint64_t icbrt_u64(std::uint64_t x);

}  // namespace ffil
