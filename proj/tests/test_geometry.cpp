#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <sstream>

#include "ffil/geometry.hpp"
#include "ffil/rng.hpp"

using namespace ffil;

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t out = 1;
    while (e--) out *= b;
    return out;
}

// test oracle: the plain double loop the grouped counter must agree with
std::uint64_t naive_incidences(const PointSet& P, const SphereSet& S, const DiagonalForm& Q) {
    std::uint64_t count = 0;
    for (const Point& p : P) {
        for (const QSphere& s : S) count += on_sphere(Q, s, p) ? 1 : 0;
    }
    return count;
}

std::uint64_t naive_ring_incidences(const PointSet& P, const RingSphereSet& S, const Ring& R) {
    std::uint64_t count = 0;
    for (const Point& p : P) {
        for (const RingSphere& s : S) count += on_ring_sphere(R, s, p) ? 1 : 0;
    }
    return count;
}

}  // namespace

TEST_CASE("diagonal form validation") {
    auto F3 = Field::make(3, 1);
    CHECK_THROWS_AS(DiagonalForm::make(F3, {0}, {2}), invalid_input);   // zero coefficient
    CHECK_THROWS_AS(DiagonalForm::make(F3, {1}, {1}), invalid_input);   // exponent < 2
    CHECK_THROWS_AS(DiagonalForm::make(F3, {1}, {17}), invalid_input);  // above default cap
    CHECK_THROWS_AS(DiagonalForm::make(F3, {1}, {3}), invalid_input);   // gcd(3, 3) != 1
    CHECK_THROWS_AS(DiagonalForm::make(F3, {1, 1}, {2}), invalid_input);
    CHECK_NOTHROW(DiagonalForm::make(F3, {1}, {17}, 20));  // cap is configurable
    auto F5 = Field::make(5, 1);
    CHECK_NOTHROW(DiagonalForm::make(F5, {1, 2}, {2, 3}));
}

TEST_CASE("evaluate examples") {
    auto F3 = Field::make(3, 1);
    auto Q3 = DiagonalForm::make(F3, {1}, {2});
    CHECK(Q3.eval(std::vector<Felem>{2}) == 1);  // 4 mod 3
    CHECK(Q3.eval(std::vector<Felem>{0}) == 0);

    auto F5 = Field::make(5, 1);
    auto Q5 = DiagonalForm::make(F5, {1, 2}, {2, 3});
    CHECK(Q5.eval(std::vector<Felem>{1, 1}) == 3);  // 1 + 2
    CHECK(Q5.eval(std::vector<Felem>{0, 0}) == 0);
    CHECK_THROWS_AS(Q5.eval(std::vector<Felem>{1}), invalid_input);
}

TEST_CASE("sphere membership examples") {
    auto F3 = Field::make(3, 1);
    auto Q = DiagonalForm::make(F3, {1}, {2});
    CHECK(on_sphere(Q, {{0}, 0}, {0}));   // center on its own zero sphere
    CHECK(!on_sphere(Q, {{0}, 1}, {0}));  // x = b, r != 0
    CHECK(on_sphere(Q, {{0}, 1}, {2}));   // 2^2 = 1 in F_3
}

TEST_CASE("membership agrees with enumerated sphere point sets") {
    for (std::uint64_t q : {3, 5}) {
        auto F = Field::make(static_cast<std::uint32_t>(q), 1);
        for (std::uint32_t d : {1u, 2u}) {
            auto Q = DiagonalForm::make(F, std::vector<Felem>(d, 1),
                                        std::vector<std::uint32_t>(d, 2));
            auto points = all_points(q, d);
            for (const QSphere& s : all_spheres(F, d)) {
                for (const Point& x : points) {
                    bool direct = on_sphere(Q, s, x);
                    bool via_eval = Q.eval_diff(x, s.center) == s.radius;
                    CHECK(direct == via_eval);
                }
            }
        }
    }
}

TEST_CASE("incidence counting examples") {
    auto F3 = Field::make(3, 1);
    auto Q = DiagonalForm::make(F3, {1}, {2});
    auto P = all_points(3, 1);
    auto S = all_spheres(F3, 1);
    CHECK(count_incidences(P, S, Q) == 9);
    CHECK(count_incidences(P, {}, Q) == 0);
    PointSet one{{1}};
    SphereSet own{{{1}, 0}};
    CHECK(count_incidences(one, own, Q) == 1);
}

TEST_CASE("full-set incidence identity: every (point, center) fixes one radius") {
    for (std::uint64_t q : {3, 5}) {
        auto F = Field::make(static_cast<std::uint32_t>(q), 1);
        for (std::uint32_t d : {1u, 2u}) {
            auto Q = DiagonalForm::make(F, std::vector<Felem>(d, 1),
                                        std::vector<std::uint32_t>(d, 2));
            auto P = all_points(q, d);
            auto S = all_spheres(F, d);
            CHECK(count_incidences(P, S, Q) == ipow(q, 2 * d));
        }
    }
}

TEST_CASE("grouped counter equals the naive loop on random instances") {
    struct Cfg {
        std::uint32_t p, k, d;
        std::vector<Felem> coeffs;
        std::vector<std::uint32_t> exps;
    };
    std::vector<Cfg> cfgs = {{3, 1, 1, {1}, {2}},
                             {3, 1, 2, {1, 2}, {2, 2}},
                             {5, 1, 2, {1, 1}, {2, 3}},
                             {3, 2, 1, {4}, {2}}};
    for (const auto& cfg : cfgs) {
        auto F = Field::make(cfg.p, cfg.k);
        auto Q = DiagonalForm::make(F, cfg.coeffs, cfg.exps);
        const std::uint64_t q = F.q();
        const std::uint64_t npts = ipow(q, cfg.d);
        const std::uint64_t nsph = ipow(q, cfg.d + 1);
        rng::Rand rand(42 + cfg.p * 100 + cfg.k * 10 + cfg.d);
        for (int i = 0; i < 100; ++i) {
            std::uint64_t ps = 1 + rand.below(npts);
            std::uint64_t ss = 1 + rand.below(nsph);
            auto P = points_from_codes(rng::sample_without_replacement(npts, ps, rand), q,
                                       cfg.d);
            auto S = spheres_from_codes(rng::sample_without_replacement(nsph, ss, rand), q,
                                        cfg.d);
            CHECK(count_incidences(P, S, Q) == naive_incidences(P, S, Q));
        }
    }
}

TEST_CASE("ring incidence examples and oracle") {
    Ring R9(9);
    PointSet p0{{0}};
    RingSphereSet s0{{{0}, 0}};
    CHECK(count_incidences_ring(p0, s0, R9) == 1);

    auto P = all_points(9, 1);
    auto S = all_ring_spheres(R9, 1);
    CHECK(count_incidences_ring(P, S, R9) == naive_ring_incidences(P, S, R9));
    CHECK(count_incidences_ring(P, S, R9) == 81);

    Ring R15(15);
    PointSet p1{{1}};
    RingSphereSet s1{{{0}, 1}};
    CHECK(count_incidences_ring(p1, s1, R15) == 1);  // (1-0)^2 = 1

    rng::Rand rand(7);
    for (int i = 0; i < 50; ++i) {
        std::uint64_t ps = 1 + rand.below(15);
        std::uint64_t ss = 1 + rand.below(225);
        auto Pr = points_from_codes(rng::sample_without_replacement(15, ps, rand), 15, 1);
        auto Sr = ring_spheres_from_codes(rng::sample_without_replacement(225, ss, rand), 15, 1);
        CHECK(count_incidences_ring(Pr, Sr, R15) == naive_ring_incidences(Pr, Sr, R15));
    }
}

TEST_CASE("distance histogram examples") {
    auto F3 = Field::make(3, 1);
    auto Q = DiagonalForm::make(F3, {1}, {2});
    auto E = all_points(3, 1);
    auto h = distance_histogram(E, Q, true);
    REQUIRE(h.size() == 3);
    CHECK(h[0] == 3);
    CHECK(h[1] == 6);
    CHECK(h[2] == 0);

    PointSet two{{0}, {1}};
    auto h2 = distance_histogram(two, Q, true);
    CHECK(h2[0] == 2);
    CHECK(h2[1] == 2);

    PointSet single{{2}};
    auto h1 = distance_histogram(single, Q, false);
    CHECK(std::accumulate(h1.begin(), h1.end(), std::uint64_t{0}) == 0);
}

TEST_CASE("histogram totals property") {
    auto F5 = Field::make(5, 1);
    auto Q = DiagonalForm::make(F5, {1, 1}, {2, 2});
    rng::Rand rand(31);
    for (int i = 0; i < 30; ++i) {
        std::uint64_t sz = 1 + rand.below(25);
        auto E = points_from_codes(rng::sample_without_replacement(25, sz, rand), 5, 2);
        auto with = distance_histogram(E, Q, true);
        auto without = distance_histogram(E, Q, false);
        std::uint64_t n = E.size();
        CHECK(std::accumulate(with.begin(), with.end(), std::uint64_t{0}) == n * n);
        CHECK(std::accumulate(without.begin(), without.end(), std::uint64_t{0}) == n * n - n);
    }
}

TEST_CASE("pinned distance set examples") {
    auto F3 = Field::make(3, 1);
    auto Q = DiagonalForm::make(F3, {1}, {2});
    PointSet single{{1}};
    auto d1 = pinned_distance_set(single, {1}, Q);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == 0);

    auto full = pinned_distance_set(all_points(3, 1), {0}, Q);
    REQUIRE(full.size() == 2);  // squares mod 3: {0, 1}
    CHECK(full[0] == 0);
    CHECK(full[1] == 1);

    CHECK(pinned_distance_set({}, {0}, Q).empty());
}

TEST_CASE("zero distance pairs") {
    auto F3 = Field::make(3, 1);
    auto Q1 = DiagonalForm::make(F3, {1}, {2});
    CHECK(zero_distance_pairs(all_points(3, 1), Q1) == 0);  // x^2 = 0 forces x = 0

    auto F5 = Field::make(5, 1);
    auto Q2 = DiagonalForm::make(F5, {1, 1}, {2, 2});
    PointSet pair{{0, 0}, {1, 2}};
    CHECK(zero_distance_pairs(pair, Q2) == 2);  // 1 + 4 = 0 mod 5, both orders

    CHECK(zero_distance_pairs({{2, 2}}, Q2) == 0);
    CHECK(zero_distance_pairs({}, Q2) == 0);
}

TEST_CASE("point and sphere set validation") {
    auto F3 = Field::make(3, 1);
    PointSet dup{{1, 2}, {1, 2}};
    CHECK_THROWS_AS(validate_point_set(dup, 3, 2), invalid_input);
    PointSet bad_arity{{1}};
    CHECK_THROWS_AS(validate_point_set(bad_arity, 3, 2), invalid_input);
    PointSet bad_coord{{1, 3}};
    CHECK_THROWS_AS(validate_point_set(bad_coord, 3, 2), invalid_input);
    SphereSet dup_s{{{1}, 2}, {{1}, 2}};
    CHECK_THROWS_AS(validate_sphere_set(dup_s, 3, 1), invalid_input);
    // same point set, different (center, radius): distinct spheres
    SphereSet ok{{{0}, 2}, {{1}, 2}};
    CHECK_NOTHROW(validate_sphere_set(ok, 3, 1));
}

TEST_CASE("csv round trip, extension field digits") {
    auto F9 = Field::make(3, 2);
    rng::Rand rand(55);
    auto P = points_from_codes(rng::sample_without_replacement(81, 20, rand), 9, 2);
    std::ostringstream pos;
    write_points_csv(pos, P, F9);
    std::istringstream pis(pos.str());
    CHECK(read_points_csv(pis, F9, 2) == P);

    auto S = spheres_from_codes(rng::sample_without_replacement(729, 25, rand), 9, 2);
    std::ostringstream sos;
    write_spheres_csv(sos, S, F9);
    std::istringstream sis(sos.str());
    auto S2 = read_spheres_csv(sis, F9, 2);
    REQUIRE(S2.size() == S.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
        CHECK(S2[i].center == S[i].center);
        CHECK(S2[i].radius == S[i].radius);
    }
}
