#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "ffil/rng.hpp"
#include "ffil/spectral.hpp"

using namespace ffil;

namespace {

DiagonalForm sumsq(const Field& F, std::uint32_t d) {
    return DiagonalForm::make(F, std::vector<Felem>(d, 1), std::vector<std::uint32_t>(d, 2));
}

// Independent oracle: eigenvalue moduli by direct Gauss-type summation
// psi(-m0 x^2 + m1 x) over x, for the q = 3, d = 1, Q = x^2 graph. (Summing
// over the difference set or its negation permutes the multiset only.)
std::vector<double> gauss_oracle_moduli_q3() {
    std::vector<double> mods;
    const double pi = std::numbers::pi;
    for (int m0 = 0; m0 < 3; ++m0) {
        for (int m1 = 0; m1 < 3; ++m1) {
            std::complex<double> sum = 0;
            for (int x = 0; x < 3; ++x) {
                int arg = ((-m0 * x * x + m1 * x) % 3 + 3) % 3;
                sum += std::polar(1.0, 2.0 * pi * arg / 3.0);
            }
            mods.push_back(std::abs(sum));
        }
    }
    std::sort(mods.begin(), mods.end());
    return mods;
}

std::vector<std::uint64_t> all_vertices(const AlgebraicGraph& g) {
    std::vector<std::uint64_t> v(g.n());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

TEST_CASE("graph parameters") {
    auto F3 = Field::make(3, 1);
    auto g = AlgebraicGraph::cayley_q(sumsq(F3, 1));
    CHECK(g.n() == 9);
    CHECK(g.degree() == 3);

    auto gp = AlgebraicGraph::cayley_qprime(sumsq(F3, 1));
    CHECK(gp.n() == 27);
    CHECK(gp.degree() == 9);

    auto sp = AlgebraicGraph::sum_product(Ring(5), 1);
    CHECK(sp.n() == 25);
    CHECK(sp.degree() == 5);
}

TEST_CASE("every cayley vertex has a loop") {
    auto F3 = Field::make(3, 1);
    for (auto g : {AlgebraicGraph::cayley_q(sumsq(F3, 2)),
                   AlgebraicGraph::cayley_qprime(sumsq(F3, 1))}) {
        std::vector<std::uint64_t> nb;
        for (std::uint64_t v = 0; v < g.n(); ++v) {
            nb.clear();
            g.out_neighbors(v, nb);
            CHECK(std::count(nb.begin(), nb.end(), v) == 1);
        }
        CHECK(loop_count(g) == g.n());
    }
}

TEST_CASE("sum-product loop count is q^d") {
    CHECK(loop_count(AlgebraicGraph::sum_product(Ring(5), 1)) == 5);
    CHECK(loop_count(AlgebraicGraph::sum_product(Ring(9), 1)) == 9);
    CHECK(loop_count(AlgebraicGraph::sum_product(Ring(5), 2)) == 25);
}

TEST_CASE("regularity, exhaustive") {
    auto F3 = Field::make(3, 1);
    auto F5 = Field::make(5, 1);
    CHECK_NOTHROW(verify_regularity(AlgebraicGraph::cayley_q(sumsq(F3, 2))));
    CHECK_NOTHROW(verify_regularity(AlgebraicGraph::cayley_qprime(sumsq(F3, 1))));
    CHECK_NOTHROW(verify_regularity(AlgebraicGraph::cayley_q(
        DiagonalForm::make(F5, {1, 1}, {2, 3}))));
    CHECK_NOTHROW(verify_regularity(AlgebraicGraph::sum_product(Ring(9), 1)));
}

TEST_CASE("spectrum of the q=3 x^2 graph matches the Gauss-sum oracle") {
    auto F3 = Field::make(3, 1);
    auto g = AlgebraicGraph::cayley_q(sumsq(F3, 1));
    auto spec = cayley_spectrum(g);
    REQUIRE(spec.size() == 9);
    std::vector<double> mods;
    for (auto z : spec) mods.push_back(std::abs(z));
    std::sort(mods.begin(), mods.end());

    auto oracle = gauss_oracle_moduli_q3();
    for (std::size_t i = 0; i < 9; ++i) CHECK(mods[i] == doctest::Approx(oracle[i]).epsilon(1e-12));

    // frozen multiset {0 x2, sqrt(3) x6, 3}
    const double s3 = std::sqrt(3.0);
    std::vector<double> want{0, 0, s3, s3, s3, s3, s3, s3, 3};
    for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(mods[i] - want[i]) < 1e-9);
}

TEST_CASE("trivial and pure-linear characters") {
    auto F5 = Field::make(5, 1);
    auto g = AlgebraicGraph::cayley_q(sumsq(F5, 1));
    CHECK(std::abs(cayley_eigenvalue(g, 0) - std::complex<double>(5, 0)) < 1e-12);
    // m = (0, m1), m1 != 0: plain character sum, 0 regardless of the form
    for (std::uint64_t m1 = 1; m1 < 5; ++m1) {
        CHECK(std::abs(cayley_eigenvalue(g, m1 * 5)) < 1e-12);
    }
}

TEST_CASE("eigenvector residuals") {
    auto F3 = Field::make(3, 1);
    auto g3 = AlgebraicGraph::cayley_q(sumsq(F3, 1));
    CHECK(eigvec_residual(g3, 0) < 1e-15);
    for (std::uint64_t m = 0; m < g3.n(); ++m) {
        CHECK(eigvec_residual(g3, m) <= 1e-9 * 3);
    }

    auto F5 = Field::make(5, 1);
    auto g5 = AlgebraicGraph::cayley_q(sumsq(F5, 1));
    rng::Rand rand(3);
    for (int i = 0; i < 20; ++i) {
        CHECK(eigvec_residual(g5, rand.below(g5.n())) <= 1e-9 * 5);
    }

    // odd exponent: the connection set is not symmetric under negation, which
    // is exactly where a wrong orientation pairing would show up
    auto gc = AlgebraicGraph::cayley_q(DiagonalForm::make(F5, {1}, {3}));
    for (std::uint64_t m = 0; m < gc.n(); ++m) {
        CHECK(eigvec_residual(gc, m) <= 1e-9 * 5);
    }

    auto big = AlgebraicGraph::cayley_q(sumsq(F5, 2));
    CHECK_THROWS_AS(eigvec_residual(big, 1, /*cap=*/10), cap_exceeded);
}

TEST_CASE("certify the quadratic grid") {
    auto F3 = Field::make(3, 1);
    auto cert = certify(AlgebraicGraph::cayley_q(sumsq(F3, 1)));
    CHECK(cert.lambda == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(cert.bound == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(cert.verdict);
    CHECK(!cert.vacuous);
    CHECK(cert.trivial == doctest::Approx(3.0));
    CHECK(cert.method == "character_sum");

    auto certp = certify(AlgebraicGraph::cayley_qprime(sumsq(F3, 1)));
    CHECK(certp.bound == doctest::Approx(3.0));
    CHECK(certp.lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(certp.verdict);
}

TEST_CASE("certify detects the cubic-form excess") {
    // x^3 over F_5: max nontrivial modulus is |3 + 2 cos(2 pi/5)| = (5+sqrt(5))/2,
    // computed by hand from the value table of u^3 + 4u, which exceeds sqrt(5)
    auto F5 = Field::make(5, 1);
    auto cert = certify(AlgebraicGraph::cayley_q(DiagonalForm::make(F5, {1}, {3})));
    const double expected = (5.0 + std::sqrt(5.0)) / 2.0;
    CHECK(cert.lambda == doctest::Approx(expected).epsilon(1e-12));
    CHECK(!cert.verdict);
}

TEST_CASE("trace and parseval identities") {
    auto F3 = Field::make(3, 1);
    auto F5 = Field::make(5, 1);
    auto F9 = Field::make(3, 2);
    std::vector<AlgebraicGraph> graphs;
    graphs.push_back(AlgebraicGraph::cayley_q(sumsq(F3, 1)));
    graphs.push_back(AlgebraicGraph::cayley_q(sumsq(F5, 2)));
    graphs.push_back(AlgebraicGraph::cayley_q(sumsq(F9, 1)));
    graphs.push_back(AlgebraicGraph::cayley_qprime(sumsq(F5, 1)));
    graphs.push_back(AlgebraicGraph::sum_product(Ring(9), 1));
    for (const auto& g : graphs) {
        auto cert = certify(g);
        double n = static_cast<double>(g.n());
        double nd = n * static_cast<double>(g.degree());
        CHECK(std::abs(cert.eig_sum - static_cast<double>(cert.loops)) <= 1e-6 * n);
        CHECK(std::abs(cert.eig_sq_sum - nd) <= 1e-6 * nd);
    }
}

TEST_CASE("jacobi eigenvalues against closed forms") {
    // path graph P_5: eigenvalues 2 cos(k pi / 6), k = 1..5
    const std::size_t n = 5;
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a[i * n + i + 1] = 1.0;
        a[(i + 1) * n + i] = 1.0;
    }
    auto eig = jacobi_eigenvalues(a, n, 1e-12);
    REQUIRE(eig.size() == n);
    const double pi = std::numbers::pi;
    std::vector<double> want;
    for (int k = 5; k >= 1; --k) want.push_back(2.0 * std::cos(k * pi / 6.0));
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(eig[i] == doctest::Approx(want[i]).epsilon(1e-10));

    // fixed 2x2
    std::vector<double> b{2, 1, 1, 2};
    auto e2 = jacobi_eigenvalues(b, 2, 1e-13);
    CHECK(e2[0] == doctest::Approx(1.0));
    CHECK(e2[1] == doctest::Approx(3.0));
}

TEST_CASE("sum-product spectrum") {
    auto g = AlgebraicGraph::sum_product(Ring(5), 1);
    auto eig = symmetric_spectrum(g);
    REQUIRE(eig.size() == 25);
    CHECK(eig.back() == doctest::Approx(5.0).epsilon(1e-9));  // regular of degree 5
    double second = std::max(std::abs(eig.front()), std::abs(eig[eig.size() - 2]));
    CHECK(second <= 2.0 * std::sqrt(5.0) + 1e-8);

    auto cert = certify(g);
    CHECK(cert.method == "dense_symmetric");
    CHECK(cert.verdict);
    CHECK(!cert.vacuous);

    auto big = AlgebraicGraph::sum_product(Ring(9), 2);  // n = 729
    CHECK_THROWS_AS(symmetric_spectrum(big, /*cap=*/100), cap_exceeded);
}

TEST_CASE("sum-product bound can be vacuous and is flagged") {
    auto cert = certify(AlgebraicGraph::sum_product(Ring(15), 1));
    CHECK(cert.bound == doctest::Approx(std::sqrt(8.0) * 15.0 / std::sqrt(3.0)));
    CHECK(cert.bound >= static_cast<double>(cert.degree));
    CHECK(cert.vacuous);
    CHECK(cert.verdict);
}

TEST_CASE("edge count basics") {
    auto F3 = Field::make(3, 1);
    auto g = AlgebraicGraph::cayley_q(sumsq(F3, 1));
    auto V = all_vertices(g);
    CHECK(edge_count(g, V, V) == 27);  // n * degree
    std::vector<std::uint64_t> one{4};
    CHECK(edge_count(g, one, V) == 3);
    CHECK(edge_count(g, {}, V) == 0);
}

TEST_CASE("quadratic form against the dense matrix, sum-product") {
    auto g = AlgebraicGraph::sum_product(Ring(5), 1);
    const std::size_t n = g.n();
    std::vector<double> a(n * n, 0.0);
    std::vector<std::uint64_t> nb;
    for (std::uint64_t v = 0; v < n; ++v) {
        nb.clear();
        g.out_neighbors(v, nb);
        for (auto w : nb) a[v * n + w] = 1.0;
    }
    rng::Rand rand(8);
    for (int i = 0; i < 20; ++i) {
        std::uint64_t sz = 1 + rand.below(n);
        auto B = rng::sample_without_replacement(n, sz, rand);
        double quad = 0;
        for (auto u : B) {
            for (auto w : B) quad += a[u * n + w];
        }
        double viaedges = static_cast<double>(edge_count(g, B, B));
        CHECK(std::abs(quad - viaedges) <=
              1e-8 * static_cast<double>(n) * static_cast<double>(g.degree()));
    }
}

TEST_CASE("mixing checks") {
    auto F5 = Field::make(5, 1);
    auto g = AlgebraicGraph::cayley_q(sumsq(F5, 1));
    auto cert = certify(g);
    auto V = all_vertices(g);

    auto full = mixing_check(cert, g, V, V);
    CHECK(full.deviation == doctest::Approx(0.0));
    CHECK(full.verdict);

    std::vector<std::uint64_t> u{3}, w{17};
    CHECK(mixing_check(cert, g, u, w).verdict);

    rng::Rand rand(9);
    for (int i = 0; i < 50; ++i) {
        auto B = rng::sample_without_replacement(g.n(), 1 + rand.below(g.n()), rand);
        auto C = rng::sample_without_replacement(g.n(), 1 + rand.below(g.n()), rand);
        CHECK(mixing_check(cert, g, B, C).verdict);
    }

    auto sp = AlgebraicGraph::sum_product(Ring(9), 1);
    auto spcert = certify(sp);
    for (int i = 0; i < 50; ++i) {
        auto B = rng::sample_without_replacement(sp.n(), 1 + rand.below(sp.n()), rand);
        auto C = rng::sample_without_replacement(sp.n(), 1 + rand.below(sp.n()), rand);
        CHECK(mixing_check(spcert, sp, B, C).verdict);
    }
}

TEST_CASE("spectrum is deterministic and schedule-independent") {
    auto F9 = Field::make(3, 2);
    auto g = AlgebraicGraph::cayley_q(sumsq(F9, 1));
    auto one = cayley_spectrum(g, 1);
    auto four = cayley_spectrum(g, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == four[i]);
}
