#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ffil/algebra.hpp"
#include "ffil/rng.hpp"

using namespace ffil;

TEST_CASE("field construction basics") {
    auto F3 = Field::make(3, 1);
    CHECK(F3.q() == 3);
    CHECK(F3.p() == 3);
    REQUIRE(F3.modulus().size() == 2);
    CHECK(F3.modulus()[0] == 0);  // modulus x for prime fields
    CHECK(F3.modulus()[1] == 1);

    CHECK_THROWS_AS(Field::make(2, 1), invalid_input);  // even characteristic
    CHECK_THROWS_AS(Field::make(9, 1), invalid_input);  // composite characteristic
    CHECK_THROWS_AS(Field::make(15, 1), invalid_input);
    CHECK_THROWS_AS(Field::make(3, 0), invalid_input);
}

TEST_CASE("smallest irreducible modulus is deterministic") {
    // oracle: exhaustive scan over monic candidates in low-to-high lex order,
    // testing irreducibility by checking for roots / small factors by brute
    // force; frozen results below were confirmed against that scan
    auto F9 = Field::make(3, 2);
    REQUIRE(F9.modulus().size() == 3);
    CHECK(F9.modulus()[0] == 1);  // t^2 + 1 (no square root of -1 mod 3)
    CHECK(F9.modulus()[1] == 0);
    CHECK(F9.modulus()[2] == 1);

    auto F25 = Field::make(5, 2);
    CHECK(F25.modulus()[0] == 1);  // t^2 + t + 1 (t^2 + 1 splits: 2^2 = -1 mod 5)
    CHECK(F25.modulus()[1] == 1);
    CHECK(F25.modulus()[2] == 1);

    auto F27 = Field::make(3, 3);
    CHECK(F27.modulus()[0] == 1);  // t^3 + 2t^2 + 1: first rootless cubic in lex order
    CHECK(F27.modulus()[1] == 0);
    CHECK(F27.modulus()[2] == 2);
    CHECK(F27.modulus()[3] == 1);
}

TEST_CASE("modulus irreducibility, brute force") {
    // independent check: the chosen modulus has no root and, for k = 3, no
    // linear factor either way; exhaustive evaluation
    for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        auto F = Field::make(p, k);
        auto mod = F.modulus();
        for (std::uint32_t x = 0; x < p; ++x) {
            std::uint64_t acc = 0, xp = 1;
            for (std::uint32_t i = 0; i < mod.size(); ++i) {
                acc = (acc + mod[i] * xp) % p;
                xp = xp * x % p;
            }
            CHECK(acc != 0);  // no roots in Z_p
        }
    }
}

TEST_CASE("pow examples") {
    auto F3 = Field::make(3, 1);
    CHECK(F3.pow(2, 3) == 2);  // 8 mod 3
    CHECK(F3.pow(2, 2) == 1);  // 4 mod 3
    CHECK_THROWS_AS(F3.pow(2, 0), invalid_input);

    auto F9 = Field::make(3, 2);
    Felem t = F9.from_digits(std::vector<std::uint32_t>{0, 1});
    CHECK(F9.pow(t, 2) == 2);  // t^2 = -1 = 2 under t^2 + 1
}

TEST_CASE("trace examples") {
    auto F9 = Field::make(3, 2);
    CHECK(F9.trace(1) == 2);  // 1 + 1^3
    Felem t = F9.from_digits(std::vector<std::uint32_t>{0, 1});
    CHECK(F9.trace(t) == 0);  // t + t^3 = t - t
    CHECK(F9.trace(0) == 0);
}

TEST_CASE("additive character examples") {
    auto F3 = Field::make(3, 1);
    CHECK(std::abs(F3.psi(0, 2) - std::complex<double>(1, 0)) < 1e-15);
    auto w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    CHECK(std::abs(F3.psi(1, 1) - w) < 1e-12);
    std::complex<double> sum = 0;
    for (Felem x = 0; x < 3; ++x) sum += F3.psi(1, x);
    CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("divisor stats") {
    auto s15 = divisor_stats(15);
    CHECK(s15.tau == 4);
    CHECK(s15.gamma == 3);
    auto s9 = divisor_stats(9);
    CHECK(s9.tau == 3);
    CHECK(s9.gamma == 3);
    auto s7 = divisor_stats(7);
    CHECK(s7.tau == 2);
    CHECK(s7.gamma == 7);
    CHECK_THROWS_AS(divisor_stats(4), invalid_input);
    CHECK_THROWS_AS(divisor_stats(1), invalid_input);
}

TEST_CASE("field axioms on random triples") {
    for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 1}, {5, 1}, {7, 1},
                        {3, 2}, {5, 2}, {3, 3}}) {
        auto F = Field::make(p, k);
        rng::Rand rand(1234 + p * 16 + k);
        const std::uint64_t q = F.q();
        for (int i = 0; i < 1000; ++i) {
            Felem a = static_cast<Felem>(rand.below(q));
            Felem b = static_cast<Felem>(rand.below(q));
            Felem c = static_cast<Felem>(rand.below(q));
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, F.neg(a)) == 0);
            CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
        }
    }
}

TEST_CASE("frobenius fixes the trace") {
    for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
        auto F = Field::make(p, k);
        for (std::uint64_t x = 0; x < F.q(); ++x) {
            Felem fx = F.pow(static_cast<Felem>(std::max<std::uint64_t>(x, 1)), p);
            if (x == 0) fx = 0;
            CHECK(F.trace(fx) == F.trace(static_cast<Felem>(x)));
        }
    }
}

TEST_CASE("character multiplicativity and orthogonality") {
    for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 1}, {5, 1}, {3, 2}, {5, 2}}) {
        auto F = Field::make(p, k);
        rng::Rand rand(77 + p + k);
        const std::uint64_t q = F.q();
        for (int i = 0; i < 200; ++i) {
            Felem m = static_cast<Felem>(rand.below(q));
            Felem x = static_cast<Felem>(rand.below(q));
            Felem y = static_cast<Felem>(rand.below(q));
            auto lhs = F.psi(m, F.add(x, y));
            auto rhs = F.psi(m, x) * F.psi(m, y);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
        for (std::uint64_t m = 0; m < q; ++m) {
            std::complex<double> sum = 0;
            for (std::uint64_t x = 0; x < q; ++x) {
                sum += F.psi(static_cast<Felem>(m), static_cast<Felem>(x));
            }
            double want = (m == 0) ? static_cast<double>(q) : 0.0;
            CHECK(std::abs(sum - want) <= 1e-9 * static_cast<double>(q));
        }
    }
}

TEST_CASE("element text round trip") {
    auto F9 = Field::make(3, 2);
    for (Felem x = 0; x < 9; ++x) CHECK(F9.parse(F9.format(x)) == x);
    CHECK(F9.format(5) == "21");  // 2 + 1*t, digits low-to-high
    auto F13 = Field::make(13, 1);
    CHECK(F13.format(12) == "12");
    CHECK(F13.parse("12") == 12);
    CHECK_THROWS_AS(F13.parse("13"), invalid_input);
    CHECK_THROWS_AS(F9.parse("91"), invalid_input);
}

TEST_CASE("ring context") {
    Ring R(9);
    CHECK(R.add(5, 7) == 3);
    CHECK(R.sub(2, 5) == 6);
    CHECK(R.mul(4, 7) == 1);
    CHECK(R.neg(0) == 0);
    CHECK(R.neg(4) == 5);
    CHECK_THROWS_AS(Ring(4), invalid_input);
    CHECK_THROWS_AS(Ring(1), invalid_input);
}
