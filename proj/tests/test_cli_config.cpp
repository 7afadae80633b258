#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ffil/report.hpp"
#include "ffil/runconfig.hpp"
#include "ffil/spectral.hpp"

using namespace ffil;

TEST_CASE("prime power parsing") {
    auto a = parse_prime_power("7");
    CHECK(a.p == 7);
    CHECK(a.k == 1);
    auto b = parse_prime_power("9");
    CHECK(b.p == 3);
    CHECK(b.k == 2);
    auto c = parse_prime_power("3^2");
    CHECK(c.p == 3);
    CHECK(c.k == 2);
    CHECK(c.q == 9);
    auto d = parse_prime_power("27");
    CHECK(d.p == 3);
    CHECK(d.k == 3);

    CHECK_THROWS_AS(parse_prime_power("4"), invalid_input);    // even
    CHECK_THROWS_AS(parse_prime_power("2^3"), invalid_input);  // even characteristic
    CHECK_THROWS_AS(parse_prime_power("15"), invalid_input);   // not a prime power
    CHECK_THROWS_AS(parse_prime_power("9^2"), invalid_input);  // composite base
    CHECK_THROWS_AS(parse_prime_power(""), invalid_input);
    CHECK_THROWS_AS(parse_prime_power("abc"), invalid_input);
}

TEST_CASE("ring modulus parsing") {
    CHECK(parse_odd_q("15") == 15);
    CHECK(parse_odd_q("9") == 9);
    CHECK_THROWS_AS(parse_odd_q("4"), invalid_input);
    CHECK_THROWS_AS(parse_odd_q("1"), invalid_input);
}

TEST_CASE("uint list parsing") {
    auto v = parse_uint_list("2,3,4");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 2);
    CHECK(v[2] == 4);
    CHECK(parse_uint_list("2").size() == 1);
    CHECK_THROWS_AS(parse_uint_list(""), invalid_input);
    CHECK_THROWS_AS(parse_uint_list("2,,3"), invalid_input);
}

TEST_CASE("config to field and form") {
    RunConfig cfg;
    cfg.q_text = "3^2";
    cfg.d = 2;
    Field F = field_from_config(cfg);
    CHECK(F.q() == 9);
    DiagonalForm Q = form_from_config(cfg, F);  // defaults: sum of squares
    CHECK(Q.d() == 2);
    CHECK(Q.exps()[0] == 2);
    CHECK(Q.coeffs()[0] == 1);

    cfg.exps = {2, 3};
    CHECK_THROWS_AS(form_from_config(cfg, F), invalid_input);  // gcd(3, 3) != 1

    RunConfig bad;
    bad.q_text = "5";
    bad.d = 2;
    bad.exps = {2};
    Field F5 = field_from_config(bad);
    CHECK_THROWS_AS(form_from_config(bad, F5), invalid_input);  // list length != d
}

TEST_CASE("report serialization is deterministic") {
    auto F3 = Field::make(3, 1);
    auto Q = DiagonalForm::make(F3, {1}, {2});
    auto cert = certify(AlgebraicGraph::cayley_q(Q));
    std::string once = report::to_json(cert);
    std::string twice = report::to_json(cert);
    CHECK(once == twice);
    CHECK(once.find("\"lambda\"") != std::string::npos);
    CHECK(once.find("\"method\":\"character_sum\"") != std::string::npos);

    IncidenceReport r;
    r.count = 9;
    r.main = 9.0;
    r.error_bound = 9.0;
    r.slack = 9.0;
    r.verdict = true;
    r.p_size = 3;
    r.s_size = 9;
    CHECK(report::to_json(r) == report::to_json(r));
    CHECK(report::csv_row(r) == "9,9.0,9.0,9.0,1,3,9");
}

TEST_CASE("spectrum csv shape") {
    auto F3 = Field::make(3, 1);
    auto spec = cayley_spectrum(AlgebraicGraph::cayley_q(DiagonalForm::make(F3, {1}, {2})));
    std::string csv = report::spectrum_csv(spec);
    CHECK(csv.rfind("re,im,modulus\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + 9 rows
}
