#include <doctest.h>

#include <random>

#include "primlat/errors.hpp"
#include "primlat/report.hpp"
#include "primlat/rng.hpp"

using namespace primlat;

TEST_CASE("matrix text round-trips") {
    std::mt19937_64 gen(0x707u);
    for (int t = 0; t < 100; ++t) {
        std::size_t p = 1 + uniform_below(gen, 5), q = 1 + uniform_below(gen, 5);
        IntMatrix m(p, q);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < q; ++j) {
                m(i, j) = static_cast<long>(uniform_below(gen, 2001)) - 1000;
                m(i, j) *= mpz_class("100000000000000000000");  // exercise big entries
            }
        CHECK(parse_matrix(format_matrix(m)) == m);
    }
}

TEST_CASE("parser skips comments and blank lines") {
    IntMatrix m = parse_matrix("# header\n\n1 2\n  # note\n3 4\n");
    CHECK(m.rows() == 2);
    CHECK(m(1, 0) == 3);
}

TEST_CASE("parser errors") {
    CHECK_THROWS_AS(parse_matrix(""), parse_error);
    CHECK_THROWS_AS(parse_matrix("1 x"), parse_error);
    CHECK_THROWS_AS(parse_matrix("1 2\n3\n"), parse_error);
    try {
        parse_matrix("1 2\n3 oops\n");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("json payloads carry the schema version and stable fields") {
    EstimateResult r;
    r.d = 2;
    r.m = 1;
    r.n = 100;
    r.box_kind = "centered";
    r.seed = 7;
    r.trials = 10;
    r.successes = 6;
    r.estimate = 0.6;
    r.std_error = 0.15;
    r.target = CertifiedValue{mpq_class(3, 5), mpq_class(2, 3)};
    r.gap = 0.03;
    std::string j = estimate_to_json(r);
    CHECK(j.find("\"schema_version\":1") != std::string::npos);
    CHECK(j.find("\"target_lo\":\"3/5\"") != std::string::npos);
    CHECK(estimate_to_json(r) == j);  // byte-stable
}

TEST_CASE("csv formatting") {
    CHECK(convergence_csv_header() == "n,trials,estimate,std_error,target_lo,target_hi,gap");
    CHECK(format_decimal(0.6079271018540266) == "0.6079271019");
    CHECK(format_rational(mpq_class(23, 36)) == "23/36");
}
