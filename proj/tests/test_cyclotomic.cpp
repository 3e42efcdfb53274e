#include <catch2/catch_amalgamated.hpp>

#include "augtor/cyclotomic.hpp"
#include "test_util.hpp"

using namespace augtor;
using testutil::Rng;

namespace {

LaurentPoly P(std::vector<long> asc, long min_exp = 0) {
    std::vector<Int> c(asc.size());
    for (std::size_t i = 0; i < asc.size(); ++i) c[i] = asc[i];
    return LaurentPoly(std::move(c), min_exp);
}

}  // namespace

TEST_CASE("cyclotomic polynomials, frozen small orders") {
    CHECK(cyclotomic_poly(1) == P({-1, 1}));
    CHECK(cyclotomic_poly(2) == P({1, 1}));
    CHECK(cyclotomic_poly(3) == P({1, 1, 1}));
    CHECK(cyclotomic_poly(4) == P({1, 0, 1}));
    CHECK(cyclotomic_poly(6) == P({1, -1, 1}));
    CHECK(cyclotomic_poly(12) == P({1, 0, -1, 0, 1}));
    CHECK_THROWS_AS(cyclotomic_poly(0), domain_error);
}

TEST_CASE("product of cyclotomics over divisors gives t^n-1") {
    for (unsigned long n = 1; n <= 100; ++n) {
        LaurentPoly prod(1);
        for (unsigned long d : divisors_of(n)) prod = prod * cyclotomic_poly(d);
        CHECK(prod == cyclic_poly(static_cast<long>(n)));
    }
}

TEST_CASE("cyclotomic degree equals euler_phi") {
    for (unsigned long d = 1; d <= 200; ++d)
        CHECK(cyclotomic_poly(d).span() == static_cast<long>(euler_phi(d)));
}

TEST_CASE("value at one matches prime-power rule") {
    for (unsigned long d = 1; d <= 200; ++d)
        CHECK(evaluate_int(cyclotomic_poly(d), 1) == Rat(cyclotomic_value_at_one(d)));
    CHECK(cyclotomic_value_at_one(9) == 3);
    CHECK(cyclotomic_value_at_one(1) == 0);
    CHECK(cyclotomic_value_at_one(10) == 1);
}

TEST_CASE("euler_phi and mobius divisor sums") {
    for (unsigned long n = 1; n <= 200; ++n) {
        unsigned long phi_sum = 0;
        long mu_sum = 0;
        for (unsigned long d : divisors_of(n)) {
            phi_sum += euler_phi(d);
            mu_sum += mobius(d);
        }
        CHECK(phi_sum == n);
        CHECK(mu_sum == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("cyclo_factorize frozen example") {
    auto f = cyclo_factorize(P({-1, 1}) * P({-1, 1}) * P({1, -3, 1}));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair<unsigned long, unsigned>{1, 2});
    CHECK(f.g == P({1, -3, 1}));
    CHECK(f.gamma == 1);
    CHECK(f.q == 2);
    CHECK(f.weight == 1);
}

TEST_CASE("cyclo_factorize finds high-order cyclotomics and keeps content") {
    auto delta = Int(6) * (cyclotomic_poly(12) * cyclotomic_poly(6) * cyclotomic_poly(6));
    auto f = cyclo_factorize(delta.shifted(-2));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<unsigned long, unsigned>{6, 2});
    CHECK(f.factors[1] == std::pair<unsigned long, unsigned>{12, 1});
    CHECK(f.gamma == 12);
    CHECK(f.q == 0);
    CHECK(f.weight == 2);
    CHECK(f.g.span() == 0);
    // exact reassembly including the unit and content
    LaurentPoly prod = f.g;
    for (const auto& [d, e] : f.factors)
        for (unsigned k = 0; k < e; ++k) prod = prod * cyclotomic_poly(d);
    CHECK(prod == delta.shifted(-2));
}

TEST_CASE("cyclo_factorize reassembles on random products") {
    Rng rng(0x5eedc001);
    for (int it = 0; it < 40; ++it) {
        LaurentPoly delta = rng.nonzero_poly(3, 4, rng.range(-2, 2));
        int k = static_cast<int>(rng.range(0, 2));
        for (int i = 0; i < k; ++i)
            delta = delta * cyclotomic_poly(static_cast<unsigned long>(rng.range(1, 8)));
        auto f = cyclo_factorize(delta);
        LaurentPoly prod = f.g;
        for (const auto& [d, e] : f.factors)
            for (unsigned j = 0; j < e; ++j) prod = prod * cyclotomic_poly(d);
        CHECK(prod == delta);
        for (const auto& [d, e] : f.factors) CHECK_FALSE(divides(cyclotomic_poly(d), f.g));
    }
}
