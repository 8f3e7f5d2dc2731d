#include <limits>
#include <stdexcept>
#include <utility>

#include "doctest.h"
#include "oracles.hpp"
#include "qlab/number_theory.hpp"
#include "qlab/rational.hpp"

using namespace qlab;

TEST_CASE("primality agrees with trial division")
{
    for (std::int64_t n = -5; n < 5000; ++n) CHECK(is_prime(n) == oracle::is_prime_trial(n));
    CHECK(is_prime(2147483647));
    CHECK(is_prime(1000000000000000003LL));
    CHECK_FALSE(is_prime(3215031751LL));
    CHECK_FALSE(is_prime(1000000000000000001LL));
}

TEST_CASE("legendre agrees with listing squares")
{
    for (std::int64_t p : primes_up_to(200)) {
        if (p == 2) continue;
        for (std::int64_t a = -2 * p; a <= 2 * p; ++a) CHECK(legendre(a, p) == oracle::legendre_brute(a, p));
    }
    CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 15), std::invalid_argument);
}

TEST_CASE("primes in residue classes")
{
    using V = std::vector<std::int64_t>;
    CHECK(primes_in_class(1, 24, 2, 2) == V{73, 97});
    CHECK(primes_in_class(2, 3, 2, 3) == V{2, 5, 11});
    CHECK(primes_in_class(1, 6, 2, 2) == V{7, 13});
    CHECK(primes_in_class(-1, 4, 2, 4) == V{3, 7, 11, 19});
    CHECK_THROWS_AS(primes_in_class(2, 4, 2, 1), std::invalid_argument);
    for (auto [r, m] : {std::pair{1, 8}, {5, 12}, {7, 24}, {1, 3}}) {
        auto ps = primes_in_class(r, m, 100, 40);
        auto ref = primes_in_class_between(r, m, 100, ps.back());
        CHECK(ps == ref);
        for (auto p : ps) CHECK(oracle::is_prime_trial(p));
    }
    CHECK(primes_in_class_between(1, 24, 2, 200) == V{73, 97, 193});
}

TEST_CASE("legendre properties")
{
    CHECK(legendre(14, 7) == 0);
    CHECK(legendre(1, 5) == 1);
    CHECK(legendre(-7, 5) == -1);
    for (std::int64_t p : {3, 5, 7, 11, 13, 97, 1009}) {
        for (std::int64_t a = -30; a <= 30; ++a) {
            CHECK(legendre(a + p, p) == legendre(a, p));
            for (std::int64_t b = -5; b <= 5; ++b) CHECK(legendre(a * b, p) == legendre(a, p) * legendre(b, p));
        }
    }
    CHECK(is_prime(73));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(343));
}

TEST_CASE("factorisation helpers")
{
    CHECK(factorize(10080) == std::vector<std::pair<std::int64_t, int>>{{2, 5}, {3, 2}, {5, 1}, {7, 1}});
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
    CHECK(valuation(1440, 2) == 5);
    CHECK(inverse_mod(3, 7) == 5);
    CHECK_THROWS_AS(inverse_mod(2, 4), std::domain_error);
    CHECK(powmod(-2, 3, 7) == 6);
    CHECK(ipow(5, 3) == 125);
    CHECK_THROWS_AS(ipow(10, 19), std::overflow_error);
}

TEST_CASE("rationals")
{
    Rational a(6, -4);
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK(a + Rational(3, 2) == 0);
    CHECK(a * Rational(2, 3) == -1);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(1) / Rational(4) == Rational(1, 4));
    CHECK(to_string(Rational(7, 14)) == "1/2");
    CHECK(to_string(Rational(-4, 2)) == "-2");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(std::numeric_limits<std::int64_t>::max()) * 2, std::overflow_error);
}
