#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "qlab/eta_modularity.hpp"
#include "qlab/number_theory.hpp"

using namespace qlab;
using i64 = std::int64_t;

namespace {

// Order at d over a common denominator, reduced by gcd; shares nothing with
// the rational type used by the library.
std::pair<i64, i64> cusp_order_oracle(const EtaQuotient& eq, i64 d)
{
    i64 L = 1;
    for (auto [delta, r] : eq.factors) L = std::lcm(L, delta);
    i64 num = 0;
    for (auto [delta, r] : eq.factors) {
        i64 g = std::gcd(d, delta);
        num += g * g * r * (L / delta);
    }
    num *= eq.level;
    i64 den = 24 * std::gcd(d, eq.level / d) * d * L;
    i64 g = std::gcd(num, den);
    return {num / g, den / g};
}

EtaQuotient fricke(const EtaQuotient& eq)
{
    EtaQuotient w{eq.level, {}};
    for (auto [delta, r] : eq.factors) w.factors[eq.level / delta] = r;
    return w;
}

}  // namespace

TEST_CASE("weights")
{
    CHECK(weight(EtaQuotient{63, {{3, 1}, {21, 1}}}) == 1);
    CHECK(weight(EtaQuotient{3, {{1, 2}, {3, 1}}}) == Rational(3, 2));
    CHECK(weight(build_fpmj({5, 1, 1})) == 12);
    CHECK(weight(build_fpmj({7, 1, 1})) == 24);
    for (i64 p : {5, 7, 11})
        for (i64 m : {1, 5, 7, 25, 35})
            for (i64 j : {1, 2}) {
                if (std::gcd(p, m) != 1) continue;
                CHECK(weight(build_fpmj({p, m, j})) == Rational((p - 1) * (ipow(p, j) + 1), 2));
            }
}

TEST_CASE("level conditions")
{
    CHECK(check_level_conditions({63, {{3, 1}, {21, 1}}}) == LevelCondition::ok);
    CHECK(check_level_conditions({128, {{8, 1}, {16, 1}}}) == LevelCondition::ok);
    CHECK(check_level_conditions({1, {{1, 1}}}) == LevelCondition::fails_delta_sum);
    CHECK(check_level_conditions({2, {{1, 12}, {2, 6}}}) == LevelCondition::fails_codelta_sum);
    CHECK_THROWS_AS(check_level_conditions({10, {{3, 1}}}), std::invalid_argument);
    for (i64 p : {5, 7, 11})
        for (i64 m : {1, 5, 7, 35})
            if (std::gcd(p, m) == 1) CHECK(check_level_conditions(build_fpmj({p, m, 1})) == LevelCondition::ok);
}

TEST_CASE("character descriptors")
{
    auto c63 = character_descriptor({63, {{3, 1}, {21, 1}}});
    CHECK(c63.sign_exponent == 1);
    CHECK(c63.s_factors == std::map<i64, i64>{{3, 2}, {7, 1}});
    CHECK(c63.squarefree_kernel() == -7);
    auto c80 = character_descriptor({80, {{4, 1}, {20, 1}}});
    CHECK(c80.s_factors == std::map<i64, i64>{{2, 4}, {5, 1}});
    auto c128 = character_descriptor({128, {{8, 1}, {16, 1}}});
    CHECK(c128.s_factors == std::map<i64, i64>{{2, 7}});
    CHECK_THROWS_AS(character_descriptor({3, {{1, 2}, {3, 1}}}), std::domain_error);

    // Factor-by-factor evaluation equals the Kronecker symbol of -s.
    for (i64 p : primes_up_to(300)) {
        if (p == 2) continue;
        if (p != 3 && p != 7) CHECK(c63.evaluate(p) == kronecker(-63, p));
        if (p != 5) CHECK(c80.evaluate(p) == kronecker(-80, p));
        CHECK(c128.evaluate(p) == kronecker(-128, p));
    }
    CHECK_THROWS_AS(c63.evaluate(21), std::domain_error);

    for (i64 p : {5, 7, 11}) {
        for (i64 m : {1, 7, 35}) {
            if (std::gcd(p, m) != 1) continue;
            for (i64 j : {1, 2}) {
                auto c = character_descriptor(build_fpmj({p, m, j}));
                i64 pj = ipow(p, j);
                CHECK(c.sign_exponent == (p - 1) * (pj + 1) / 2);
                CHECK(c.s_factors[2] == 3 * (p - 1) * (pj + 1));
                CHECK(c.s_factors[3] == (p - 1) * (pj + 1));
                CHECK(c.s_factors[p] == -pj);
                if (m == 35) CHECK(c.s_factors[5] + c.s_factors[7] == 2);
            }
        }
    }
}

TEST_CASE("kronecker symbol")
{
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-5, 2) == -1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(4, 2) == 0);
    for (i64 p : primes_up_to(200)) {
        if (p == 2) continue;
        for (i64 a = -50; a <= 50; ++a) CHECK(kronecker(a, p) == oracle::legendre_brute(a, p));
    }
    CHECK(kronecker(2, 15) == kronecker(2, 3) * kronecker(2, 5));
}

TEST_CASE("cusp orders")
{
    EtaQuotient f{63, {{3, 1}, {21, 1}}};
    for (i64 d : divisors(63)) CHECK(cusp_order(f, 1, d) == 1);
    CHECK(cusp_order(EtaQuotient{1, {{1, 1}}}, 1, 1) == Rational(1, 24));
    CHECK_THROWS_AS(cusp_order(f, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(cusp_order(f, 3, 3), std::invalid_argument);

    std::vector<EtaQuotient> samples{f,
                                     {80, {{4, 1}, {20, 1}}},
                                     {128, {{8, 1}, {16, 1}}},
                                     {36, {{1, -2}, {3, 7}, {12, -1}, {36, 2}}},
                                     build_fpmj({5, 1, 1}),
                                     build_fpmj({7, 5, 1}),
                                     build_fpmj({5, 7, 2})};
    for (const auto& eq : samples) {
        for (i64 d : divisors(eq.level)) {
            Rational o = cusp_order(eq, 1, d);
            auto [num, den] = cusp_order_oracle(eq, d);
            CHECK(o.numerator() == num);
            CHECK(o.denominator() == den);
            CHECK((24 * eq.level) % o.denominator() == 0);
            CHECK(cusp_order(fricke(eq), 1, eq.level / d) == o);
        }
    }
}

TEST_CASE("holomorphy")
{
    auto v = holomorphy_verdict({63, {{3, 1}, {21, 1}}});
    CHECK(v.holomorphic);
    CHECK(v.cusp_form());
    CHECK(v.cusps.size() == 6);
    auto neg = holomorphy_verdict({1, {{1, -1}}});
    CHECK_FALSE(neg.holomorphic);
    CHECK(neg.negative_at == std::vector<i64>{1});
    CHECK(neg.min_order == Rational(-1, 24));
    CHECK(holomorphy_verdict(build_fpmj({5, 1, 1})).holomorphic);
}

TEST_CASE("family construction")
{
    auto a = build_fpmj({5, 1, 1});
    CHECK(a.level == 1440);
    CHECK(a.factors == std::map<i64, i64>{{24, 29}, {120, -5}});
    auto b = build_fpmj({5, 7, 1});
    CHECK(b.level == 10080);
    CHECK(b.factors == std::map<i64, i64>{{24, 28}, {120, -5}, {168, 1}});
    CHECK_THROWS_AS(build_fpmj({3, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_fpmj({5, 5, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_fpmj({5, 6, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_fpmj({5, 1, 0}), std::invalid_argument);
}

TEST_CASE("cusp inequality agrees with cusp orders")
{
    CHECK(divisors(1440).size() == 36);
    for (i64 p : {5, 7, 11}) {
        for (i64 m : {1, 5, 7, 25, 35}) {
            if (std::gcd(p, m) != 1) continue;
            for (i64 j : {1, 2}) {
                FpmjSpec s{p, m, j};
                auto eq = build_fpmj(s);
                auto verdict = holomorphy_verdict(eq);
                CHECK(verdict.holomorphic);
                for (const auto& cusp : verdict.cusps) {
                    auto L = lemma31_inequality(s, cusp.d);
                    CHECK(L.nonneg);
                    // The order is a positive multiple of L.
                    CHECK((L.L > 0) == (cusp.order > 0));
                    CHECK((L.L == 0) == (cusp.order == 0));
                    if (cusp.d % p != 0) {
                        CHECK(L.G1 == 1);
                        CHECK(L.L > 0);
                    }
                }
                CHECK_THROWS_AS(lemma31_inequality(s, 13), std::invalid_argument);
            }
        }
    }
}

TEST_CASE("factor parsing")
{
    CHECK(parse_factors("24:128,120:-5") == std::map<i64, i64>{{24, 128}, {120, -5}});
    CHECK_THROWS_AS(parse_factors("24"), std::invalid_argument);
    CHECK_THROWS_AS(parse_factors("24:1,24:2"), std::invalid_argument);
}
