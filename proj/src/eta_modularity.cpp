#include "qlab/eta_modularity.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qlab/number_theory.hpp"

namespace qlab {

void EtaQuotient::validate() const
{
    if (level <= 0) throw std::invalid_argument("eta quotient level must be positive");
    for (auto [delta, r] : factors) {
        if (delta <= 0) throw std::invalid_argument("eta quotient delta must be positive");
        if (r == 0) throw std::invalid_argument("eta quotient exponent must be non-zero");
        if (level % delta != 0)
            throw std::invalid_argument("delta " + std::to_string(delta) + " does not divide level " +
                                        std::to_string(level));
    }
}

EtaProductSpec EtaQuotient::series_spec() const
{
    std::int64_t s = 0;
    EtaProductSpec spec;
    for (auto [delta, r] : factors) {
        s += delta * r;
        spec.factors.push_back({delta, r});
    }
    if (s % 24 != 0 || s < 0)
        throw std::invalid_argument("eta quotient " + to_string() +
                                    " has no integral non-negative q-prefactor");
    spec.prefactor_exponent = s / 24;
    return spec;
}

std::string EtaQuotient::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (auto [delta, r] : factors) {
        if (!first) os << ',';
        os << delta << ':' << r;
        first = false;
    }
    return os.str();
}

std::map<std::int64_t, std::int64_t> parse_factors(const std::string& text)
{
    std::map<std::int64_t, std::int64_t> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("factor '" + item + "' is not delta:r");
        std::int64_t delta = std::stoll(item.substr(0, colon));
        std::int64_t r = std::stoll(item.substr(colon + 1));
        if (!out.emplace(delta, r).second)
            throw std::invalid_argument("repeated delta " + std::to_string(delta));
    }
    if (out.empty()) throw std::invalid_argument("no eta factors given");
    return out;
}

Rational weight(const EtaQuotient& eq)
{
    std::int64_t s = 0;
    for (auto [delta, r] : eq.factors) s += r;
    return Rational(s, 2);
}

std::string to_string(LevelCondition c)
{
    switch (c) {
    case LevelCondition::ok: return "ok";
    case LevelCondition::fails_delta_sum: return "fails_delta_sum";
    case LevelCondition::fails_codelta_sum: return "fails_codelta_sum";
    }
    return "?";
}

LevelCondition check_level_conditions(const EtaQuotient& eq)
{
    eq.validate();
    std::int64_t a = 0, b = 0;
    for (auto [delta, r] : eq.factors) {
        a = floor_mod(a + floor_mod(delta, 24) * floor_mod(r, 24), 24);
        b = floor_mod(b + floor_mod(eq.level / delta, 24) * floor_mod(r, 24), 24);
    }
    if (a != 0) return LevelCondition::fails_delta_sum;
    if (b != 0) return LevelCondition::fails_codelta_sum;
    return LevelCondition::ok;
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n <= 0) throw std::invalid_argument("kronecker: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        std::int64_t r = floor_mod(a, 8);
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (a/n) for odd n.
    a = floor_mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int CharacterDescriptor::evaluate(std::int64_t d) const
{
    if (d < 1) throw std::domain_error("character evaluated at non-positive argument");
    for (auto [p, e] : s_factors) {
        if (d % p == 0)
            throw std::domain_error("character evaluated at " + std::to_string(d) +
                                    ", which shares the prime " + std::to_string(p) + " with s");
    }
    int v = floor_mod(sign_exponent, 2) ? kronecker(-1, d) : 1;
    for (auto [p, e] : s_factors)
        if (floor_mod(e, 2) == 1) v *= kronecker(p, d);
    return v;
}

std::int64_t CharacterDescriptor::squarefree_kernel() const
{
    std::int64_t v = floor_mod(sign_exponent, 2) ? -1 : 1;
    for (auto [p, e] : s_factors)
        if (floor_mod(e, 2) == 1) v *= p;
    return v;
}

std::string CharacterDescriptor::to_string() const
{
    std::ostringstream os;
    os << "(-1)^" << sign_exponent;
    for (auto [p, e] : s_factors) os << " * " << p << '^' << e;
    return os.str();
}

CharacterDescriptor character_descriptor(const EtaQuotient& eq)
{
    eq.validate();
    Rational k = weight(eq);
    if (k.denominator() != 1)
        throw std::domain_error("character needs integral weight, got " + qlab::to_string(k));
    CharacterDescriptor out{k.numerator(), {}};
    for (auto [delta, r] : eq.factors) {
        if (delta == 1) continue;
        for (auto [p, e] : factorize(delta)) out.s_factors[p] += e * r;
    }
    std::erase_if(out.s_factors, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Rational cusp_order(const EtaQuotient& eq, std::int64_t c, std::int64_t d)
{
    eq.validate();
    const std::int64_t N = eq.level;
    if (d <= 0 || N % d != 0)
        throw std::invalid_argument("cusp denominator " + std::to_string(d) + " does not divide level " +
                                    std::to_string(N));
    if (std::gcd(c, d) != 1) throw std::invalid_argument("cusp c/d needs gcd(c, d) = 1");
    Rational sum = 0;
    for (auto [delta, r] : eq.factors) {
        std::int64_t g = std::gcd(d, delta);
        sum += Rational(g * g, delta) * r;
    }
    return sum * Rational(N, 24 * std::gcd(d, N / d) * d);
}

HolomorphyVerdict holomorphy_verdict(const EtaQuotient& eq)
{
    eq.validate();
    HolomorphyVerdict v{true, {}, {}, 0};
    bool first = true;
    for (std::int64_t d : divisors(eq.level)) {
        Rational o = cusp_order(eq, 1, d);
        v.cusps.push_back({1, d, o});
        if (o < 0) v.negative_at.push_back(d);
        if (first || o < v.min_order) v.min_order = o;
        first = false;
    }
    v.holomorphic = v.negative_at.empty();
    return v;
}

void FpmjSpec::validate() const
{
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("F_{p,m,j}: p must be a prime >= 5");
    if (m < 1) throw std::invalid_argument("F_{p,m,j}: m must be positive");
    if (j < 1) throw std::invalid_argument("F_{p,m,j}: j must be >= 1");
    if (std::gcd(p, m) != 1) throw std::invalid_argument("F_{p,m,j}: gcd(p, m) must be 1");
    if (m > 1)
        for (auto [q, e] : factorize(m))
            if (q < 5) throw std::invalid_argument("F_{p,m,j}: prime factors of m must be >= 5");
}

std::int64_t FpmjSpec::level() const { return 32 * 9 * p * m; }

EtaQuotient build_fpmj(const FpmjSpec& spec)
{
    spec.validate();
    const std::int64_t pj = ipow(spec.p, spec.j);
    EtaQuotient eq{spec.level(), {}};
    eq.factors[24] += pj * spec.p + spec.p - 2;
    eq.factors[24 * spec.m] += 1;
    eq.factors[24 * spec.p] -= pj;
    return eq;
}

Lemma31Value lemma31_inequality(const FpmjSpec& spec, std::int64_t d)
{
    spec.validate();
    if (d <= 0 || spec.level() % d != 0)
        throw std::invalid_argument("d = " + std::to_string(d) + " does not divide the level");
    const std::int64_t p = spec.p, m = spec.m, pj = ipow(p, spec.j);
    auto sq = [](std::int64_t x) { return x * x; };
    const std::int64_t g24 = sq(std::gcd(d, std::int64_t{24}));
    const std::int64_t g24m = sq(std::gcd(d, 24 * m));
    const std::int64_t g24p = sq(std::gcd(d, 24 * p));
    Lemma31Value v;
    v.G1 = Rational(g24, g24p);
    v.G2 = Rational(g24m, g24p);
    v.L = v.G1 * (pj * p + p - 2) * p + Rational(p, m) * v.G2 - pj;
    v.nonneg = v.L >= 0;
    return v;
}

}  // namespace qlab
