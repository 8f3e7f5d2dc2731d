#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlab/rational.hpp"
#include "qlab/series.hpp"

namespace qlab {

// prod eta(delta z)^{r_delta} on level N. Every delta must divide N.
struct EtaQuotient {
    std::int64_t level;
    std::map<std::int64_t, std::int64_t> factors;

    // Throws std::invalid_argument on a non-positive level, a zero exponent or a
    // delta that does not divide the level.
    void validate() const;
    // The q-series part: sum delta r_delta / 24 must be integral for this to be
    // a power series in q; throws std::invalid_argument otherwise.
    EtaProductSpec series_spec() const;
    std::string to_string() const;
};

// Parses "24:128,120:-5".
std::map<std::int64_t, std::int64_t> parse_factors(const std::string& text);

Rational weight(const EtaQuotient& eq);

enum class LevelCondition { ok, fails_delta_sum, fails_codelta_sum };
std::string to_string(LevelCondition c);
LevelCondition check_level_conditions(const EtaQuotient& eq);

// Kronecker symbol (a/n) for n >= 1.
int kronecker(std::int64_t a, std::int64_t n);

// chi(d) = ((-1)^k s / d) with s = prod delta^{r_delta} kept as prime exponents.
struct CharacterDescriptor {
    std::int64_t sign_exponent;
    std::map<std::int64_t, std::int64_t> s_factors;

    // Throws std::domain_error unless d >= 1 is coprime to every prime in s.
    int evaluate(std::int64_t d) const;
    // (-1)^k * prod p^{e mod 2}, the discriminant with the same values at
    // coprime arguments.
    std::int64_t squarefree_kernel() const;
    std::string to_string() const;
};

// Throws std::domain_error for non-integral weight.
CharacterDescriptor character_descriptor(const EtaQuotient& eq);

struct CuspOrder {
    std::int64_t c;
    std::int64_t d;
    Rational order;
};

// Order of vanishing at the cusp c/d; independent of c.
Rational cusp_order(const EtaQuotient& eq, std::int64_t c, std::int64_t d);

struct HolomorphyVerdict {
    bool holomorphic;
    // One representative cusp 1/d per divisor d of the level, ascending in d.
    std::vector<CuspOrder> cusps;
    // d with negative order; empty when holomorphic.
    std::vector<std::int64_t> negative_at;
    Rational min_order;
    bool cusp_form() const { return holomorphic && min_order > 0; }
};

// Orders are reported even if the level conditions or integrality of the
// weight fail; callers combine the verdict with those checks.
HolomorphyVerdict holomorphy_verdict(const EtaQuotient& eq);

struct FpmjSpec {
    std::int64_t p;
    std::int64_t m;
    std::int64_t j;
    // p prime >= 5, m >= 1 with every prime factor >= 5 and gcd(p, m) = 1, j >= 1.
    void validate() const;
    std::int64_t level() const;
};

// eta^{p^{j+1}+p-2}(24z) eta(24mz) / eta^{p^j}(24pz); the two 24-factors merge
// when m = 1.
EtaQuotient build_fpmj(const FpmjSpec& spec);

struct Lemma31Value {
    Rational G1;
    Rational G2;
    Rational L;
    bool nonneg;
};

// L = (p^{j+1}+p-2) p G1 + (p/m) G2 - p^j; d must divide the level.
Lemma31Value lemma31_inequality(const FpmjSpec& spec, std::int64_t d);

}  // namespace qlab
