#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlab/eta_modularity.hpp"
#include "qlab/series.hpp"

namespace qlab {

struct HeckeContext {
    std::int64_t weight;
    // chi(p)
    int character_value;
    std::int64_t p;
};

// b(n) = a(pn) + chi(p) p^{k-1} a(n/p) for n <= result_trunc. A negative
// result_trunc means floor(a.trunc / p). Throws truncation_error when
// p * result_trunc exceeds a.trunc.
QSeries apply_tp(const QSeries& a, const HeckeContext& ctx, std::int64_t result_trunc = -1);

struct EigenResult {
    bool eigen;
    std::int64_t lambda;
    // First n <= bound where T_p a != lambda a; unset when eigen.
    std::optional<std::int64_t> witness;
};

// lambda = a(p); checks the relation for 1 <= n <= bound. Needs a(1) = 1 and
// a.trunc >= p * bound.
EigenResult eigen_check(const QSeries& a, const HeckeContext& ctx, std::int64_t bound);

struct WeightOneForm {
    std::string id;
    EtaQuotient quotient;
    // The discriminant D with chi(p) = (D/p) at odd p prime to the level.
    std::int64_t collapsed_discriminant;
    // Coefficients vanish off n = 1 (mod support_modulus).
    std::int64_t support_modulus;

    QSeries expansion(Ring ring, std::int64_t trunc) const;
    // Character at a prime p prime to the level, evaluated from the collapsed
    // discriminant (Kronecker symbol at p = 2).
    int chi(std::int64_t p) const;
    HeckeContext context(std::int64_t p) const;
};

// eta3_21, eta4_20, eta8_16.
const std::vector<WeightOneForm>& weight_one_forms();
const WeightOneForm& weight_one_form(const std::string& id);

}  // namespace qlab
