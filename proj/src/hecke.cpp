#include "qlab/hecke.hpp"

#include <numeric>
#include <stdexcept>

#include "qlab/number_theory.hpp"

namespace qlab {

QSeries apply_tp(const QSeries& a, const HeckeContext& ctx, std::int64_t result_trunc)
{
    if (!is_prime(ctx.p)) throw std::invalid_argument("T_p needs a prime p");
    if (ctx.weight < 1) throw std::invalid_argument("T_p needs a positive weight");
    const std::int64_t p = ctx.p;
    if (result_trunc < 0) result_trunc = a.trunc() / p;
    if (p * result_trunc > a.trunc())
        throw truncation_error("T_" + std::to_string(p) + " up to q^" + std::to_string(result_trunc) +
                               " needs coefficients to " + std::to_string(p * result_trunc) +
                               ", have " + std::to_string(a.trunc()));
    const Ring& ring = a.ring();
    std::int64_t c = ring.reduce(ctx.character_value);
    if (ring.is_integers())
        c *= ipow(p, ctx.weight - 1);
    else
        c = mulmod(c, powmod(p, ctx.weight - 1, ring.modulus()), ring.modulus());
    std::vector<std::int64_t> b(static_cast<std::size_t>(result_trunc) + 1);
    for (std::int64_t n = 0; n <= result_trunc; ++n) {
        std::int64_t back = a.coeff(n, p);
        if (ring.is_integers()) {
            std::int64_t t;
            if (__builtin_mul_overflow(c, back, &t) || __builtin_add_overflow(a[p * n], t, &t))
                throw coefficient_overflow("apply_tp");
            b[n] = t;
        } else {
            b[n] = (a[p * n] + mulmod(c, back, ring.modulus())) % ring.modulus();
        }
    }
    return QSeries(ring, std::move(b));
}

EigenResult eigen_check(const QSeries& a, const HeckeContext& ctx, std::int64_t bound)
{
    if (a.trunc() < 1 || a[1] != 1) throw std::invalid_argument("eigen_check needs a(1) = 1");
    QSeries b = apply_tp(a, ctx, bound);
    const std::int64_t lambda = a[ctx.p];
    const Ring& ring = a.ring();
    for (std::int64_t n = 1; n <= bound; ++n) {
        std::int64_t rhs;
        if (ring.is_integers()) {
            if (__builtin_mul_overflow(lambda, a[n], &rhs)) throw coefficient_overflow("eigen_check");
        } else {
            rhs = mulmod(lambda, a[n], ring.modulus());
        }
        if (b[n] != rhs) return {false, lambda, n};
    }
    return {true, lambda, std::nullopt};
}

QSeries WeightOneForm::expansion(Ring ring, std::int64_t trunc) const
{
    return eta_product(quotient.series_spec(), ring, trunc);
}

int WeightOneForm::chi(std::int64_t p) const
{
    if (!is_prime(p) || std::gcd(p, quotient.level) != 1)
        throw std::domain_error(id + ": character is used only at primes prime to the level");
    return p == 2 ? kronecker(collapsed_discriminant, 2) : legendre(collapsed_discriminant, p);
}

HeckeContext WeightOneForm::context(std::int64_t p) const
{
    Rational k = weight(quotient);
    return {k.numerator(), chi(p), p};
}

const std::vector<WeightOneForm>& weight_one_forms()
{
    static const std::vector<WeightOneForm> forms{
        {"eta3_21", {63, {{3, 1}, {21, 1}}}, -7, 3},
        {"eta4_20", {80, {{4, 1}, {20, 1}}}, -5, 4},
        {"eta8_16", {128, {{8, 1}, {16, 1}}}, -2, 8},
    };
    return forms;
}

const WeightOneForm& weight_one_form(const std::string& id)
{
    for (const auto& f : weight_one_forms())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown form '" + id + "' (expected eta3_21, eta4_20 or eta8_16)");
}

}  // namespace qlab
