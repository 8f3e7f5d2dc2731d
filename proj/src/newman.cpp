#include "qlab/newman.hpp"

#include <chrono>
#include <stdexcept>

#include "qlab/number_theory.hpp"

namespace qlab {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw coefficient_overflow("newman: product overflow");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw coefficient_overflow("newman: difference overflow");
    return r;
}

double elapsed_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void record(VerificationReport& rep, std::int64_t n, std::int64_t index, std::int64_t lhs, std::int64_t rhs)
{
    ++rep.checked;
    if (lhs == rhs) return;
    rep.status = Status::fail;
    if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back({n, index, lhs, rhs});
}

}  // namespace

std::string to_string(NewmanSeries s)
{
    switch (s) {
    case NewmanSeries::f1f7: return "f1f7";
    case NewmanSeries::f1f5: return "f1f5";
    case NewmanSeries::f1f2: return "f1f2";
    case NewmanSeries::f1_5f2: return "f1^5f2";
    case NewmanSeries::f1_9f2: return "f1^9f2";
    case NewmanSeries::f1_11f2: return "f1^11f2";
    }
    return "?";
}

const std::vector<NewmanSeries>& all_newman_series()
{
    static const std::vector<NewmanSeries> all{NewmanSeries::f1f7,   NewmanSeries::f1f5,
                                               NewmanSeries::f1f2,   NewmanSeries::f1_5f2,
                                               NewmanSeries::f1_9f2, NewmanSeries::f1_11f2};
    return all;
}

NewmanSeries parse_newman_series(const std::string& id)
{
    for (auto s : all_newman_series())
        if (to_string(s) == id) return s;
    throw std::invalid_argument("unknown series '" + id +
                                "' (expected f1f7, f1f5, f1f2, f1^5f2, f1^9f2 or f1^11f2)");
}

std::int64_t NewmanIParams::f1_exponent() const
{
    switch (series) {
    case NewmanSeries::f1_5f2: return 5;
    case NewmanSeries::f1_9f2: return 9;
    case NewmanSeries::f1_11f2: return 11;
    default: return 1;
    }
}

std::int64_t NewmanIParams::other_delta() const
{
    switch (series) {
    case NewmanSeries::f1f7: return 7;
    case NewmanSeries::f1f5: return 5;
    default: return 2;
    }
}

std::int64_t NewmanIParams::weight_sum() const { return f1_exponent() + other_delta(); }

std::int64_t NewmanIParams::class_modulus() const
{
    switch (series) {
    case NewmanSeries::f1f7: return 6;
    case NewmanSeries::f1f5: return 4;
    case NewmanSeries::f1f2: return 8;
    default: return 24;
    }
}

void NewmanIParams::validate() const
{
    if (!is_prime(p) || p % class_modulus() != 1)
        throw std::invalid_argument(to_string(series) + " needs a prime p = 1 (mod " +
                                    std::to_string(class_modulus()) + "), got " + std::to_string(p));
}

std::int64_t NewmanIParams::shift() const { return weight_sum() * (p - 1) / 24; }

std::int64_t NewmanIParams::multiplier() const
{
    switch (series) {
    case NewmanSeries::f1f7: return (((p - 1) / 2) % 2 ? -1 : 1) * legendre(7, p);
    case NewmanSeries::f1f5: return legendre(5, p);
    case NewmanSeries::f1f2: return legendre(2, p);
    case NewmanSeries::f1_5f2: return p * p;
    case NewmanSeries::f1_9f2: return ipow(p, 4);
    case NewmanSeries::f1_11f2: return ipow(p, 5);
    }
    return 0;
}

EtaProductSpec NewmanIParams::spec() const
{
    return EtaProductSpec{{{1, f1_exponent()}, {other_delta(), 1}}, 0};
}

std::string NewmanIParams::relation() const
{
    return "c(pn+" + std::to_string(shift()) + ") = c(" + std::to_string(shift()) + ")c(n) - (" +
           std::to_string(multiplier()) + ")c((n-" + std::to_string(shift()) + ")/p)";
}

VerificationReport newman1_verify(const NewmanIParams& params, std::int64_t trunc, NewmanIMode mode)
{
    auto t0 = std::chrono::steady_clock::now();
    params.validate();
    const std::int64_t p = params.p;
    if (trunc < 100 * p)
        throw truncation_error("newman1_verify needs trunc >= 100 p = " + std::to_string(100 * p));
    const QSeries c = eta_product(params.spec(), Ring::integers(), trunc);
    const std::int64_t sh = params.shift(), mult = params.multiplier(), c_sh = c[sh];

    VerificationReport rep;
    rep.family = mode == NewmanIMode::full ? "newman1" : "newman1-reduced";
    rep.params = {{"series", to_string(params.series)}, {"p", p}, {"trunc", trunc}};
    rep.relation = mode == NewmanIMode::full
                       ? params.relation()
                       : "c(pn+" + std::to_string(sh) + ") = c(" + std::to_string(sh) + ")c(n)";
    rep.hypotheses.push_back({"p = 1 (mod " + std::to_string(params.class_modulus()) + ")", true});
    if (mode == NewmanIMode::reduced)
        rep.notes.push_back("n with p | (24n+" + std::to_string(params.weight_sum()) +
                            ") excluded by hypothesis");
    rep.n_min = 0;
    rep.n_max = (trunc - sh) / p;
    rep.requested_n_max = rep.n_max;
    for (std::int64_t n = 0; n <= rep.n_max; ++n) {
        std::int64_t main = checked_mul(c_sh, c[n]);
        if (mode == NewmanIMode::reduced) {
            if ((24 * n + params.weight_sum()) % p == 0) {
                ++rep.excluded;
                continue;
            }
            record(rep, n, p * n + sh, c[p * n + sh], main);
        } else {
            std::int64_t back = checked_mul(mult, c.coeff(n - sh, p));
            record(rep, n, p * n + sh, c[p * n + sh], checked_sub(main, back));
        }
    }
    rep.elapsed_ms = elapsed_since(t0);
    return rep;
}

Rational NewmanIIParams::epsilon() const { return Rational(r + s, 2); }
Rational NewmanIIParams::t() const { return Rational(r + s * q_prime, 24); }

std::int64_t NewmanIIParams::delta() const
{
    Rational d = t() * Rational(p * p - 1);
    if (d.denominator() != 1)
        throw std::invalid_argument("Newman II: Delta = " + to_string(d) + " is not integral");
    return d.numerator();
}

std::int64_t NewmanIIParams::half_power() const
{
    Rational e = epsilon() - Rational(3, 2);
    if (e.denominator() != 1 || e < 0)
        throw std::invalid_argument("Newman II: eps - 3/2 = " + to_string(e) +
                                    " is not a non-negative integer");
    return e.numerator();
}

std::int64_t NewmanIIParams::back_power() const
{
    Rational e = epsilon() * 2 - 2;
    if (e.denominator() != 1 || e < 0) throw std::invalid_argument("Newman II: 2 eps - 2 is not a non-negative integer");
    return e.numerator();
}

int NewmanIIParams::theta_symbol() const
{
    Rational sign_exp = Rational(1, 2) - epsilon();
    if (sign_exp.denominator() != 1) throw std::invalid_argument("Newman II: 1/2 - eps is not integral");
    int v = floor_mod(sign_exp.numerator(), 2) ? legendre(-1, p) : 1;
    v *= legendre(2, p);
    if (s % 2 != 0) v *= legendre(q_prime, p);
    return v;
}

void NewmanIIParams::validate() const
{
    if (r == 0 || s == 0) throw std::invalid_argument("Newman II: r and s must be non-zero");
    if (floor_mod(r - s, 2) == 0) throw std::invalid_argument("Newman II: r and s must differ in parity");
    if (q_prime < 2 || !is_prime(q_prime)) throw std::invalid_argument("Newman II: q must be prime");
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("Newman II: p must be a prime >= 5");
    if (s < 0) throw std::invalid_argument("Newman II: s must be positive");
    delta();
    half_power();
    back_power();
    theta_symbol();
}

EtaProductSpec NewmanIIParams::spec() const { return EtaProductSpec{{{1, r}, {q_prime, s}}, 0}; }

std::string NewmanIIParams::label() const
{
    return "(q,r,s)=(" + std::to_string(q_prime) + "," + std::to_string(r) + "," + std::to_string(s) +
           ") p=" + std::to_string(p);
}

std::int64_t newman2_gamma0_constant(const NewmanIIParams& params, const QSeries& a)
{
    params.validate();
    const std::int64_t d = params.delta(), p = params.p;
    if (a.trunc() < d)
        throw truncation_error("Newman II constant needs a(" + std::to_string(d) + "), truncation is " +
                               std::to_string(a.trunc()));
    std::int64_t term = checked_mul(params.theta_symbol() * legendre(-d, p), ipow(p, params.half_power()));
    return a[d] + term;
}

std::int64_t newman2_gamma0_constant(const NewmanIIParams& params, std::int64_t trunc)
{
    params.validate();
    if (trunc < params.delta())
        throw truncation_error("Newman II constant needs trunc >= Delta = " + std::to_string(params.delta()));
    return newman2_gamma0_constant(params, eta_product(params.spec(), Ring::integers(), trunc));
}

std::optional<std::int64_t> newman2_recalibrate(const NewmanIIParams& params, const QSeries& a)
{
    params.validate();
    const std::int64_t d = params.delta(), p = params.p, p2 = p * p;
    if (a.trunc() < p2 + d || a[1] == 0) return std::nullopt;
    std::int64_t num = a[p2 + d] + checked_mul(ipow(p, params.back_power()), a.coeff(1 - d, p2));
    if (num % a[1] != 0) return std::nullopt;
    std::int64_t term = checked_mul(params.theta_symbol() * legendre(1 - d, p), ipow(p, params.half_power()));
    return num / a[1] + term;
}

VerificationReport newman2_verify(const NewmanIIParams& params, std::int64_t trunc)
{
    auto t0 = std::chrono::steady_clock::now();
    params.validate();
    const std::int64_t d = params.delta(), p = params.p, p2 = p * p;
    if (trunc < 50 * p2 + d)
        throw truncation_error("newman2_verify needs trunc >= 50 p^2 + Delta = " + std::to_string(50 * p2 + d));
    const QSeries a = eta_product(params.spec(), Ring::integers(), trunc);
    const std::int64_t w = newman2_gamma0_constant(params, a);
    const std::int64_t theta_pow = params.theta_symbol() * ipow(p, params.half_power());
    const std::int64_t back = ipow(p, params.back_power());

    VerificationReport rep;
    rep.family = "newman2";
    rep.params = {{"q", params.q_prime}, {"r", params.r}, {"s", params.s}, {"p", p}, {"trunc", trunc}};
    rep.relation = "a(np^2+" + std::to_string(d) + ") = gamma0(n)a(n) - " + std::to_string(back) +
                   "a((n-" + std::to_string(d) + ")/p^2)";
    rep.hypotheses.push_back({"r, s non-zero of different parity", true});
    rep.annotations["Delta"] = d;
    rep.annotations["w"] = w;
    rep.annotations["theta_symbol"] = params.theta_symbol();
    if (auto w1 = newman2_recalibrate(params, a)) {
        rep.annotations["w_from_n1"] = *w1;
        if (*w1 != w) rep.notes.push_back("constant recalibrated at n=1 differs from n=0 value");
    }
    rep.n_max = (trunc - d) / p2;
    rep.requested_n_max = rep.n_max;
    for (std::int64_t n = 0; n <= rep.n_max; ++n) {
        std::int64_t gamma0 = checked_sub(w, checked_mul(theta_pow, legendre(n - d, p)));
        std::int64_t rhs = checked_sub(checked_mul(gamma0, a[n]), checked_mul(back, a.coeff(n - d, p2)));
        record(rep, n, n * p2 + d, a[n * p2 + d], rhs);
    }
    rep.elapsed_ms = elapsed_since(t0);
    return rep;
}

}  // namespace qlab
