#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlab/rational.hpp"
#include "qlab/report.hpp"
#include "qlab/series.hpp"

namespace qlab {

// c(pn + shift) = c(shift) c(n) - mult * c((n - shift)/p) for
// f_1^a f_b with shift = (a + b)(p-1)/24.
enum class NewmanSeries { f1f7, f1f5, f1f2, f1_5f2, f1_9f2, f1_11f2 };

std::string to_string(NewmanSeries s);
// Accepts f1f7, f1f5, f1f2, f1^5f2, f1^9f2, f1^11f2.
NewmanSeries parse_newman_series(const std::string& id);
const std::vector<NewmanSeries>& all_newman_series();

struct NewmanIParams {
    NewmanSeries series;
    std::int64_t p;

    std::int64_t f1_exponent() const;
    std::int64_t other_delta() const;
    // a + b; shift = weight_sum * (p-1) / 24.
    std::int64_t weight_sum() const;
    // Residue class p = 1 (mod class_modulus) required for the recurrence.
    std::int64_t class_modulus() const;
    // Throws std::invalid_argument if p is not a prime in the class.
    void validate() const;
    std::int64_t shift() const;
    std::int64_t multiplier() const;
    EtaProductSpec spec() const;
    std::string relation() const;
};

enum class NewmanIMode {
    // The exact three-term recurrence for every n.
    full,
    // c(pn + shift) = c(shift) c(n), with n where p | (24n + a + b) reported
    // as excluded by hypothesis.
    reduced
};

// Expands the series over Z to `trunc` and checks every n with
// pn + shift <= trunc. Needs trunc >= 100 p.
VerificationReport newman1_verify(const NewmanIParams& params, std::int64_t trunc,
                                  NewmanIMode mode = NewmanIMode::full);

// (q;q)^r (q^Q;q^Q)^s with derived eps = (r+s)/2, t = (r+sQ)/24,
// Delta = t(p^2-1).
struct NewmanIIParams {
    std::int64_t q_prime;
    std::int64_t r;
    std::int64_t s;
    std::int64_t p;

    Rational epsilon() const;
    Rational t() const;
    // Throws std::invalid_argument when Delta is not integral.
    std::int64_t delta() const;
    // (theta/p) with theta = (-1)^{1/2-eps} 2 Q^s.
    int theta_symbol() const;
    // eps - 3/2, required to be a non-negative integer.
    std::int64_t half_power() const;
    // 2 eps - 2.
    std::int64_t back_power() const;
    // r != s (mod 2), r, s != 0, p >= 5 prime, and integrality of Delta,
    // 1/2 - eps and eps - 3/2.
    void validate() const;
    EtaProductSpec spec() const;
    std::string label() const;
};

// w(p) = a(Delta) + (theta/p) p^{eps-3/2} (-Delta/p), the value of
// p^{2eps-2} c fixed by the n = 0 instance. Throws truncation_error when
// trunc < Delta.
std::int64_t newman2_gamma0_constant(const NewmanIIParams& params, std::int64_t trunc);
std::int64_t newman2_gamma0_constant(const NewmanIIParams& params, const QSeries& a);

// The same constant recovered from the n = 1 instance; empty when a(1) = 0 or
// the quotient is not integral.
std::optional<std::int64_t> newman2_recalibrate(const NewmanIIParams& params, const QSeries& a);

// a(np^2 + Delta) = gamma0(n) a(n) - p^{2eps-2} a((n - Delta)/p^2) with
// gamma0(n) = w - (theta/p) p^{eps-3/2} ((n - Delta)/p), for every n with
// np^2 + Delta <= trunc.
VerificationReport newman2_verify(const NewmanIIParams& params, std::int64_t trunc);

}  // namespace qlab
