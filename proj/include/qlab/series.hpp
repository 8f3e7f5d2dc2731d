#pragma once

// Exact truncated power series over Z and Z/mZ.
//
// A QSeries holds a(0..N) where N is the truncation order. Every binary
// operation produces a result truncated at the smaller of the two inputs, so a
// coefficient that is not known is never silently treated as zero. Reading an
// index above N throws; reading a negative or fractional index yields 0, which
// is the convention used by all the recurrences in this library.
//
// Over Z coefficients are int64 and every operation checks for overflow. Over
// Z/mZ (2 <= m < 2^31) coefficients are stored reduced into [0, m).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qlab/errors.hpp"

namespace qlab {

class Ring {
public:
    static Ring integers() { return Ring{0}; }
    static Ring mod(std::int64_t m);

    bool is_integers() const { return m_ == 0; }
    // 0 for the integers.
    std::int64_t modulus() const { return m_; }
    std::string to_string() const;

    // Maps an arbitrary integer into the canonical representative of the ring
    // (identity over Z).
    std::int64_t reduce(std::int64_t x) const
    {
        if (m_ == 0) return x;
        x %= m_;
        return x < 0 ? x + m_ : x;
    }

    bool operator==(const Ring&) const = default;

private:
    explicit Ring(std::int64_t m) : m_(m) {}
    std::int64_t m_;
};

class QSeries {
public:
    // Coefficients are reduced into the ring. `coeffs` must be non-empty.
    QSeries(Ring ring, std::vector<std::int64_t> coeffs);

    static QSeries zero(Ring ring, std::int64_t trunc);

    const Ring& ring() const { return ring_; }
    std::int64_t trunc() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
    std::span<const std::int64_t> coeffs() const { return coeffs_; }

    // a(n): 0 for n < 0, throws truncation_error for n > trunc.
    std::int64_t coeff(std::int64_t n) const;
    // a(num/den): 0 unless num/den is a non-negative integer.
    std::int64_t coeff(std::int64_t num, std::int64_t den) const;
    std::int64_t operator[](std::int64_t n) const { return coeff(n); }

    std::size_t nonzero_count() const;
    bool is_zero() const;

    // Same coefficients, lower truncation order (t <= trunc).
    QSeries truncated(std::int64_t t) const;

    bool operator==(const QSeries&) const = default;

private:
    Ring ring_;
    std::vector<std::int64_t> coeffs_;
};

// One factor (q^delta; q^delta)_inf^exponent of an eta-type product.
struct EtaFactor {
    std::int64_t delta;
    std::int64_t exponent;
    bool operator==(const EtaFactor&) const = default;
};

// q^prefactor_exponent * prod (q^delta; q^delta)_inf^exponent.
struct EtaProductSpec {
    std::vector<EtaFactor> factors;
    std::int64_t prefactor_exponent = 0;

    // Throws std::invalid_argument on repeated or non-positive deltas, zero
    // exponents, or a negative prefactor.
    void validate() const;
};

QSeries series_one(Ring ring, std::int64_t trunc);

// Cauchy product truncated at min(a.trunc, b.trunc).
QSeries mul(const QSeries& a, const QSeries& b);
QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, std::int64_t c);

// Multiplicative inverse; the constant term must be a unit of the ring.
QSeries invert(const QSeries& a);
// a / b, equivalent to mul(a, invert(b)) but linear in the number of non-zero
// coefficients of b.
QSeries divide(const QSeries& a, const QSeries& b);

QSeries pow(const QSeries& a, std::int64_t e);

// (q^delta; q^delta)_inf up to q^trunc via the pentagonal number theorem.
QSeries euler_product(std::int64_t delta, Ring ring, std::int64_t trunc);

QSeries eta_product(const EtaProductSpec& spec, Ring ring, std::int64_t trunc);

// b(n) = a(M n + R).
QSeries extract_progression(const QSeries& a, std::int64_t M, std::int64_t R);

// Image of an integer series in Z/mZ.
QSeries reduce_mod(const QSeries& a, std::int64_t m);

// q^e * a, keeping the truncation order.
QSeries shift_up(const QSeries& a, std::int64_t e);

// Threshold knobs for the multiplication kernels. Exposed for tests and the
// benchmarks in tests/; the defaults are what every caller should use.
struct KernelPolicy {
    // Dense products at or below this truncation use the schoolbook kernel.
    std::int64_t schoolbook_limit = 256;
    // A factor with at most this fraction of non-zero coefficients is
    // multiplied term by term.
    double sparse_density = 0.08;
};
KernelPolicy& kernel_policy();

}  // namespace qlab
