#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qlab {

// Exact rational with int64 numerator and positive denominator, always in
// lowest terms. Arithmetic throws coefficient_overflow when a reduced result
// leaves int64.
class Rational {
public:
    Rational(std::int64_t n = 0) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_;
    std::int64_t den_;
};

std::string to_string(const Rational& r);

}  // namespace qlab
