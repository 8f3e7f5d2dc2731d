#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qlab {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m);
// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
// Non-negative remainder.
inline std::int64_t floor_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Deterministic for all 64-bit inputs.
bool is_prime(std::int64_t n);

// Legendre symbol (a/p) for an odd prime p. Throws std::invalid_argument if p
// is not an odd prime.
int legendre(std::int64_t a, std::int64_t p);

// The first `count` primes p >= min with p = residue (mod modulus). Throws
// std::invalid_argument unless gcd(residue, modulus) = 1.
std::vector<std::int64_t> primes_in_class(std::int64_t residue, std::int64_t modulus,
                                          std::int64_t min, std::int64_t count);
// Primes p in [lo, hi] with p = residue (mod modulus).
std::vector<std::int64_t> primes_in_class_between(std::int64_t residue, std::int64_t modulus,
                                                  std::int64_t lo, std::int64_t hi);
std::vector<std::int64_t> primes_up_to(std::int64_t hi);

// Prime factorisation by trial division, as (prime, exponent) pairs ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

// Exponent of p in n (n != 0).
int valuation(std::int64_t n, std::int64_t p);

// Exact integer power; throws coefficient_overflow past int64.
std::int64_t ipow(std::int64_t b, std::int64_t e);

}  // namespace qlab
