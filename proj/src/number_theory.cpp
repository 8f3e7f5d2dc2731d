#include "qlab/number_theory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qlab/errors.hpp"

namespace qlab {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    __int128 r = static_cast<__int128>(a) * b % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m)
{
    if (e < 0) throw std::invalid_argument("powmod: negative exponent");
    if (m == 1) return 0;
    std::int64_t base = floor_mod(a, m);
    std::int64_t r = 1;
    while (e > 0) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    if (m <= 0) throw std::invalid_argument("inverse_mod: modulus must be positive");
    std::int64_t old_r = floor_mod(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw std::domain_error("inverse_mod: " + std::to_string(a) + " is not invertible mod " +
                                std::to_string(m));
    return floor_mod(old_s, m);
}

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int legendre(std::int64_t a, std::int64_t p)
{
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("legendre: " + std::to_string(p) + " is not an odd prime");
    std::int64_t r = powmod(floor_mod(a, p), (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

std::vector<std::int64_t> primes_up_to(std::int64_t hi)
{
    std::vector<std::int64_t> out;
    if (hi < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
    for (std::int64_t i = 2; i <= hi; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= hi; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::int64_t> primes_in_class(std::int64_t residue, std::int64_t modulus,
                                          std::int64_t min, std::int64_t count)
{
    if (modulus <= 0) throw std::invalid_argument("primes_in_class: modulus must be positive");
    if (std::gcd(floor_mod(residue, modulus), modulus) != 1)
        throw std::invalid_argument("primes_in_class: residue and modulus are not coprime");
    std::vector<std::int64_t> out;
    std::int64_t p = std::max<std::int64_t>(min, 2);
    p += floor_mod(residue - p, modulus);
    for (; static_cast<std::int64_t>(out.size()) < count; p += modulus) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

std::vector<std::int64_t> primes_in_class_between(std::int64_t residue, std::int64_t modulus,
                                                  std::int64_t lo, std::int64_t hi)
{
    if (modulus <= 0) throw std::invalid_argument("primes_in_class: modulus must be positive");
    std::vector<std::int64_t> out;
    for (std::int64_t p : primes_up_to(hi)) {
        if (p >= lo && floor_mod(p - residue, modulus) == 0) out.push_back(p);
    }
    return out;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n)
{
    if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = out.size();
        std::int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int valuation(std::int64_t n, std::int64_t p)
{
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::int64_t ipow(std::int64_t b, std::int64_t e)
{
    if (e < 0) throw std::invalid_argument("ipow: negative exponent");
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, b, &r))
            throw coefficient_overflow("ipow: " + std::to_string(b) + "^" + std::to_string(e));
    }
    return r;
}

}  // namespace qlab
