#pragma once

// Slow, independent reference computations. Nothing here shares code with the
// library.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

// Partitions of n by direct counting of multisets of parts.
inline std::vector<i64> partitions(int N)
{
    std::vector<i64> p(N + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= N; ++part)
        for (int n = part; n <= N; ++n) p[n] += p[n - part];
    return p;
}

// prod_{n>=1} (1 - q^{delta n}) expanded factor by factor.
inline std::vector<i64> euler_direct(int delta, int N)
{
    std::vector<i64> c(N + 1, 0);
    c[0] = 1;
    for (int k = delta; k <= N; k += delta)
        for (int n = N; n >= k; --n) c[n] -= c[n - k];
    return c;
}

// 1 / prod_{n>=1} (1 - q^{delta n}) as a partition count into multiples of delta.
inline std::vector<i64> euler_inverse_direct(int delta, int N)
{
    std::vector<i64> c(N + 1, 0);
    c[0] = 1;
    for (int k = delta; k <= N; k += delta)
        for (int n = k; n <= N; ++n) c[n] += c[n - k];
    return c;
}

inline std::vector<i64> naive_mul(const std::vector<i64>& a, const std::vector<i64>& b, int N)
{
    std::vector<i64> c(N + 1, 0);
    for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// Product of (q^d;q^d)^r over the map, exponents of either sign.
inline std::vector<i64> eta_direct(const std::map<int, int>& factors, int N)
{
    std::vector<i64> c(N + 1, 0);
    c[0] = 1;
    for (auto [d, r] : factors) {
        auto f = r > 0 ? euler_direct(d, N) : euler_inverse_direct(d, N);
        for (int i = 0; i < std::abs(r); ++i) c = naive_mul(c, f, N);
    }
    return c;
}

inline bool is_prime_trial(i64 n)
{
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Legendre symbol by listing the squares mod p.
inline int legendre_brute(i64 a, i64 p)
{
    i64 r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

// B_{u,v}(n) mod m for n <= N: partitions into parts not divisible by u,
// convolved with those into parts not divisible by v.
inline std::vector<i64> regular_bipartitions_mod(int u, int v, int N, i64 m)
{
    auto regular = [&](int t) {
        std::vector<i64> c(N + 1, 0);
        c[0] = 1;
        for (int part = 1; part <= N; ++part) {
            if (part % t == 0) continue;
            for (int n = part; n <= N; ++n) c[n] = (c[n] + c[n - part]) % m;
        }
        return c;
    };
    auto a = regular(u), b = regular(v);
    std::vector<i64> out(N + 1, 0);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % m;
    return out;
}

}  // namespace oracle
