#include "qlab/ntt.hpp"

#include <array>
#include <stdexcept>

namespace qlab::detail {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

u64 pw(u64 a, u64 e, u64 m)
{
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return r;
}

// All three primes have 3 as a primitive root.
template <u32 P>
void ntt(std::vector<u32>& a, bool inverse)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = pw(3, (P - 1) / len, P);
        if (inverse) w = pw(w, P - 2, P);
        std::vector<u32> ws(len / 2);
        ws[0] = 1;
        for (std::size_t i = 1; i < len / 2; ++i) ws[i] = static_cast<u32>(u64{ws[i - 1]} * w % P);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                u32 u = a[i + j];
                u32 v = static_cast<u32>(u64{a[i + j + len / 2]} * ws[j] % P);
                u32 s = u + v;
                a[i + j] = s >= P ? s - P : s;
                a[i + j + len / 2] = u >= v ? u - v : u + P - v;
            }
        }
    }
    if (inverse) {
        u64 inv_n = pw(n, P - 2, P);
        for (auto& x : a) x = static_cast<u32>(u64{x} * inv_n % P);
    }
}

template <u32 P>
std::vector<u32> conv(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                      std::size_t size)
{
    std::vector<u32> fa(size, 0), fb(size, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = static_cast<u32>(a[i] % P);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = static_cast<u32>(b[i] % P);
    ntt<P>(fa, false);
    ntt<P>(fb, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] = static_cast<u32>(u64{fa[i]} * fb[i] % P);
    ntt<P>(fa, true);
    return fa;
}

constexpr u32 P1 = 998244353, P2 = 167772161, P3 = 469762049;

}  // namespace

std::vector<std::int64_t> convolve_mod(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b, std::int64_t m,
                                       std::size_t out_len)
{
    std::vector<std::int64_t> out(out_len, 0);
    if (a.empty() || b.empty() || out_len == 0) return out;
    if (a.size() > out_len) a = a.first(out_len);
    if (b.size() > out_len) b = b.first(out_len);
    std::size_t need = a.size() + b.size() - 1;
    std::size_t size = 1;
    while (size < need) size <<= 1;
    if (size > (std::size_t{1} << 23)) throw std::length_error("convolve_mod: input too long");

    auto r1 = conv<P1>(a, b, size);
    auto r2 = conv<P2>(a, b, size);
    auto r3 = conv<P3>(a, b, size);

    const u64 inv_p1_mod_p2 = pw(P1, P2 - 2, P2);
    const u64 p1p2_mod_p3 = u64{P1} * P2 % P3;
    const u64 inv_p1p2_mod_p3 = pw(p1p2_mod_p3, P3 - 2, P3);
    const u64 mm = static_cast<u64>(m);
    const u64 p1_mod_m = P1 % mm;
    const u64 p1p2_mod_m = u64{P1} % mm * (P2 % mm) % mm;

    std::size_t n = std::min(out_len, need);
    for (std::size_t i = 0; i < n; ++i) {
        // x = x1 + P1 * k2 + P1 * P2 * k3, each k reduced into its prime.
        u64 x1 = r1[i];
        u64 k2 = (r2[i] + P2 - x1 % P2) % P2 * inv_p1_mod_p2 % P2;
        u64 x12_mod_p3 = (x1 + u64{P1} % P3 * k2) % P3;
        u64 k3 = (r3[i] + P3 - x12_mod_p3) % P3 * inv_p1p2_mod_p3 % P3;
        u64 v = (x1 % mm + p1_mod_m * k2 % mm + p1p2_mod_m * k3 % mm) % mm;
        out[i] = static_cast<std::int64_t>(v);
    }
    return out;
}

}  // namespace qlab::detail
