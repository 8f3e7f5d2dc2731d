#include "qlab/series.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "qlab/ntt.hpp"
#include "qlab/number_theory.hpp"

namespace qlab {
namespace {

using i64 = std::int64_t;
using i128 = __int128;
using u64 = std::uint64_t;

[[noreturn]] void overflow(const char* where)
{
    throw coefficient_overflow(std::string(where) + ": coefficient exceeds int64 range");
}

i64 checked_add(i64 a, i64 b, const char* where)
{
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) overflow(where);
    return r;
}

i64 checked_mul(i64 a, i64 b, const char* where)
{
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) overflow(where);
    return r;
}

void require_same_ring(const QSeries& a, const QSeries& b, const char* where)
{
    if (a.ring() != b.ring())
        throw ring_mismatch(std::string(where) + ": " + a.ring().to_string() + " vs " +
                            b.ring().to_string());
}

struct Term {
    i64 exp;
    i64 val;
};

std::vector<Term> nonzero_terms(std::span<const i64> c)
{
    std::vector<Term> out;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) out.push_back({static_cast<i64>(i), c[i]});
    return out;
}

bool is_sparse(std::size_t nnz, std::size_t len)
{
    return nnz <= 16 || static_cast<double>(nnz) <= kernel_policy().sparse_density * len;
}

// Number of products (each < m^2) that can be summed in a u64 before reducing.
u64 batch_size(i64 m)
{
    u64 sq = static_cast<u64>(m - 1) * static_cast<u64>(m - 1);
    return sq == 0 ? std::numeric_limits<u64>::max() : std::numeric_limits<u64>::max() / sq - 1;
}

// c = a * (sparse b), length n.
std::vector<i64> mul_sparse(std::span<const i64> a, const std::vector<Term>& b, const Ring& ring,
                            std::size_t n)
{
    std::vector<i64> c(n, 0);
    if (ring.is_integers()) {
        for (const Term& t : b) {
            std::size_t end = std::min(n, a.size() + static_cast<std::size_t>(t.exp));
            for (std::size_t i = static_cast<std::size_t>(t.exp); i < end; ++i) {
                i64 ai = a[i - t.exp];
                if (ai == 0) continue;
                c[i] = checked_add(c[i], checked_mul(ai, t.val, "mul"), "mul");
            }
        }
        return c;
    }
    const i64 m = ring.modulus();
    const u64 um = static_cast<u64>(m);
    const u64 batch = batch_size(m);
    // +1 and -1 terms are summed without multiplying; sums of values below
    // 2^31 cannot overflow a u64 for any realistic number of terms.
    std::vector<u64> acc(n, 0), neg(n, 0);
    u64 pending = 0;
    for (const Term& t : b) {
        u64 v = static_cast<u64>(t.val);
        std::size_t end = std::min(n, a.size() + static_cast<std::size_t>(t.exp));
        std::size_t start = static_cast<std::size_t>(t.exp);
        const i64* src = a.data();
        if (v == 1) {
            for (std::size_t i = start; i < end; ++i) acc[i] += static_cast<u64>(src[i - start]);
            continue;
        }
        if (v == um - 1) {
            for (std::size_t i = start; i < end; ++i) neg[i] += static_cast<u64>(src[i - start]);
            continue;
        }
        for (std::size_t i = start; i < end; ++i) acc[i] += static_cast<u64>(src[i - start]) * v;
        if (++pending >= batch) {
            for (auto& x : acc) x %= um;
            pending = 1;
        }
    }
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<i64>((acc[i] % um + um - neg[i] % um) % um);
    return c;
}

std::vector<i64> mul_schoolbook(std::span<const i64> a, std::span<const i64> b, const Ring& ring,
                                std::size_t n)
{
    std::vector<i64> c(n, 0);
    const i64 m = ring.modulus();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t hi = std::min(i, b.size() - 1);
        std::size_t lo = i >= a.size() ? i - a.size() + 1 : 0;
        if (ring.is_integers()) {
            i128 s = 0;
            for (std::size_t k = lo; k <= hi; ++k) {
                i128 prod = static_cast<i128>(a[i - k]) * b[k];
                if (__builtin_add_overflow(s, prod, &s)) overflow("mul");
            }
            if (s > std::numeric_limits<i64>::max() || s < std::numeric_limits<i64>::min())
                overflow("mul");
            c[i] = static_cast<i64>(s);
        } else {
            unsigned __int128 s = 0;
            for (std::size_t k = lo; k <= hi; ++k)
                s += static_cast<u64>(a[i - k]) * static_cast<u64>(b[k]);
            c[i] = static_cast<i64>(s % static_cast<u64>(m));
        }
    }
    return c;
}

std::vector<i64> mul_raw(std::span<const i64> a, std::span<const i64> b, const Ring& ring,
                         std::size_t n)
{
    a = a.first(std::min(a.size(), n));
    b = b.first(std::min(b.size(), n));
    auto ta = nonzero_terms(a);
    auto tb = nonzero_terms(b);
    if (ta.size() < tb.size() ? is_sparse(ta.size(), n) : is_sparse(tb.size(), n)) {
        return ta.size() < tb.size() ? mul_sparse(b, ta, ring, n) : mul_sparse(a, tb, ring, n);
    }
    if (ring.is_integers() || static_cast<i64>(n) <= kernel_policy().schoolbook_limit)
        return mul_schoolbook(a, b, ring, n);
    return detail::convolve_mod(a, b, ring.modulus(), n);
}

i64 unit_inverse(const Ring& ring, i64 c0)
{
    if (ring.is_integers()) {
        if (c0 == 1 || c0 == -1) return c0;
        throw non_unit_error("constant term " + std::to_string(c0) + " is not a unit in Z");
    }
    if (std::gcd(c0, ring.modulus()) != 1)
        throw non_unit_error("constant term " + std::to_string(c0) + " is not a unit in " +
                             ring.to_string());
    return inverse_mod(c0, ring.modulus());
}

// c = a / b by the recurrence c(n) = u (a(n) - sum_{k>=1} b(k) c(n-k)).
std::vector<i64> divide_recurrence(std::span<const i64> a, std::span<const i64> b,
                                   const Ring& ring, std::size_t n)
{
    const i64 u = unit_inverse(ring, b[0]);
    std::vector<Term> tb;
    for (std::size_t k = 1; k < std::min(b.size(), n); ++k)
        if (b[k] != 0) tb.push_back({static_cast<i64>(k), b[k]});
    std::vector<i64> c(n, 0);
    if (ring.is_integers()) {
        for (std::size_t i = 0; i < n; ++i) {
            i128 s = i < a.size() ? a[i] : 0;
            for (const Term& t : tb) {
                if (t.exp > static_cast<i64>(i)) break;
                i128 prod = static_cast<i128>(t.val) * c[i - t.exp];
                if (__builtin_sub_overflow(s, prod, &s)) overflow("divide");
            }
            s *= u;
            if (s > std::numeric_limits<i64>::max() || s < std::numeric_limits<i64>::min())
                overflow("divide");
            c[i] = static_cast<i64>(s);
        }
        return c;
    }
    const u64 m = static_cast<u64>(ring.modulus());
    // Terms equal to +1 or -1 (every Euler product) need no multiplication.
    std::vector<i64> plus, minus;
    std::vector<Term> general;
    for (const Term& t : tb) {
        if (t.val == 1)
            plus.push_back(t.exp);
        else if (static_cast<u64>(t.val) == m - 1)
            minus.push_back(t.exp);
        else
            general.push_back(t);
    }
    // Blocked evaluation: contributions of terms with exponent >= block only
    // read finished coefficients and are added as contiguous runs; the rest
    // follow the recurrence inside the block.
    const std::size_t block = 2048;
    std::vector<u64> pos(block), neg(block), gen(block);
    const u64 ub = static_cast<u64>(u);
    for (std::size_t i0 = 0; i0 < n; i0 += block) {
        const std::size_t len = std::min(block, n - i0);
        std::fill(pos.begin(), pos.end(), 0);
        std::fill(neg.begin(), neg.end(), 0);
        std::fill(gen.begin(), gen.end(), 0);
        auto far = [&](const std::vector<i64>& exps, std::vector<u64>& acc) {
            for (i64 e : exps) {
                if (static_cast<std::size_t>(e) < block) continue;
                if (static_cast<std::size_t>(e) > i0 + len - 1) break;
                // i - e >= 0 for i >= max(i0, e).
                std::size_t start = std::max<std::size_t>(i0, e);
                const i64* src = c.data() + (start - e);
                u64* dst = acc.data() + (start - i0);
                for (std::size_t k = 0, cnt = i0 + len - start; k < cnt; ++k) dst[k] += static_cast<u64>(src[k]);
            }
        };
        far(plus, pos);
        far(minus, neg);
        u64 pending = 0;
        for (const Term& t : general) {
            if (static_cast<std::size_t>(t.exp) < block) continue;
            if (static_cast<std::size_t>(t.exp) > i0 + len - 1) break;
            std::size_t start = std::max<std::size_t>(i0, t.exp);
            for (std::size_t i = start; i < i0 + len; ++i)
                gen[i - i0] += static_cast<u64>(t.val) * static_cast<u64>(c[i - t.exp]);
            if (++pending >= batch_size(ring.modulus())) {
                for (auto& x : gen) x %= m;
                pending = 1;
            }
        }
        for (std::size_t i = i0; i < i0 + len; ++i) {
            u64 sp = pos[i - i0], sn = neg[i - i0];
            unsigned __int128 sg = gen[i - i0];
            for (i64 e : plus) {
                if (static_cast<std::size_t>(e) >= block || static_cast<std::size_t>(e) > i) break;
                sp += static_cast<u64>(c[i - e]);
            }
            for (i64 e : minus) {
                if (static_cast<std::size_t>(e) >= block || static_cast<std::size_t>(e) > i) break;
                sn += static_cast<u64>(c[i - e]);
            }
            for (const Term& t : general) {
                if (static_cast<std::size_t>(t.exp) >= block || static_cast<std::size_t>(t.exp) > i) break;
                sg += static_cast<u64>(t.val) * static_cast<u64>(c[i - t.exp]);
            }
            u64 sum = (sp % m + (m - sn % m) + static_cast<u64>(sg % m)) % m;
            u64 ai = i < a.size() ? static_cast<u64>(a[i]) : 0;
            u64 diff = (ai + m - sum) % m;
            c[i] = static_cast<i64>(diff * ub % m);
        }
    }
    return c;
}

// Newton iteration b <- b (2 - a b) over Z/mZ.
std::vector<i64> invert_newton(std::span<const i64> a, const Ring& ring, std::size_t n)
{
    const i64 m = ring.modulus();
    std::vector<i64> b{unit_inverse(ring, a[0])};
    std::size_t len = 1;
    while (len < n) {
        len = std::min(2 * len, n);
        auto ab = mul_raw(a.first(std::min(a.size(), len)), b, ring, len);
        for (auto& x : ab) x = x == 0 ? 0 : m - x;
        ab[0] = (ab[0] + 2) % m;
        b = mul_raw(b, ab, ring, len);
    }
    return b;
}

}  // namespace

KernelPolicy& kernel_policy()
{
    static KernelPolicy policy;
    return policy;
}

Ring Ring::mod(std::int64_t m)
{
    if (m < 2 || m >= (i64{1} << 31))
        throw std::invalid_argument("modulus must satisfy 2 <= m < 2^31, got " + std::to_string(m));
    return Ring{m};
}

std::string Ring::to_string() const { return m_ == 0 ? "Z" : "Z/" + std::to_string(m_); }

QSeries::QSeries(Ring ring, std::vector<std::int64_t> coeffs)
    : ring_(ring), coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) throw std::invalid_argument("QSeries needs at least one coefficient");
    if (!ring_.is_integers())
        for (auto& c : coeffs_) c = ring_.reduce(c);
}

QSeries QSeries::zero(Ring ring, std::int64_t trunc)
{
    if (trunc < 0) throw std::invalid_argument("truncation order must be non-negative");
    return QSeries(ring, std::vector<i64>(static_cast<std::size_t>(trunc) + 1, 0));
}

std::int64_t QSeries::coeff(std::int64_t n) const
{
    if (n < 0) return 0;
    if (n > trunc())
        throw truncation_error("coefficient " + std::to_string(n) + " requested beyond truncation " +
                               std::to_string(trunc()));
    return coeffs_[static_cast<std::size_t>(n)];
}

std::int64_t QSeries::coeff(std::int64_t num, std::int64_t den) const
{
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (num % den != 0) return 0;
    return coeff(num / den);
}

std::size_t QSeries::nonzero_count() const
{
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                  [](i64 c) { return c != 0; }));
}

bool QSeries::is_zero() const { return nonzero_count() == 0; }

QSeries QSeries::truncated(std::int64_t t) const
{
    if (t < 0 || t > trunc())
        throw truncation_error("cannot truncate order " + std::to_string(trunc()) + " series to " +
                               std::to_string(t));
    return QSeries(ring_, std::vector<i64>(coeffs_.begin(), coeffs_.begin() + t + 1));
}

void EtaProductSpec::validate() const
{
    if (prefactor_exponent < 0) throw std::invalid_argument("negative q-prefactor");
    std::set<i64> seen;
    for (const auto& f : factors) {
        if (f.delta <= 0) throw std::invalid_argument("eta factor delta must be positive");
        if (f.exponent == 0) throw std::invalid_argument("eta factor exponent must be non-zero");
        if (!seen.insert(f.delta).second)
            throw std::invalid_argument("repeated eta factor delta " + std::to_string(f.delta));
    }
}

QSeries series_one(Ring ring, std::int64_t trunc)
{
    QSeries z = QSeries::zero(ring, trunc);
    std::vector<i64> c(z.coeffs().begin(), z.coeffs().end());
    c[0] = 1;
    return QSeries(ring, std::move(c));
}

QSeries mul(const QSeries& a, const QSeries& b)
{
    require_same_ring(a, b, "mul");
    std::size_t n = static_cast<std::size_t>(std::min(a.trunc(), b.trunc())) + 1;
    return QSeries(a.ring(), mul_raw(a.coeffs(), b.coeffs(), a.ring(), n));
}

QSeries add(const QSeries& a, const QSeries& b)
{
    require_same_ring(a, b, "add");
    std::size_t n = static_cast<std::size_t>(std::min(a.trunc(), b.trunc())) + 1;
    std::vector<i64> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = a.ring().is_integers() ? checked_add(a.coeffs()[i], b.coeffs()[i], "add")
                                      : (a.coeffs()[i] + b.coeffs()[i]) % a.ring().modulus();
    }
    return QSeries(a.ring(), std::move(c));
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, scale(b, -1)); }

QSeries scale(const QSeries& a, std::int64_t k)
{
    std::vector<i64> c(a.coeffs().begin(), a.coeffs().end());
    if (a.ring().is_integers()) {
        for (auto& x : c) x = checked_mul(x, k, "scale");
    } else {
        i64 kr = a.ring().reduce(k);
        for (auto& x : c) x = mulmod(x, kr, a.ring().modulus());
    }
    return QSeries(a.ring(), std::move(c));
}

QSeries invert(const QSeries& a)
{
    std::size_t n = static_cast<std::size_t>(a.trunc()) + 1;
    const Ring& ring = a.ring();
    if (!ring.is_integers() && !is_sparse(a.nonzero_count(), n) &&
        static_cast<i64>(n) > kernel_policy().schoolbook_limit)
        return QSeries(ring, invert_newton(a.coeffs(), ring, n));
    std::vector<i64> one(1, 1);
    return QSeries(ring, divide_recurrence(one, a.coeffs(), ring, n));
}

QSeries divide(const QSeries& a, const QSeries& b)
{
    require_same_ring(a, b, "divide");
    std::size_t n = static_cast<std::size_t>(std::min(a.trunc(), b.trunc())) + 1;
    if (is_sparse(b.nonzero_count(), n) || a.ring().is_integers())
        return QSeries(a.ring(), divide_recurrence(a.coeffs(), b.coeffs(), a.ring(), n));
    return mul(a.truncated(static_cast<i64>(n) - 1), invert(b.truncated(static_cast<i64>(n) - 1)));
}

QSeries pow(const QSeries& a, std::int64_t e)
{
    if (e < 0) return pow(invert(a), -e);
    QSeries result = series_one(a.ring(), a.trunc());
    if (e == 0) return result;
    std::size_t n = static_cast<std::size_t>(a.trunc()) + 1;
    // Repeated sparse products stay cheap while the base is sparse and e small.
    if (is_sparse(a.nonzero_count(), n) && e <= 8) {
        for (i64 i = 0; i < e; ++i) result = mul(result, a);
        return result;
    }
    QSeries base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

QSeries euler_product(std::int64_t delta, Ring ring, std::int64_t trunc)
{
    if (delta <= 0) throw std::invalid_argument("euler_product: delta must be positive");
    std::vector<i64> c(static_cast<std::size_t>(QSeries::zero(ring, trunc).trunc()) + 1, 0);
    c[0] = 1;
    for (i64 k = 1;; ++k) {
        i128 lo = static_cast<i128>(delta) * k * (3 * k - 1) / 2;
        if (lo > trunc) break;
        i64 sign = k % 2 ? -1 : 1;
        c[static_cast<std::size_t>(lo)] += sign;
        i128 hi = lo + static_cast<i128>(delta) * k;
        if (hi <= trunc) c[static_cast<std::size_t>(hi)] += sign;
    }
    return QSeries(ring, std::move(c));
}

QSeries eta_product(const EtaProductSpec& spec, Ring ring, std::int64_t trunc)
{
    spec.validate();
    QSeries out = QSeries::zero(ring, trunc);
    i64 body = trunc - spec.prefactor_exponent;
    if (body < 0) return out;

    QSeries x = series_one(ring, body);
    std::vector<EtaFactor> ordered = spec.factors;
    std::stable_partition(ordered.begin(), ordered.end(),
                          [](const EtaFactor& f) { return f.exponent > 0; });
    for (const auto& f : ordered) {
        QSeries e = euler_product(f.delta, ring, body);
        i64 r = f.exponent;
        if (r > 8) {
            x = mul(x, pow(e, r));
        } else if (r > 0) {
            for (i64 i = 0; i < r; ++i) x = mul(x, e);
        } else if (r >= -8) {
            for (i64 i = 0; i < -r; ++i) x = divide(x, e);
        } else {
            x = divide(x, pow(e, -r));
        }
    }
    std::vector<i64> c(static_cast<std::size_t>(trunc) + 1, 0);
    for (i64 n = 0; n <= body; ++n) c[static_cast<std::size_t>(n + spec.prefactor_exponent)] = x.coeffs()[n];
    return QSeries(ring, std::move(c));
}

QSeries extract_progression(const QSeries& a, std::int64_t M, std::int64_t R)
{
    if (M <= 0) throw std::invalid_argument("extract_progression: modulus must be positive");
    if (R < 0 || R >= M)
        throw std::invalid_argument("extract_progression: residue must satisfy 0 <= R < M");
    if (R > a.trunc())
        throw truncation_error("extract_progression: offset " + std::to_string(R) +
                               " beyond truncation " + std::to_string(a.trunc()));
    i64 len = (a.trunc() - R) / M + 1;
    std::vector<i64> c(static_cast<std::size_t>(len));
    for (i64 n = 0; n < len; ++n) c[n] = a.coeffs()[static_cast<std::size_t>(M * n + R)];
    return QSeries(a.ring(), std::move(c));
}

QSeries reduce_mod(const QSeries& a, std::int64_t m)
{
    if (m < 2) throw std::invalid_argument("reduce_mod: modulus must be at least 2");
    if (!a.ring().is_integers()) {
        if (a.ring().modulus() % m != 0)
            throw ring_mismatch("reduce_mod: " + std::to_string(m) + " does not divide " +
                                std::to_string(a.ring().modulus()));
    }
    Ring r = Ring::mod(m);
    return QSeries(r, std::vector<i64>(a.coeffs().begin(), a.coeffs().end()));
}

QSeries shift_up(const QSeries& a, std::int64_t e)
{
    if (e < 0) throw std::invalid_argument("shift_up: negative shift");
    std::vector<i64> c(a.coeffs().size(), 0);
    for (std::size_t i = static_cast<std::size_t>(e); i < c.size(); ++i) c[i] = a.coeffs()[i - e];
    return QSeries(a.ring(), std::move(c));
}

}  // namespace qlab
