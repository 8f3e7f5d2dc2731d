#include "qlab/bipartitions.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qlab {

void BipartitionParams::validate() const
{
    if (u < 2 || v < 2)
        throw std::invalid_argument("bipartition parameters must satisfy u, v >= 2 (got u=" +
                                    std::to_string(u) + ", v=" + std::to_string(v) + ")");
}

QSeries regular_partition_series(std::int64_t t, Ring ring, std::int64_t trunc)
{
    if (t < 2) throw std::invalid_argument("regular partitions need t >= 2");
    return eta_product(EtaProductSpec{{{t, 1}, {1, -1}}, 0}, ring, trunc);
}

EtaProductSpec bipartition_spec(const BipartitionParams& params)
{
    params.validate();
    if (params.u == params.v) return EtaProductSpec{{{params.u, 2}, {1, -2}}, 0};
    return EtaProductSpec{{{params.u, 1}, {params.v, 1}, {1, -2}}, 0};
}

QSeries bipartition_series(const BipartitionParams& params, Ring ring, std::int64_t trunc)
{
    return eta_product(bipartition_spec(params), ring, trunc);
}

namespace {

std::vector<std::int64_t> regular_counts(std::int64_t t, std::int64_t n)
{
    std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = 1;
    for (std::int64_t part = 1; part <= n; ++part) {
        if (part % t == 0) continue;
        for (std::int64_t k = part; k <= n; ++k) c[k] += c[k - part];
    }
    return c;
}

}  // namespace

std::int64_t bipartition_oracle(const BipartitionParams& params, std::int64_t n)
{
    params.validate();
    if (n < 0 || n > bipartition_oracle_limit)
        throw std::out_of_range("bipartition_oracle: n must lie in [0, " +
                                std::to_string(bipartition_oracle_limit) + "]");
    auto a = regular_counts(params.u, n);
    auto b = regular_counts(params.v, n);
    std::int64_t total = 0;
    for (std::int64_t j = 0; j <= n; ++j) total += a[j] * b[n - j];
    return total;
}

}  // namespace qlab
