#pragma once

#include <cstdint>

#include "qlab/series.hpp"

namespace qlab {

struct BipartitionParams {
    std::int64_t u;
    std::int64_t v;
    // Throws std::invalid_argument unless u, v >= 2.
    void validate() const;
};

// b_t(n): partitions of n with no part divisible by t, as f_t / f_1.
QSeries regular_partition_series(std::int64_t t, Ring ring, std::int64_t trunc);

// B_{u,v}(n) as f_u f_v / f_1^2.
QSeries bipartition_series(const BipartitionParams& params, Ring ring, std::int64_t trunc);

EtaProductSpec bipartition_spec(const BipartitionParams& params);

inline constexpr std::int64_t bipartition_oracle_limit = 40;

// Counts pairs (alpha, beta) of a u-regular and a v-regular partition with
// |alpha| + |beta| = n by a table over allowed parts. Exact over Z; n <= 40.
std::int64_t bipartition_oracle(const BipartitionParams& params, std::int64_t n);

}  // namespace qlab
