#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qlab::detail {

// Product of a and b modulo m, truncated to out_len coefficients. Inputs must
// already be reduced into [0, m) with m < 2^31. Uses three NTT primes and CRT,
// which is exact for lengths up to 2^23.
std::vector<std::int64_t> convolve_mod(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b,
                                       std::int64_t m, std::size_t out_len);

}  // namespace qlab::detail
