#pragma once

#include <cstdint>
#include <vector>

#include "trimodal/distribution.h"

namespace trimodal {

// Uniform draws in (0,1) from mt19937_64, 53-bit mantissas; identical on every platform.
std::vector<double> uniform_draws(size_t n, std::uint64_t seed);

// Inverse-cdf sampling: quantile(U).
std::vector<double> sample(const TrimodalDistribution& d, size_t n, std::uint64_t seed);

// SplitMix64 step, used to derive independent stream seeds from (seed, index).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

} // namespace trimodal
