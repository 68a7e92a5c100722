#include "trimodal/sampling.h"

#include <random>

#include "trimodal/batch.h"

namespace trimodal {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::vector<double> uniform_draws(size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> u(n);
  for (auto& v : u) {
    do {
      v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    } while (v == 0.0);
  }
  return u;
}

std::vector<double> sample(const TrimodalDistribution& d, size_t n, std::uint64_t seed) {
  const auto u = uniform_draws(n, seed);
  std::vector<double> x(n);
  batch::quantile(d, u, x);
  return x;
}

} // namespace trimodal
