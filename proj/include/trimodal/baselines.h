#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace trimodal {

// Gaussian-kernel density estimate. Point i uses bandwidth h * local_factors[i].
struct KdeModel {
  std::vector<double> data; // sorted
  double bandwidth = 0.0;
  bool adaptive = false;
  std::vector<double> local_factors;
};

// Silverman's rule h = 0.9 min(sd, IQR/1.34) n^(-1/5). Adaptive mode rescales
// each point by (pilot(x_i)/G)^(-1/2), G the geometric mean of the pilot
// values, with the pilot floored at 0.1 G.
KdeModel kde_fit(std::span<const double> data, bool adaptive = false);
double kde_pdf(const KdeModel& m, double x);
double kde_cdf(const KdeModel& m, double x);
double kde_quantile(const KdeModel& m, double u);
std::vector<double> kde_sample(const KdeModel& m, size_t n, std::uint64_t seed);
double kde_loglik(const KdeModel& m, std::span<const double> x);
double kde_mean(const KdeModel& m);
double kde_sd(const KdeModel& m);

struct NormalFit {
  double mu = 0.0;
  double sigma = 0.0; // divisor n
  std::string warning;
};
NormalFit normal_mle(std::span<const double> data);
double normal_loglik(const NormalFit& f, std::span<const double> data);

struct RobustStats {
  double median = 0.0;
  double mad = 0.0; // no consistency factor
};
RobustStats robust_stats(std::span<const double> data);

// Sample quantile with linear interpolation between order statistics.
double sample_quantile(std::vector<double> v, double prob);

} // namespace trimodal
