#pragma once

#include <array>
#include <span>

#include "trimodal/distribution.h"

namespace trimodal {

// Parameter order used by score vectors and information matrices.
enum ParamIndex { kMu = 0, kSigma = 1, kAlpha = 2, kRho = 3, kDelta = 4 };
inline constexpr int kNumParams = 5;
using Vec5 = std::array<double, kNumParams>;
using Mat5 = std::array<Vec5, kNumParams>;

Vec5 to_vec(const ParamVector& th);
ParamVector from_vec(const Vec5& v, double p);

// (x^(1-q) - 1)/(1 - q), or log x at q = 1.
double log_q(double x, double q);

// sum_i log_q f(x_i; theta). Returns -inf when theta is invalid or some f(x_i) = 0.
double logq_likelihood(std::span<const double> data, const Kernel& k, const ParamVector& theta, double q);

// Holds the distribution and dJ/dalpha so repeated score evaluations are cheap.
class ScoreContext {
public:
  ScoreContext(Kernel k, ParamVector theta);
  const TrimodalDistribution& dist() const { return dist_; }
  double dj_dalpha() const { return dj_; }
  // Gradient of log f(x; theta) in (mu, sigma, alpha, rho, delta).
  Vec5 score(double x) const;

private:
  TrimodalDistribution dist_;
  double dj_;
};

Vec5 score(const Kernel& k, const ParamVector& theta, double x);

} // namespace trimodal
