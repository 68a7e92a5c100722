#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "trimodal/kernels.h"

namespace trimodal {

struct ParamVector {
  double mu = 0.0;
  double sigma = 1.0;
  double alpha = 1.0;
  double rho = 1.0;
  double delta = 1.0;
  double p = 1.5;

  // Throws DomainError if the invariants fail.
  void validate() const;
  bool valid() const noexcept;
};

// T(x; alpha, p) = P(p, x^2/alpha^2)
double t_transform(double x, double alpha, double p);

// Z_theta, including the sigma factor.
double normalizer(const Kernel& k, const ParamVector& theta);

// f(x) = [rho + delta T((x-mu)/sigma)] g((x-mu)/sigma) / Z
class TrimodalDistribution {
public:
  TrimodalDistribution(Kernel kernel, ParamVector params);

  const Kernel& kernel() const { return kernel_; }
  const ParamVector& params() const { return params_; }
  double z_norm() const { return z_norm_; }
  // Z/sigma = rho + delta J
  double k_norm() const { return k_norm_; }
  // J = P(|W| >= alpha sqrt(Y))
  double j_value() const { return j_; }

  double t(double z) const;
  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  // 1 - cdf(x), accurate in the right tail.
  double sf(double x) const;
  double quantile(double u) const;

private:
  // P(Z <= z) for z <= 0, or P(Z > z) for z >= 0 when `upper`; Z standardized.
  double tail_mass(double z, bool upper) const;

  Kernel kernel_;
  ParamVector params_;
  double z_norm_ = 0.0;
  double k_norm_ = 0.0;
  double j_ = 0.0;
  double gauss_a_ = 0.0;
  bool fast_t_ = false;
};

namespace detail {
// E[1{Y > u^2} h(alpha sqrt(Y))] with Y ~ Gamma(p,1), by quadrature over s = sqrt(Y).
double gamma_tail_expectation(const std::function<double(double)>& h, double u, double alpha, double p);
// A = alpha Gamma(p+1/2)/(sqrt(2 pi) Gamma(p)) 2F1(1/2, p+1/2; 3/2; -alpha^2/2) = E[Phi(alpha sqrt Y)] - 1/2
double gaussian_a(double alpha, double p);
// P(p,u) by upward recurrence from P(1/2,u) or P(1,u); 2p must be an integer.
double lower_gamma_recurrence(double p, double u);
} // namespace detail

} // namespace trimodal
