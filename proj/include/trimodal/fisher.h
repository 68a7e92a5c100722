#pragma once

#include <stdexcept>
#include <array>
#include <optional>
#include <string>

#include "trimodal/inference.h"

namespace trimodal {

struct FisherMatrix {
  Mat5 I{};                           // already multiplied by n
  std::array<std::array<bool, 5>, 5> converged{}; // per-entry quadrature flag
  double q = 1.0;
  long n = 1;
  bool all_converged() const;
};

// I_jk = n * int s_j s_k f^(2-q) dx.
FisherMatrix fisher_information(const Kernel& k, const ParamVector& theta, double q, long n);

class SingularFisherError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The density depends on (rho, delta) only through delta/rho, so I is singular
// along (0,0,0,rho,delta). Variances of mu, sigma, alpha and delta come from the
// inverse of I with the rho row/column removed (rho held at its estimate), the
// variance of rho from the inverse with delta removed.
struct ParameterCovariance {
  Vec5 variance{};
  Mat5 inverse_rho_fixed{};   // 5x5 embedding of the 4x4 inverse, zero in the rho row/column
  double condition_full = 0.0;
  double condition_reduced = 0.0;
};

ParameterCovariance invert_fisher(const FisherMatrix& fi);

struct Interval {
  double lo = 0.0, hi = 0.0;
};

// theta_hat -/+ z sqrt(var); lower limits of sigma, alpha kept > 0, of rho, delta >= 0.
std::array<Interval, 5> confidence_intervals(const ParamVector& theta_hat, const Vec5& std_errors,
                                             double level = 0.95);
std::array<Interval, 5> confidence_intervals(const ParamVector& theta_hat, const FisherMatrix& fi,
                                             double level = 0.95);

double normal_quantile(double u);

} // namespace trimodal
