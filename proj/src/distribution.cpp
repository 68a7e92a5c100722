#include "trimodal/distribution.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "trimodal/error.h"
#include "trimodal/quadrature.h"
#include "trimodal/roots.h"
#include "trimodal/specfun.h"

namespace trimodal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool half_integer_order(double p) {
  return p <= 20.0 && std::floor(2.0 * p) == 2.0 * p;
}

} // namespace

void ParamVector::validate() const {
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be > 0");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("rho must be >= 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("delta must be >= 0");
  if (rho == 0.0 && delta == 0.0) throw DomainError("rho and delta cannot both be zero");
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p must be > 0");
}

bool ParamVector::valid() const noexcept {
  try {
    validate();
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

namespace detail {

double lower_gamma_recurrence(double p, double u) {
  double a, P, term;
  if (std::floor(p) == p) {
    a = 1.0;
    P = -std::expm1(-u);
    term = u * std::exp(-u);
  } else {
    a = 0.5;
    const double su = std::sqrt(u);
    P = std::erf(su);
    term = 2.0 * su * std::exp(-u) * std::numbers::inv_sqrtpi;
  }
  // P(a+1,u) = P(a,u) - u^a e^-u / Gamma(a+1)
  while (a < p) {
    P -= term;
    a += 1.0;
    term *= u / a;
  }
  return P < 0.0 ? 0.0 : P;
}

double gamma_tail_expectation(const std::function<double(double)>& h, double u, double alpha, double p) {
  const double lgp = std::lgamma(p);
  auto f = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double hv = h(alpha * s);
    if (hv == 0.0) return 0.0;
    return hv * std::exp(std::numbers::ln2 + (2.0 * p - 1.0) * std::log(s) - s * s - lgp);
  };
  const double peak = std::sqrt(std::max(p - 0.5, 0.0));
  std::vector<double> pts{u};
  for (double c : {peak, peak + 2.0, peak + 6.0})
    if (c > pts.back() + 1e-3) pts.push_back(c);
  pts.push_back(kInf);
  const auto r = specfun::integrate(f, pts, {1e-16, 1e-13, 400});
  if (!r.converged) throw ConvergenceError("gamma tail expectation did not converge");
  return r.value;
}

double gaussian_a(double alpha, double p) {
  const double c = alpha * std::exp(std::lgamma(p + 0.5) - std::lgamma(p)) /
                   std::sqrt(2.0 * std::numbers::pi);
  return c * specfun::gauss_2f1_neg(p, 0.5 * alpha * alpha);
}

} // namespace detail

double t_transform(double x, double alpha, double p) {
  if (!(alpha > 0.0) || !(p > 0.0)) throw DomainError("t_transform: need alpha > 0 and p > 0");
  const double r = x / alpha;
  return specfun::regularized_lower_gamma(p, r * r);
}

namespace {

// Returns (J, A); A only meaningful for the normal kernel.
std::pair<double, double> compute_j(const Kernel& k, double alpha, double p) {
  if (k.type() == KernelType::normal) {
    const double a = detail::gaussian_a(alpha, p);
    return {1.0 - 2.0 * a, a};
  }
  const double right = detail::gamma_tail_expectation([&](double y) { return k.sf(y); }, 0.0, alpha, p);
  const double left = k.symmetric()
                          ? right
                          : detail::gamma_tail_expectation([&](double y) { return k.cdf(-y); }, 0.0, alpha, p);
  return {left + right, 0.0};
}

} // namespace

double normalizer(const Kernel& k, const ParamVector& theta) {
  theta.validate();
  if (theta.delta == 0.0) return theta.rho * theta.sigma;
  const double j = compute_j(k, theta.alpha, theta.p).first;
  return theta.sigma * (theta.rho + theta.delta * j);
}

TrimodalDistribution::TrimodalDistribution(Kernel kernel, ParamVector params)
    : kernel_(std::move(kernel)), params_(params) {
  params_.validate();
  fast_t_ = half_integer_order(params_.p);
  std::tie(j_, gauss_a_) = compute_j(kernel_, params_.alpha, params_.p);
  k_norm_ = params_.delta == 0.0 ? params_.rho : params_.rho + params_.delta * j_;
  z_norm_ = params_.sigma * k_norm_;
  if (!(k_norm_ > 0.0)) throw DomainError("normalizer is not positive");
}

double TrimodalDistribution::t(double z) const {
  const double r = z / params_.alpha;
  const double u = r * r;
  if (std::isinf(u)) return 1.0;
  // the recurrence subtracts O(1) terms, so it is only used where P is not tiny
  if (fast_t_ && u >= params_.p - 1.0) return detail::lower_gamma_recurrence(params_.p, u);
  return specfun::regularized_lower_gamma(params_.p, u);
}

double TrimodalDistribution::pdf(double x) const {
  if (std::isnan(x)) throw DomainError("pdf: x is NaN");
  const double z = (x - params_.mu) / params_.sigma;
  const double w = params_.delta == 0.0 ? params_.rho : params_.rho + params_.delta * t(z);
  return w * kernel_.pdf(z) / z_norm_;
}

double TrimodalDistribution::log_pdf(double x) const {
  if (std::isnan(x)) throw DomainError("log_pdf: x is NaN");
  const double z = (x - params_.mu) / params_.sigma;
  const double w = params_.delta == 0.0 ? params_.rho : params_.rho + params_.delta * t(z);
  return std::log(w) + kernel_.log_pdf(z) - std::log(z_norm_);
}

double TrimodalDistribution::tail_mass(double z, bool upper) const {
  const auto& th = params_;
  const double zz = z;
  const double gz = upper ? kernel_.sf(zz) : kernel_.cdf(zz);
  if (th.delta == 0.0) return gz;
  const double T = t(zz);
  const double u = std::fabs(zz) / th.alpha;
  double extra;
  if (kernel_.type() == KernelType::normal && u <= 3.0) {
    // E[1{Y>u^2} Phi(-alpha sqrt Y)] = 1/2 - A - T/2 + I(u)/Gamma(p)
    double iu = 0.0;
    if (u > 0.0) {
      const double p = th.p, a = th.alpha;
      auto f = [&](double s) {
        return std::erf(a * s / std::numbers::sqrt2) * std::exp((2.0 * p - 1.0) * std::log(s) - s * s);
      };
      const auto r = specfun::integrate(f, 0.0, u, {1e-16, 1e-13, 200});
      if (!r.converged) throw ConvergenceError("cdf: I(u) quadrature did not converge");
      iu = r.value;
    }
    extra = 0.5 - gauss_a_ - 0.5 * T + iu * std::exp(-std::lgamma(th.p));
    if (extra < 0.0) extra = 0.0;
  } else if (upper) {
    extra = detail::gamma_tail_expectation([&](double y) { return kernel_.sf(y); }, u, th.alpha, th.p);
  } else {
    extra = detail::gamma_tail_expectation([&](double y) { return kernel_.cdf(-y); }, u, th.alpha, th.p);
  }
  return (th.rho * gz + th.delta * (T * gz + extra)) / k_norm_;
}

double TrimodalDistribution::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  const double z = (x - params_.mu) / params_.sigma;
  if (z <= 0.0) return tail_mass(z, false);
  return 1.0 - tail_mass(z, true);
}

double TrimodalDistribution::sf(double x) const {
  if (std::isnan(x)) throw DomainError("sf: x is NaN");
  if (x == -kInf) return 1.0;
  if (x == kInf) return 0.0;
  const double z = (x - params_.mu) / params_.sigma;
  if (z >= 0.0) return tail_mass(z, true);
  return 1.0 - tail_mass(z, false);
}

double TrimodalDistribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0,1)");
  const double mu = params_.mu, s = params_.sigma;
  if (u == 0.5 && kernel_.symmetric()) return mu;
  double lo = mu - 10.0 * s, hi = mu + 10.0 * s;
  for (int i = 0; cdf(lo) > u; ++i) {
    if (i > 200) throw BracketError("quantile: could not bracket the lower tail");
    lo = mu - 2.0 * (mu - lo);
  }
  for (int i = 0; sf(hi) > 1.0 - u; ++i) {
    if (i > 200) throw BracketError("quantile: could not bracket the upper tail");
    hi = mu + 2.0 * (hi - mu);
  }
  const double tol = 1e-14 * (s + std::fabs(mu));
  if (u <= 0.5) return specfun::find_root([&](double x) { return cdf(x) - u; }, lo, hi, tol);
  const double v = 1.0 - u;
  return specfun::find_root([&](double x) { return v - sf(x); }, lo, hi, tol);
}

} // namespace trimodal
