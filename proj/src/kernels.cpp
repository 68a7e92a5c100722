#include "trimodal/kernels.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "trimodal/error.h"
#include "trimodal/quadrature.h"
#include "trimodal/roots.h"
#include "trimodal/specfun.h"

namespace trimodal {

using std::numbers::pi;

double HFunction::operator()(double y) const {
  if (kind == Kind::constant) return C;
  return C / std::pow(shift + y, power);
}

Kernel::Kernel(KernelType type, double nu) : type_(type), nu_(nu) {
  if (type_ == KernelType::student_t) {
    if (!(nu_ > 0.0) || !std::isfinite(nu_)) throw DomainError("student_t kernel needs nu > 0");
    t_lognorm_ = std::lgamma(0.5 * (nu_ + 1.0)) - std::lgamma(0.5 * nu_) - 0.5 * std::log(nu_ * pi);
  } else {
    nu_ = 0.0;
  }
}

Kernel Kernel::from_name(std::string_view name, std::optional<double> nu) {
  if (name == "normal" || name == "gaussian") return Kernel(KernelType::normal);
  if (name == "laplace") return Kernel(KernelType::laplace);
  if (name == "logistic") return Kernel(KernelType::logistic);
  if (name == "cauchy") return Kernel(KernelType::cauchy);
  if (name == "gumbel") return Kernel(KernelType::gumbel);
  if (name == "student_t" || name == "student") {
    if (!nu) throw DomainError("student_t kernel needs --nu");
    return Kernel(KernelType::student_t, *nu);
  }
  throw DomainError("unknown kernel '" + std::string(name) + "'");
}

std::string Kernel::name() const {
  switch (type_) {
  case KernelType::normal: return "normal";
  case KernelType::laplace: return "laplace";
  case KernelType::logistic: return "logistic";
  case KernelType::cauchy: return "cauchy";
  case KernelType::student_t: return "student_t";
  case KernelType::gumbel: return "gumbel";
  }
  return "?";
}

std::optional<double> Kernel::shape_param() const {
  if (type_ == KernelType::student_t) return nu_;
  return std::nullopt;
}

double Kernel::log_pdf(double x) const {
  if (std::isnan(x)) throw DomainError("kernel pdf: x is NaN");
  switch (type_) {
  case KernelType::normal: return -0.5 * x * x - 0.5 * std::log(2.0 * pi);
  case KernelType::laplace: return -std::fabs(x) - std::numbers::ln2;
  case KernelType::logistic: {
    const double a = std::fabs(x);
    return -a - 2.0 * std::log1p(std::exp(-a));
  }
  case KernelType::cauchy: return -std::log(pi) - std::log1p(x * x);
  case KernelType::student_t: return t_lognorm_ - 0.5 * (nu_ + 1.0) * std::log1p(x * x / nu_);
  case KernelType::gumbel: return -x - std::exp(-x);
  }
  return 0.0;
}

double Kernel::pdf(double x) const {
  switch (type_) {
  case KernelType::normal: return specfun::norm_pdf(x);
  case KernelType::cauchy: return 1.0 / (pi * (1.0 + x * x));
  case KernelType::logistic: {
    const double e = std::exp(-std::fabs(x));
    return e / ((1.0 + e) * (1.0 + e));
  }
  default: return std::exp(log_pdf(x));
  }
}

double Kernel::cdf(double x) const {
  switch (type_) {
  case KernelType::normal: return specfun::norm_cdf(x);
  case KernelType::laplace: return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
  case KernelType::logistic: return 1.0 / (1.0 + std::exp(-x));
  case KernelType::cauchy:
    if (x < -1.0) return std::atan(-1.0 / x) / pi;
    return 0.5 + std::atan(x) / pi;
  case KernelType::student_t: {
    if (std::isinf(x)) return x < 0.0 ? 0.0 : 1.0;
    const double tail = 0.5 * specfun::regularized_beta(0.5 * nu_, 0.5, nu_ / (nu_ + x * x));
    return x < 0.0 ? tail : 1.0 - tail;
  }
  case KernelType::gumbel: return std::exp(-std::exp(-x));
  }
  return 0.0;
}

double Kernel::sf(double x) const {
  switch (type_) {
  case KernelType::normal: return specfun::norm_sf(x);
  case KernelType::laplace: return x > 0.0 ? 0.5 * std::exp(-x) : 1.0 - 0.5 * std::exp(x);
  case KernelType::logistic: return 1.0 / (1.0 + std::exp(x));
  case KernelType::cauchy:
    if (x > 1.0) return std::atan(1.0 / x) / pi;
    return 0.5 - std::atan(x) / pi;
  case KernelType::student_t: return cdf(-x);
  case KernelType::gumbel: return -std::expm1(-std::exp(-x));
  }
  return 0.0;
}

double Kernel::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("kernel quantile: u must lie in (0,1)");
  switch (type_) {
  case KernelType::laplace: return u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
  case KernelType::logistic: return std::log(u / (1.0 - u));
  case KernelType::cauchy: return std::tan(pi * (u - 0.5));
  case KernelType::gumbel: return -std::log(-std::log(u));
  default: break;
  }
  if (u == 0.5) return 0.0;
  // normal and Student-t: invert the cdf on the lower half, use symmetry above
  const double v = std::min(u, 1.0 - u);
  double lo = -2.0;
  while (cdf(lo) > v) lo *= 2.0;
  const double x = specfun::find_root([&](double t) { return cdf(t) - v; }, lo, 0.0, 1e-15 * std::fabs(lo));
  return u < 0.5 ? x : -x;
}

double Kernel::log_pdf_derivative_ratio(double x) const {
  switch (type_) {
  case KernelType::normal: return -x;
  case KernelType::laplace: return x > 0.0 ? -1.0 : (x < 0.0 ? 1.0 : 0.0);
  case KernelType::logistic: return -std::tanh(0.5 * x);
  case KernelType::cauchy: return -2.0 * x / (1.0 + x * x);
  case KernelType::student_t: return -(nu_ + 1.0) * x / (nu_ + x * x);
  case KernelType::gumbel: return std::expm1(-x);
  }
  return 0.0;
}

HFunction Kernel::h_function() const {
  using K = HFunction::Kind;
  switch (type_) {
  case KernelType::normal: return {K::constant, 1.0, 0.0, 0.0};
  case KernelType::laplace: return {K::inverse_sqrt, 1.0, 0.0, 0.5};
  case KernelType::cauchy: return {K::cauchy_like, 2.0, 1.0, 1.0};
  case KernelType::student_t: return {K::student_like, nu_ + 1.0, nu_, 1.0};
  default: break;
  }
  throw UnsupportedError("h_function: no h for the " + name() + " kernel");
}

double Kernel::moment_limit() const {
  if (type_ == KernelType::cauchy) return 1.0;
  if (type_ == KernelType::student_t) return nu_;
  return std::numeric_limits<double>::infinity();
}

double Kernel::even_moment(int k) const {
  if (k < 0) throw DomainError("even_moment: k must be >= 0");
  if (k == 0) return 1.0;
  if (!(2.0 * k < moment_limit()))
    throw DomainError("even_moment: E[W^" + std::to_string(2 * k) + "] does not exist for " + name());
  switch (type_) {
  case KernelType::normal: {
    double r = 1.0;
    for (int j = 2 * k - 1; j > 1; j -= 2) r *= j;
    return r;
  }
  case KernelType::laplace: return std::tgamma(2.0 * k + 1.0);
  case KernelType::logistic:
    return 2.0 * (1.0 - std::pow(2.0, 1.0 - 2.0 * k)) * std::tgamma(2.0 * k + 1.0) *
           std::riemann_zeta(2.0 * k);
  case KernelType::student_t:
    return std::exp(k * std::log(nu_) + std::lgamma(k + 0.5) + std::lgamma(0.5 * nu_ - k) -
                    0.5 * std::log(pi) - std::lgamma(0.5 * nu_));
  case KernelType::gumbel: {
    auto f = [&](double x) {
      const double lg = log_pdf(x);
      return x == 0.0 ? 0.0 : std::exp(2.0 * k * std::log(std::fabs(x)) + lg);
    };
    const double pts[] = {-std::numeric_limits<double>::infinity(), -3.0, 0.0, 5.0, 40.0,
                          std::numeric_limits<double>::infinity()};
    const auto r = specfun::integrate(f, pts, {1e-300, 1e-13, 400}, 5.0);
    if (!r.converged) throw ConvergenceError("even_moment: gumbel quadrature did not converge");
    return r.value;
  }
  default: break;
  }
  throw DomainError("even_moment: moment does not exist");
}

} // namespace trimodal
