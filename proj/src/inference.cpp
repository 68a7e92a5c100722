#include "trimodal/inference.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "trimodal/batch.h"
#include "trimodal/error.h"
#include "trimodal/specfun.h"

namespace trimodal {

Vec5 to_vec(const ParamVector& th) { return {th.mu, th.sigma, th.alpha, th.rho, th.delta}; }

ParamVector from_vec(const Vec5& v, double p) { return {v[0], v[1], v[2], v[3], v[4], p}; }

double log_q(double x, double q) {
  if (!(x > 0.0)) throw DomainError("log_q: x must be > 0");
  return batch::logq_from_log(std::log(x), q);
}

double logq_likelihood(std::span<const double> data, const Kernel& k, const ParamVector& theta, double q) {
  if (!theta.valid()) return -std::numeric_limits<double>::infinity();
  const TrimodalDistribution d(k, theta);
  return batch::loglq(d, data, q);
}

namespace {

// dJ/dalpha with J = E[G(-alpha sqrt Y)] + E[S(alpha sqrt Y)], Y ~ Gamma(p,1).
double compute_dj_dalpha(const Kernel& k, double alpha, double p) {
  if (k.type() == KernelType::normal) {
    const double da = std::exp(std::lgamma(p + 0.5) - std::lgamma(p) - (p + 0.5) * std::log1p(0.5 * alpha * alpha)) /
                      std::sqrt(2.0 * std::numbers::pi);
    return -2.0 * da;
  }
  // -E[sqrt(Y) (g(alpha sqrt Y) + g(-alpha sqrt Y))]; the s factor is folded into h
  const double e = detail::gamma_tail_expectation(
      [&](double y) { return (y / alpha) * (k.pdf(y) + k.pdf(-y)); }, 0.0, alpha, p);
  return -e;
}

} // namespace

ScoreContext::ScoreContext(Kernel k, ParamVector theta)
    : dist_(std::move(k), theta), dj_(compute_dj_dalpha(dist_.kernel(), theta.alpha, theta.p)) {}

Vec5 ScoreContext::score(double x) const {
  const auto& th = dist_.params();
  const double z = (x - th.mu) / th.sigma;
  const double u = (z / th.alpha) * (z / th.alpha);
  const double T = dist_.t(z);
  const double w = th.rho + th.delta * T;
  const double gp = u == 0.0 && th.p < 1.0 ? 0.0 : specfun::gamma_pdf(th.p, u);
  const double dT_dz = gp * 2.0 * z / (th.alpha * th.alpha);
  const double dT_da = -gp * 2.0 * u / th.alpha;
  const double K = dist_.k_norm();
  const double inner = th.delta * dT_dz / w + dist_.kernel().log_pdf_derivative_ratio(z);
  Vec5 s;
  s[kMu] = -inner / th.sigma;
  s[kSigma] = -1.0 / th.sigma - z * inner / th.sigma;
  s[kAlpha] = th.delta * dT_da / w - th.delta * dj_ / K;
  s[kRho] = 1.0 / w - 1.0 / K;
  s[kDelta] = T / w - dist_.j_value() / K;
  return s;
}

Vec5 score(const Kernel& k, const ParamVector& theta, double x) {
  return ScoreContext(k, theta).score(x);
}

} // namespace trimodal
