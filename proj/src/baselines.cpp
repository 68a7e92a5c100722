#include "trimodal/baselines.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trimodal/error.h"
#include "trimodal/fit.h"
#include "trimodal/roots.h"
#include "trimodal/sampling.h"
#include "trimodal/specfun.h"

namespace trimodal {

double sample_quantile(std::vector<double> v, double prob) {
  if (v.empty()) throw DomainError("sample_quantile: empty data");
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * prob;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - lo) * (v[hi] - v[lo]);
}

namespace {

double sample_sd(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m += v;
  m /= x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / (x.size() - 1));
}

} // namespace

KdeModel kde_fit(std::span<const double> data, bool adaptive) {
  if (data.size() < 5) throw DomainError("kde_fit: need at least 5 observations");
  for (double x : data)
    if (!std::isfinite(x)) throw DomainError("kde_fit: data contain non-finite values");
  KdeModel m;
  m.data.assign(data.begin(), data.end());
  std::sort(m.data.begin(), m.data.end());
  const double sd = sample_sd(m.data);
  const double iqr = sample_quantile(m.data, 0.75) - sample_quantile(m.data, 0.25);
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0)) throw DomainError("kde_fit: data have zero spread");
  const double n = static_cast<double>(m.data.size());
  m.bandwidth = 0.9 * spread * std::pow(n, -0.2);
  m.local_factors.assign(m.data.size(), 1.0);
  m.adaptive = adaptive;
  if (adaptive) {
    std::vector<double> pilot(m.data.size());
    double lg = 0.0;
    for (size_t i = 0; i < pilot.size(); ++i) {
      pilot[i] = kde_pdf(m, m.data[i]);
      lg += std::log(pilot[i]);
    }
    const double G = std::exp(lg / n);
    for (size_t i = 0; i < pilot.size(); ++i) m.local_factors[i] = std::pow(std::max(pilot[i], 0.1 * G) / G, -0.5);
  }
  return m;
}

double kde_pdf(const KdeModel& m, double x) {
  double s = 0.0;
  for (size_t i = 0; i < m.data.size(); ++i) {
    const double h = m.bandwidth * m.local_factors[i];
    s += specfun::norm_pdf((x - m.data[i]) / h) / h;
  }
  return s / m.data.size();
}

double kde_cdf(const KdeModel& m, double x) {
  if (x == -INFINITY) return 0.0;
  if (x == INFINITY) return 1.0;
  double s = 0.0;
  for (size_t i = 0; i < m.data.size(); ++i)
    s += specfun::norm_cdf((x - m.data[i]) / (m.bandwidth * m.local_factors[i]));
  return s / m.data.size();
}

double kde_quantile(const KdeModel& m, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("kde_quantile: u must lie in (0,1)");
  const double lmax = *std::max_element(m.local_factors.begin(), m.local_factors.end());
  double pad = 10.0 * m.bandwidth * lmax;
  double lo = m.data.front() - pad, hi = m.data.back() + pad;
  while (kde_cdf(m, lo) > u) lo -= (pad *= 2.0);
  while (kde_cdf(m, hi) < u) hi += (pad *= 2.0);
  return specfun::find_root([&](double x) { return kde_cdf(m, x) - u; }, lo, hi, 1e-12 * m.bandwidth);
}

std::vector<double> kde_sample(const KdeModel& m, size_t n, std::uint64_t seed) {
  const auto u = uniform_draws(n, seed);
  std::vector<double> out(n);
  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16) if (nn >= 256)
  for (std::ptrdiff_t i = 0; i < nn; ++i) out[i] = kde_quantile(m, u[i]);
  return out;
}

double kde_loglik(const KdeModel& m, std::span<const double> x) {
  std::vector<double> lf(x.size());
  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (nn >= 256)
  for (std::ptrdiff_t i = 0; i < nn; ++i) lf[i] = std::log(kde_pdf(m, x[i]));
  double s = 0.0;
  for (double v : lf) s += v;
  return s;
}

double kde_mean(const KdeModel& m) {
  double s = 0.0;
  for (double v : m.data) s += v;
  return s / m.data.size();
}

double kde_sd(const KdeModel& m) {
  const double mu = kde_mean(m);
  double s = 0.0;
  for (size_t i = 0; i < m.data.size(); ++i) {
    const double h = m.bandwidth * m.local_factors[i];
    s += (m.data[i] - mu) * (m.data[i] - mu) + h * h;
  }
  return std::sqrt(s / m.data.size());
}

NormalFit normal_mle(std::span<const double> data) {
  if (data.size() < 2) throw DomainError("normal_mle: need at least 2 observations");
  NormalFit f;
  for (double v : data) f.mu += v;
  f.mu /= data.size();
  double ss = 0.0;
  for (double v : data) ss += (v - f.mu) * (v - f.mu);
  f.sigma = std::sqrt(ss / data.size());
  if (f.sigma == 0.0) f.warning = "zero standard deviation";
  return f;
}

double normal_loglik(const NormalFit& f, std::span<const double> data) {
  if (!(f.sigma > 0.0)) return -INFINITY;
  double s = 0.0;
  for (double v : data) {
    const double z = (v - f.mu) / f.sigma;
    s += -0.5 * z * z;
  }
  return s - data.size() * (std::log(f.sigma) + 0.5 * std::log(2.0 * std::numbers::pi));
}

RobustStats robust_stats(std::span<const double> data) {
  if (data.empty()) throw DomainError("robust_stats: empty data");
  return {median(std::vector<double>(data.begin(), data.end())), mad(data)};
}

} // namespace trimodal
