#include "trimodal/batch.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "trimodal/error.h"
#include "trimodal/roots.h"

namespace trimodal::batch {

namespace {

constexpr std::ptrdiff_t kParallelMin = 512;

void check(size_t a, size_t b) {
  if (a != b) throw DomainError("batch: input and output sizes differ");
}

double sum_logq(std::span<const double> lf, double q) {
  double s = 0.0;
  for (double v : lf) {
    if (v == -std::numeric_limits<double>::infinity() || std::isnan(v))
      return -std::numeric_limits<double>::infinity();
    s += logq_from_log(v, q);
  }
  return s;
}

// Table of cdf values on an equispaced grid covering [min u, max u]; each u is
// then solved by Brent inside one cell.
struct CdfTable {
  std::vector<double> x, F;
};

CdfTable build_table(const TrimodalDistribution& d, double umin, double umax, int m, bool parallel) {
  CdfTable t;
  const double lo = d.quantile(umin), hi = d.quantile(umax);
  t.x.resize(m);
  t.F.resize(m);
  for (int j = 0; j < m; ++j) t.x[j] = lo + (hi - lo) * j / (m - 1);
  t.x.back() = hi;
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (int j = 0; j < m; ++j) t.F[j] = d.cdf(t.x[j]);
  return t;
}

double invert_in_table(const TrimodalDistribution& d, const CdfTable& t, double u) {
  if (u <= t.F.front() || u >= t.F.back()) return d.quantile(u);
  const auto it = std::upper_bound(t.F.begin(), t.F.end(), u);
  const size_t j = static_cast<size_t>(it - t.F.begin()) - 1;
  const auto& th = d.params();
  return specfun::find_root([&](double x) { return d.cdf(x) - u; }, t.x[j], t.x[j + 1],
                            1e-14 * (th.sigma + std::fabs(th.mu)));
}

void quantile_impl(const TrimodalDistribution& d, std::span<const double> u, std::span<double> out,
                   bool parallel) {
  check(u.size(), out.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
  if (n == 0) return;
  for (double v : u)
    if (!(v > 0.0 && v < 1.0)) throw DomainError("quantile: u must lie in (0,1)");
  if (n < 64) {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = d.quantile(u[i]);
    return;
  }
  const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
  const int m = static_cast<int>(std::clamp<std::ptrdiff_t>(n / 16, 64, 1024));
  const CdfTable t = build_table(d, *mn, *mx, m, parallel);
#pragma omp parallel for schedule(dynamic, 64) if (parallel && n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = invert_in_table(d, t, u[i]);
}

} // namespace

double logq_from_log(double log_f, double q) {
  if (q == 1.0) return log_f;
  return std::expm1((1.0 - q) * log_f) / (1.0 - q);
}

void pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out) {
  check(x.size(), out.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = d.pdf(x[i]);
}

void log_pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out) {
  check(x.size(), out.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = d.log_pdf(x[i]);
}

void cdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out) {
  check(x.size(), out.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(dynamic, 64) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = d.cdf(x[i]);
}

void quantile(const TrimodalDistribution& d, std::span<const double> u, std::span<double> out) {
  quantile_impl(d, u, out, true);
}

double loglq(const TrimodalDistribution& d, std::span<const double> x, double q) {
  std::vector<double> lf(x.size());
  log_pdf(d, x, lf);
  return sum_logq(lf, q);
}

namespace serial {

void pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out) {
  check(x.size(), out.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = d.pdf(x[i]);
}

void log_pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out) {
  check(x.size(), out.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = d.log_pdf(x[i]);
}

void cdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out) {
  check(x.size(), out.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = d.cdf(x[i]);
}

void quantile(const TrimodalDistribution& d, std::span<const double> u, std::span<double> out) {
  quantile_impl(d, u, out, false);
}

double loglq(const TrimodalDistribution& d, std::span<const double> x, double q) {
  std::vector<double> lf(x.size());
  serial::log_pdf(d, x, lf);
  return sum_logq(lf, q);
}

} // namespace serial

} // namespace trimodal::batch
