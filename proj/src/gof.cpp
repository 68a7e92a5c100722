#include "trimodal/gof.h"

#include <algorithm>
#include <cmath>

#include "trimodal/error.h"

namespace trimodal {

namespace {

std::vector<double> eval_sorted(std::span<const double> sorted, const Cdf& F) {
  if (!std::is_sorted(sorted.begin(), sorted.end())) throw DomainError("gof: data must be sorted ascending");
  std::vector<double> v(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) v[i] = F(sorted[i]);
  return v;
}

void check_nonempty(std::span<const double> F) {
  if (F.empty()) throw DomainError("gof: need at least one observation");
}

} // namespace

double ks_statistic(std::span<const double> F) {
  check_nonempty(F);
  const double n = static_cast<double>(F.size());
  double d = 0.0;
  for (size_t i = 0; i < F.size(); ++i) {
    const double dp = (i + 1) / n - F[i];
    const double dn = F[i] - i / n;
    d = std::max({d, dp, dn});
  }
  return d;
}

double ks_statistic(std::span<const double> sorted, const Cdf& F) { return ks_statistic(eval_sorted(sorted, F)); }

CvmResult cvm_statistic(std::span<const double> F) {
  check_nonempty(F);
  const double n = static_cast<double>(F.size());
  double ss = 0.0;
  for (size_t i = 0; i < F.size(); ++i) {
    const double e = F[i] - (2.0 * (i + 1) - 1.0) / (2.0 * n);
    ss += e * e;
  }
  return {ss + 1.0 / (12.0 * n), ss + n * (1.0 / (12.0 * n))};
}

CvmResult cvm_statistic(std::span<const double> sorted, const Cdf& F) {
  return cvm_statistic(eval_sorted(sorted, F));
}

AdResult ad_statistic(std::span<const double> Fin) {
  check_nonempty(Fin);
  constexpr double lo = 1e-12, hi = 1.0 - 1e-12;
  AdResult r;
  std::vector<double> F(Fin.begin(), Fin.end());
  for (auto& v : F) {
    if (v < lo || v > hi) {
      v = std::clamp(v, lo, hi);
      r.clamped = true;
    }
  }
  const size_t n = F.size();
  const double dn = static_cast<double>(n);
  double sp = 0.0, ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double w = 2.0 * (i + 1) - 1.0;
    sp += w * (std::log(F[i]) + std::log1p(-F[i]));
    ss += w * (std::log(F[i]) + std::log1p(-F[n - 1 - i]));
  }
  r.paper = -sp / dn;
  r.standard = -dn - ss / dn;
  return r;
}

AdResult ad_statistic(std::span<const double> sorted, const Cdf& F) { return ad_statistic(eval_sorted(sorted, F)); }

InformationCriteria information_criteria(double loglik, int k, long n) {
  if (n < 1) throw DomainError("information_criteria: n must be >= 1");
  if (k < 0) throw DomainError("information_criteria: k must be >= 0");
  return {-2.0 * loglik + 2.0 * k, -2.0 * loglik + k * std::log(static_cast<double>(n))};
}

GofReport make_gof_report(std::string label, std::span<const double> sorted, const Cdf& F, double loglik,
                          int k_params) {
  const auto Fv = eval_sorted(sorted, F);
  GofReport r;
  r.model_label = std::move(label);
  r.n = static_cast<long>(sorted.size());
  r.k_params = k_params;
  r.ks = ks_statistic(Fv);
  const auto cvm = cvm_statistic(Fv);
  r.cvm = cvm.paper;
  r.cvm_standard = cvm.standard;
  const auto ad = ad_statistic(Fv);
  r.ad_paper = ad.paper;
  r.ad_standard = ad.standard;
  if (ad.clamped) r.warnings.push_back("F values clamped to [1e-12, 1-1e-12] for the AD statistic");
  r.loglik = loglik;
  const auto ic = information_criteria(loglik, k_params, r.n);
  r.aic = ic.aic;
  r.bic = ic.bic;
  return r;
}

} // namespace trimodal
