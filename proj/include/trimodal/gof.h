#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace trimodal {

using Cdf = std::function<double(double)>;

// All statistics take data sorted ascending. The overloads taking `Fvals`
// expect F(x_(i)) in the same order.
double ks_statistic(std::span<const double> Fvals);
double ks_statistic(std::span<const double> sorted, const Cdf& F);

struct CvmResult {
  double standard = 0.0; // sum (F_i - (2i-1)/(2n))^2 + 1/(12n)
  double paper = 0.0;    // adds 1/(12n) per term: sum (...)^2 + 1/12
};
CvmResult cvm_statistic(std::span<const double> Fvals);
CvmResult cvm_statistic(std::span<const double> sorted, const Cdf& F);

struct AdResult {
  double paper = 0.0;    // -(1/n) sum (2i-1) [ln F_i + ln(1 - F_i)]
  double standard = 0.0; // -n - (1/n) sum (2i-1) [ln F_i + ln(1 - F_{n+1-i})]
  bool clamped = false;  // some F_i was moved into [1e-12, 1 - 1e-12]
};
AdResult ad_statistic(std::span<const double> Fvals);
AdResult ad_statistic(std::span<const double> sorted, const Cdf& F);

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
};
InformationCriteria information_criteria(double loglik, int k_params, long n);

struct GofReport {
  std::string model_label;
  long n = 0;
  int k_params = 0;
  double ks = 0.0;
  double cvm = 0.0;          // same-index variant
  double cvm_standard = 0.0;
  double ad_paper = 0.0;
  double ad_standard = 0.0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::vector<std::string> warnings;
};

GofReport make_gof_report(std::string label, std::span<const double> sorted, const Cdf& F, double loglik,
                          int k_params);

// Parameter counts used for AIC/BIC.
inline constexpr int kParamsTD = 5;
inline constexpr int kParamsNormal = 2;
inline constexpr int kParamsKDE = 1;

} // namespace trimodal
