#include <doctest.h>

#include <cmath>

#include "oracles.h"
#include "trimodal/baselines.h"

using namespace trimodal;

TEST_CASE("Silverman bandwidth by hand") {
  // sd (n-1) = sqrt(32/7... computed below), IQR by type-7 quantiles
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 20};
  double m = 0.0;
  for (double v : x) m += v;
  m /= 8.0;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / 7.0);
  const double iqr = 6.25 - 2.75; // quantiles at 0.25 and 0.75
  const double h = 0.9 * std::min(sd, iqr / 1.34) * std::pow(8.0, -0.2);
  CHECK(kde_fit(x).bandwidth == doctest::Approx(h).epsilon(1e-14));
}

TEST_CASE("KDE is a density with a consistent cdf and quantile") {
  const std::vector<double> x{-2.0, -1.5, 0.1, 0.2, 0.25, 3.0, 3.3};
  for (bool adaptive : {false, true}) {
    const auto m = kde_fit(x, adaptive);
    const double mass = oracle::tanh_sinh_pieces([&](double t) { return kde_pdf(m, t); }, {-30.0, -2.0, 0.0, 3.0, 30.0});
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(kde_cdf(m, 0.0) == doctest::Approx(oracle::tanh_sinh_pieces([&](double t) { return kde_pdf(m, t); }, {-30.0, -2.0, 0.0})).epsilon(1e-10));
    for (double u : {0.01, 0.4, 0.9}) CHECK(kde_cdf(m, kde_quantile(m, u)) == doctest::Approx(u).epsilon(1e-10));
    CHECK(kde_mean(m) == doctest::Approx(oracle::tanh_sinh_pieces([&](double t) { return t * kde_pdf(m, t); }, {-30.0, 0.0, 30.0})).epsilon(1e-10));
    const auto s = kde_sample(m, 1000, 1);
    CHECK(s == kde_sample(m, 1000, 1));
  }
  const auto a = kde_fit(x, true);
  CHECK(a.local_factors.size() == x.size());
}

TEST_CASE("normal MLE and robust statistics") {
  const std::vector<double> x{1.0, 2.0, 4.0, 9.0};
  const auto nf = normal_mle(x);
  CHECK(nf.mu == 4.0);
  CHECK(nf.sigma == doctest::Approx(std::sqrt(38.0 / 4.0)));
  double ll = 0.0;
  for (double v : x) ll += std::log(oracle::base_pdf(KernelType::normal, 0, (v - 4.0) / nf.sigma) / nf.sigma);
  CHECK(normal_loglik(nf, x) == doctest::Approx(ll).epsilon(1e-14));
  const auto rs = robust_stats(x);
  CHECK(rs.median == 3.0);
  CHECK(rs.mad == 1.5);
  // linear interpolation between order statistics
  CHECK(sample_quantile(x, 0.5) == 3.0);
  CHECK(sample_quantile(x, 0.1) == doctest::Approx(1.3));
  CHECK(sample_quantile(x, 1.0) == 9.0);
}
