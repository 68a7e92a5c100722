#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trimodal/fisher.h"

using namespace trimodal;

TEST_CASE("Gaussian block at delta = 0 and scaling with n") {
  const auto fi = fisher_information(Kernel(), {1.0, 2.0, 1.0, 1.0, 0.0, 1.5}, 1.0, 50);
  CHECK(fi.all_converged());
  CHECK(fi.I[kMu][kMu] == doctest::Approx(50.0 / 4.0).epsilon(1e-9));
  CHECK(fi.I[kSigma][kSigma] == doctest::Approx(100.0 / 4.0).epsilon(1e-9));
  const auto f1 = fisher_information(Kernel(), {0.0, 1.0, 1.0, 1.0, 1.0, 1.5}, 1.0, 1);
  const auto f7 = fisher_information(Kernel(), {0.0, 1.0, 1.0, 1.0, 1.0, 1.5}, 1.0, 7);
  CHECK(f7.I[kAlpha][kAlpha] == doctest::Approx(7.0 * f1.I[kAlpha][kAlpha]).epsilon(1e-14));
  // symmetric kernel: location decouples from the scale-type parameters
  CHECK(std::abs(f1.I[kMu][kSigma]) < 1e-12);
  CHECK(std::abs(f1.I[kMu][kAlpha]) < 1e-12);
}

TEST_CASE("singular direction along (rho, delta)") {
  const ParamVector th{0.0, 1.0, 1.0, 0.8, 1.6, 1.5};
  const auto fi = fisher_information(Kernel(), th, 1.0, 100);
  double v[5] = {0, 0, 0, th.rho, th.delta};
  for (int i = 0; i < 5; ++i) {
    double s = 0.0;
    for (int j = 0; j < 5; ++j) s += fi.I[i][j] * v[j];
    CHECK(std::abs(s) < 1e-8 * fi.I[i][i] + 1e-10);
  }
  const auto cov = invert_fisher(fi);
  CHECK(cov.condition_full > 1e12);
  CHECK(cov.condition_reduced < 1e8);
  for (double var : cov.variance) CHECK(var > 0.0);
  CHECK(cov.inverse_rho_fixed[kRho][kRho] == 0.0);
}

TEST_CASE("non-positive-definite input is rejected") {
  FisherMatrix fi;
  CHECK_THROWS_AS(invert_fisher(fi), SingularFisherError);
}

TEST_CASE("confidence intervals") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0));
  const ParamVector th{0.0, 0.1, 0.2, 0.05, 1.0, 1.5};
  const auto ci = confidence_intervals(th, Vec5{0.1, 0.5, 0.5, 0.5, 0.1}, 0.95);
  CHECK(ci[kMu].lo == doctest::Approx(-0.1959963984540054));
  CHECK(ci[kSigma].lo > 0.0);
  CHECK(ci[kAlpha].lo > 0.0);
  CHECK(ci[kRho].lo == 0.0);
  CHECK(ci[kDelta].hi == doctest::Approx(1.0 + 0.1959963984540054));
}

TEST_CASE("q below one weights by f^(1-q)") {
  const auto f = fisher_information(Kernel(), {0.0, 1.0, 1.0, 1.0, 0.0, 1.5}, 0.5, 1);
  // int z^2 phi^1.5 dz = (2 pi)^(-3/4) int z^2 e^(-3 z^2/4) dz = (2 pi)^(-3/4) sqrt(pi) / (2 (3/4)^(3/2))
  const double c = std::pow(2.0 * std::numbers::pi, -0.75) * std::sqrt(std::numbers::pi) / (2.0 * std::pow(0.75, 1.5));
  CHECK(f.I[kMu][kMu] == doctest::Approx(c).epsilon(1e-9));
}
