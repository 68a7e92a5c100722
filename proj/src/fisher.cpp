#include "trimodal/fisher.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "trimodal/error.h"
#include "trimodal/quadrature.h"

namespace trimodal {

bool FisherMatrix::all_converged() const {
  for (const auto& row : converged)
    for (bool b : row)
      if (!b) return false;
  return true;
}

FisherMatrix fisher_information(const Kernel& k, const ParamVector& theta, double q, long n) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("fisher_information: q must lie in (0,1]");
  if (n < 1) throw DomainError("fisher_information: n must be >= 1");
  const ScoreContext ctx(k, theta);
  const auto& d = ctx.dist();
  const double mu = theta.mu, s = theta.sigma;
  const double inf = std::numeric_limits<double>::infinity();
  // main body on mu +- 12 sigma, tails carried by half-line maps
  std::vector<double> pts{-inf, mu - 12.0 * s};
  for (double c : {-4.0, -1.5, -0.5, 0.0, 0.5, 1.5, 4.0}) pts.push_back(mu + c * theta.alpha * s);
  pts.push_back(mu + 12.0 * s);
  pts.push_back(inf);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [&](double a, double b) { return std::fabs(a - b) < 1e-9 * s; }),
            pts.end());

  FisherMatrix out;
  out.q = q;
  out.n = n;
  std::array<std::pair<int, int>, 15> pairs;
  int m = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) pairs[m++] = {i, j};

#pragma omp parallel for schedule(dynamic, 1)
  for (int e = 0; e < 15; ++e) {
    const auto [i, j] = pairs[e];
    auto f = [&](double x) {
      const double lf = d.log_pdf(x);
      if (lf == -inf) return 0.0;
      const Vec5 sc = ctx.score(x);
      return sc[i] * sc[j] * std::exp((2.0 - q) * lf);
    };
    const auto r = specfun::integrate(f, pts, {1e-13, 1e-11, 1000}, s);
    out.I[i][j] = out.I[j][i] = n * r.value;
    out.converged[i][j] = out.converged[j][i] = r.converged;
  }
  double scale = 0.0;
  for (int i = 0; i < 5; ++i) scale = std::max(scale, std::fabs(out.I[i][i]));
  for (auto& row : out.I)
    for (auto& v : row)
      if (std::fabs(v) < 1e-14 * scale) v = 0.0;
  return out;
}

namespace {

double condition(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const auto ev = es.eigenvalues();
  const double lo = ev.minCoeff(), hi = ev.maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

Eigen::MatrixXd submatrix(const Mat5& I, const std::array<int, 4>& idx) {
  Eigen::MatrixXd a(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = I[idx[r]][idx[c]];
  return a;
}

} // namespace

ParameterCovariance invert_fisher(const FisherMatrix& fi) {
  ParameterCovariance out;
  Eigen::MatrixXd full(5, 5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) full(r, c) = fi.I[r][c];
  out.condition_full = condition(full);

  const std::array<int, 4> rho_fixed{kMu, kSigma, kAlpha, kDelta};
  const std::array<int, 4> delta_fixed{kMu, kSigma, kAlpha, kRho};
  const Eigen::MatrixXd a = submatrix(fi.I, rho_fixed);
  const Eigen::MatrixXd b = submatrix(fi.I, delta_fixed);
  out.condition_reduced = std::max(condition(a), condition(b));
  if (!(out.condition_reduced < 1e12)) {
    std::ostringstream msg;
    msg << "Fisher information is singular beyond the (rho, delta) scale direction (condition "
        << out.condition_reduced << "); use bootstrap standard errors";
    throw SingularFisherError(msg.str());
  }
  const Eigen::MatrixXd ai = a.ldlt().solve(Eigen::MatrixXd::Identity(4, 4));
  const Eigen::MatrixXd bi = b.ldlt().solve(Eigen::MatrixXd::Identity(4, 4));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.inverse_rho_fixed[rho_fixed[r]][rho_fixed[c]] = ai(r, c);
  out.variance[kMu] = ai(0, 0);
  out.variance[kSigma] = ai(1, 1);
  out.variance[kAlpha] = ai(2, 2);
  out.variance[kDelta] = ai(3, 3);
  out.variance[kRho] = bi(3, 3);
  for (double v : out.variance)
    if (!(v > 0.0)) throw SingularFisherError("Fisher information inverse has a non-positive diagonal; use bootstrap standard errors");
  return out;
}

double normal_quantile(double u) { return Kernel(KernelType::normal).quantile(u); }

std::array<Interval, 5> confidence_intervals(const ParamVector& th, const Vec5& se, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0,1)");
  const double z = normal_quantile(0.5 * (1.0 + level));
  const Vec5 v = to_vec(th);
  std::array<Interval, 5> out;
  for (int i = 0; i < 5; ++i) out[i] = {v[i] - z * se[i], v[i] + z * se[i]};
  // sigma and alpha stay strictly positive; rho and delta may touch 0
  for (int i : {kSigma, kAlpha})
    if (out[i].lo <= 0.0) out[i].lo = std::nextafter(0.0, 1.0);
  for (int i : {kRho, kDelta})
    if (out[i].lo < 0.0) out[i].lo = 0.0;
  return out;
}

std::array<Interval, 5> confidence_intervals(const ParamVector& th, const FisherMatrix& fi, double level) {
  const auto cov = invert_fisher(fi);
  Vec5 se;
  for (int i = 0; i < 5; ++i) se[i] = std::sqrt(cov.variance[i]);
  return confidence_intervals(th, se, level);
}

} // namespace trimodal
