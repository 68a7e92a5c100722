#include "trimodal/moments.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "trimodal/error.h"
#include "trimodal/quadrature.h"
#include "trimodal/specfun.h"

namespace trimodal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integrate h(z) * ftilde(z) over the real line in standardized units, where
// ftilde = (rho + delta T(z)) g(z) / K.
double standardized_integral(const TrimodalDistribution& d, const std::function<double(double)>& h,
                             double zmax = kInf, specfun::QuadratureSpec spec = {1e-14, 1e-12, 800}) {
  const auto& th = d.params();
  auto f = [&](double z) {
    const double w = th.rho + th.delta * d.t(z);
    const double g = d.kernel().pdf(z);
    if (g == 0.0 || w == 0.0) return 0.0;
    return h(z) * w * g / d.k_norm();
  };
  std::vector<double> pts{-kInf};
  for (double c : {-8.0, -3.0, -th.alpha, 0.0, th.alpha, 3.0, 8.0})
    if (c > pts.back() && c < zmax) pts.push_back(c);
  std::sort(pts.begin() + 1, pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.push_back(zmax);
  const auto r = specfun::integrate(f, pts, spec, 4.0);
  if (!r.converged) {
    // cancelling integrands (odd moments near mu = 0): judge the error against int |h f|
    const auto m = specfun::integrate([&](double z) { return std::abs(f(z)); }, pts, spec, 4.0);
    if (!(r.err_est <= 1e-13 * m.value)) throw ConvergenceError("integral over the TD density did not converge");
  }
  return r.value;
}

bool integer_p(double p) { return std::floor(p) == p; }

} // namespace

double truncated_expectation(const TrimodalDistribution& d, const std::function<double(double)>& L,
                             double b) {
  const auto& th = d.params();
  const double zb = b == kInf ? kInf : (b - th.mu) / th.sigma;
  return standardized_integral(d, [&](double z) { return L(th.mu + th.sigma * z); }, zb);
}

double moment_quadrature(const TrimodalDistribution& d, int n) {
  if (n < 0) throw DomainError("moment: n must be >= 0");
  if (!(n < d.kernel().moment_limit()))
    throw DomainError("moment: E[X^" + std::to_string(n) + "] does not exist for the " +
                      d.kernel().name() + " kernel");
  const auto& th = d.params();
  return standardized_integral(d, [&](double z) { return std::pow(th.mu + th.sigma * z, n); });
}

double standardized_moment_closed_form(const TrimodalDistribution& d, int k) {
  if (d.kernel().type() != KernelType::normal) throw UnsupportedError("closed-form moments need the normal kernel");
  if (k < 0) throw DomainError("moment: k must be >= 0");
  if (k % 2 == 1) return 0.0;
  const auto& th = d.params();
  // E[1{W <= b} W^k] = a_k Phi(b) - phi(b) P_k(b),
  // a_k = (k-1) a_{k-2}, P_k(b) = b^{k-1} + (k-1) P_{k-2}(b).
  std::vector<double> a(k + 1, 0.0);
  std::vector<std::vector<double>> P(k + 1);
  a[0] = 1.0;
  P[0] = {};
  if (k >= 1) P[1] = {1.0};
  for (int j = 2; j <= k; ++j) {
    a[j] = (j - 1) * a[j - 2];
    P[j].assign(j, 0.0);
    P[j][j - 1] = 1.0;
    for (size_t m = 0; m < P[j - 2].size(); ++m) P[j][m] += (j - 1) * P[j - 2][m];
  }
  const double ew = a[k]; // E[W^k] = (k-1)!!
  if (th.delta == 0.0) return ew;
  // E[phi(alpha sqrt Y) (alpha sqrt Y)^m] = alpha^m Gamma(m/2+p) / (sqrt(2 pi) Gamma(p) (1+alpha^2/2)^(m/2+p))
  auto e_m = [&](int m) {
    const double h = 0.5 * m + th.p;
    return std::exp(m * std::log(th.alpha) + std::lgamma(h) - std::lgamma(th.p) -
                    h * std::log1p(0.5 * th.alpha * th.alpha)) /
           std::sqrt(2.0 * std::numbers::pi);
  };
  const double A = detail::gaussian_a(th.alpha, th.p);
  // E[1{W <= -alpha sqrt Y} W^k] - E[1{W <= alpha sqrt Y} W^k]
  double diff = -2.0 * A * a[k];
  for (size_t m = 1; m < P[k].size(); m += 2) diff += 2.0 * P[k][m] * e_m(static_cast<int>(m));
  return ((th.rho + th.delta) * ew + th.delta * diff) / d.k_norm();
}

double moment_closed_form(const TrimodalDistribution& d, int n) {
  if (n < 0) throw DomainError("moment: n must be >= 0");
  const auto& th = d.params();
  double sum = 0.0, binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    if (k % 2 == 1) continue;
    sum += binom * std::pow(th.mu, n - k) * std::pow(th.sigma, k) * standardized_moment_closed_form(d, k);
  }
  return sum;
}

double moment(const TrimodalDistribution& d, int n) {
  if (!(n < d.kernel().moment_limit()))
    throw DomainError("moment: E[X^" + std::to_string(n) + "] does not exist for the " +
                      d.kernel().name() + " kernel");
  if (d.kernel().type() == KernelType::normal && integer_p(d.params().p)) return moment_closed_form(d, n);
  return moment_quadrature(d, n);
}

double variance(const TrimodalDistribution& d) {
  const double m1 = moment(d, 1);
  const auto& th = d.params();
  if (d.kernel().type() == KernelType::normal && integer_p(th.p))
    return th.sigma * th.sigma * standardized_moment_closed_form(d, 2) - (m1 - th.mu) * (m1 - th.mu);
  return standardized_integral(d, [&](double z) {
    const double x = th.mu + th.sigma * z - m1;
    return x * x;
  });
}

double shannon_entropy(const TrimodalDistribution& d) {
  const double ls = std::log(d.params().sigma);
  const double lk = std::log(d.k_norm());
  const auto& th = d.params();
  // -log f = log sigma + log K - log(rho + delta T) - log g
  return ls + lk - standardized_integral(d, [&](double z) {
    return std::log(th.rho + th.delta * d.t(z)) + d.kernel().log_pdf(z);
  });
}

EntropySeries shannon_entropy_series(const TrimodalDistribution& d, int max_terms) {
  const auto& th = d.params();
  if (d.kernel().type() != KernelType::normal) throw UnsupportedError("entropy series needs the normal kernel");
  EntropySeries out;
  const double K = d.k_norm();
  // E_f[-log phi] = log sqrt(2 pi) + 1/2 + delta E1 / K
  const double e1 = th.alpha * std::exp(std::lgamma(th.p + 0.5) - std::lgamma(th.p) -
                                        (th.p + 0.5) * std::log1p(0.5 * th.alpha * th.alpha)) /
                    std::sqrt(2.0 * std::numbers::pi);
  const double neg_log_phi = 0.5 * std::log(2.0 * std::numbers::pi) + 0.5 + th.delta * e1 / K;

  if (th.delta == 0.0) {
    out.value = std::log(th.sigma) + neg_log_phi;
    out.converged = true;
    return out;
  }
  if (!integer_p(th.p)) throw UnsupportedError("entropy series needs integer p");
  if (th.rho == 0.0) {
    out.value = shannon_entropy(d);
    out.warning = "rho = 0: log series does not converge, used quadrature";
    return out;
  }
  const int p = static_cast<int>(th.p);
  const double r = th.delta / (th.rho + th.delta);
  const double a2 = th.alpha * th.alpha;
  // (1 - T)^k = e^{-k t} (sum_{j<p} t^j/j!)^k with t = w^2/alpha^2; log coefficients of the power
  std::vector<double> logc{0.0};
  auto m_k = [&](int k) {
    const double c = 1.0 + 2.0 * k / a2;
    double mx = -kInf;
    std::vector<double> terms(logc.size());
    for (size_t m = 0; m < logc.size(); ++m) {
      const double ldf = std::lgamma(2.0 * m + 1.0) - m * std::numbers::ln2 - std::lgamma(m + 1.0);
      terms[m] = logc[m] + ldf - m * std::log(a2 + 2.0 * k);
      mx = std::max(mx, terms[m]);
    }
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    return std::exp(mx) * s / std::sqrt(c);
  };
  auto step_power = [&]() {
    std::vector<double> next(logc.size() + p - 1, -kInf);
    for (size_t m = 0; m < next.size(); ++m) {
      double mx = -kInf;
      for (int j = 0; j < p; ++j)
        if (m >= static_cast<size_t>(j) && m - j < logc.size()) mx = std::max(mx, logc[m - j] - std::lgamma(j + 1.0));
      double s = 0.0;
      for (int j = 0; j < p; ++j)
        if (m >= static_cast<size_t>(j) && m - j < logc.size()) s += std::exp(logc[m - j] - std::lgamma(j + 1.0) - mx);
      next[m] = mx + std::log(s);
    }
    logc.swap(next);
  };

  step_power(); // logc now holds the k = 1 power
  double mk = m_k(1);
  double sum = 0.0;
  double rk = 1.0;
  for (int k = 1; k <= max_terms; ++k) {
    step_power();
    const double mk1 = m_k(k + 1);
    rk *= r;
    const double term = rk / k * ((th.rho + th.delta) * mk - th.delta * mk1);
    sum += term;
    out.terms = k;
    // remaining terms are bounded by a geometric tail in r
    if (std::fabs(term) <= 1e-16 * std::fabs(sum) && rk * r / (1.0 - r) < 1e-15) {
      out.converged = true;
      break;
    }
    mk = mk1;
  }
  if (!out.converged) {
    out.value = shannon_entropy(d);
    out.warning = "entropy series did not converge; used quadrature";
    return out;
  }
  const double elog = std::log(th.rho + th.delta) - sum / K;
  out.value = std::log(th.sigma) + std::log(K) - elog + neg_log_phi;
  return out;
}

double tsallis_entropy(const TrimodalDistribution& d, double q) {
  if (!(q > 0.0)) throw DomainError("tsallis_entropy: q must be > 0");
  if (q == 1.0) throw DomainError("tsallis_entropy: q = 1 is the Shannon entropy");
  const auto& th = d.params();
  const double lsk = std::log(th.sigma * d.k_norm());
  auto h = [&](double z) {
    const double lf = std::log(th.rho + th.delta * d.t(z)) + d.kernel().log_pdf(z) - lsk;
    return -std::expm1((q - 1.0) * lf) / (q - 1.0);
  };
  try {
    return standardized_integral(d, h);
  } catch (const ConvergenceError&) {
    throw ConvergenceError("tsallis_entropy: integral diverges or did not converge for q = " + std::to_string(q));
  }
}

MixtureWeights mixture_weights(const TrimodalDistribution& d, int K) {
  const auto& th = d.params();
  MixtureWeights out;
  out.c0 = th.rho / d.k_norm();
  if (th.delta == 0.0) {
    out.partial_sum = out.c0;
    out.converged = true;
    out.first_k = integer_p(th.p) ? static_cast<int>(th.p) : 0;
    return out;
  }
  if (!integer_p(th.p)) throw UnsupportedError("mixture_weights: p must be an integer");
  const int p = static_cast<int>(th.p);
  out.first_k = p;
  const bool adaptive = K <= 0;
  const int kmax = adaptive ? 20000 : K;
  const double lead = std::log(th.delta) - std::lgamma(th.p) - std::log(d.k_norm());
  double sum = out.c0;
  for (int k = p; k < p + kmax; ++k) {
    double lm;
    try {
      lm = std::log(d.kernel().even_moment(k));
    } catch (const DomainError&) {
      break; // moment does not exist; series truncated here
    }
    if (!std::isfinite(lm)) break;
    const double lmag = lead + lm - std::log(k) - std::lgamma(k - p + 1.0) - 2.0 * k * std::log(th.alpha);
    const double c = ((k - p) % 2 == 0 ? 1.0 : -1.0) * std::exp(lmag);
    out.ck.push_back(c);
    sum += c;
    if (std::fabs(c) < 1e-16 * std::max(1.0, std::fabs(sum)) && k > p + 2) {
      out.converged = true;
      if (adaptive) break;
    }
    if (!std::isfinite(sum)) break;
  }
  out.truncation_K = static_cast<int>(out.ck.size());
  out.partial_sum = sum;
  if (!out.converged && !out.ck.empty())
    out.converged = std::fabs(out.ck.back()) < 1e-12 && std::fabs(sum - 1.0) < 1e-6;
  return out;
}

} // namespace trimodal
