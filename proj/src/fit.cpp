#include "trimodal/fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "trimodal/batch.h"
#include "trimodal/error.h"
#include "trimodal/sampling.h"

namespace trimodal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Box {
  Vec5 lo, hi;
  bool contains(const Vec5& v) const {
    for (int i = 0; i < 5; ++i)
      if (!(v[i] >= lo[i] && v[i] <= hi[i])) return false;
    return true;
  }
};

struct NmResult {
  Vec5 x;
  double f;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

// Nelder-Mead minimization; points outside the box evaluate to +inf.
template <class F>
NmResult nelder_mead(F&& objective, const Box& box, const Vec5& x0, const Vec5& step, int max_iters,
                     double ftol) {
  constexpr int n = 5;
  std::array<Vec5, n + 1> xs;
  std::array<double, n + 1> fs;
  NmResult res;
  auto eval = [&](const Vec5& v) {
    ++res.evaluations;
    if (!box.contains(v)) return std::numeric_limits<double>::infinity();
    const double f = objective(v);
    return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
  };
  xs[0] = x0;
  fs[0] = eval(x0);
  for (int i = 0; i < n; ++i) {
    Vec5 v = x0;
    v[i] += step[i];
    if (!box.contains(v)) v[i] = x0[i] - step[i];
    if (!box.contains(v)) v[i] = 0.5 * (x0[i] + (step[i] > 0 ? box.lo[i] : box.hi[i]));
    xs[i + 1] = v;
    fs[i + 1] = eval(v);
  }
  std::array<int, n + 1> ord;
  for (int it = 0; it < max_iters; ++it) {
    res.iterations = it + 1;
    for (int i = 0; i <= n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = ord[0], worst = ord[n], second = ord[n - 1];
    const double fb = fs[best], fw = fs[worst];
    if (std::isfinite(fw) && std::fabs(fw - fb) <= ftol * 0.5 * (std::fabs(fw) + std::fabs(fb)) + 1e-300) {
      res.converged = true;
      break;
    }
    Vec5 c{};
    for (int i = 0; i <= n; ++i)
      if (i != worst)
        for (int j = 0; j < n; ++j) c[j] += xs[i][j] / n;
    auto along = [&](double t) {
      Vec5 v;
      for (int j = 0; j < n; ++j) v[j] = c[j] + t * (xs[worst][j] - c[j]);
      return v;
    };
    const Vec5 xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fb) {
      const Vec5 xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) xs[worst] = xe, fs[worst] = fe;
      else xs[worst] = xr, fs[worst] = fr;
    } else if (fr < fs[second]) {
      xs[worst] = xr, fs[worst] = fr;
    } else {
      const bool outside = fr < fw;
      const Vec5 xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fw)) {
        xs[worst] = xc, fs[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int j = 0; j < n; ++j) xs[i][j] = xs[best][j] + 0.5 * (xs[i][j] - xs[best][j]);
          fs[i] = eval(xs[i]);
        }
      }
    }
  }
  int b = 0;
  for (int i = 1; i <= n; ++i)
    if (fs[i] < fs[b]) b = i;
  res.x = xs[b];
  res.f = fs[b];
  return res;
}

} // namespace

void FitConfig::validate() const {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("fit: q must lie in (0,1]");
  if (n_starts < 1) throw DomainError("fit: n_starts must be >= 1");
  if (max_iters < 1) throw DomainError("fit: max_iters must be >= 1");
  if (!(eps > 0.0 && eps < upper)) throw DomainError("fit: need 0 < eps < upper");
  if (!(ftol > 0.0)) throw DomainError("fit: ftol must be > 0");
  if (!(p > 0.0)) throw DomainError("fit: p must be > 0");
}

double median(std::vector<double> v) {
  if (v.empty()) throw DomainError("median of empty data");
  const size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + m, v.end());
  if (v.size() % 2 == 1) return v[m];
  const double hi = v[m];
  const double lo = *std::max_element(v.begin(), v.begin() + m);
  return 0.5 * (lo + hi);
}

double mad(std::span<const double> v) {
  const double m = median(std::vector<double>(v.begin(), v.end()));
  std::vector<double> dev(v.size());
  for (size_t i = 0; i < v.size(); ++i) dev[i] = std::fabs(v[i] - m);
  return median(std::move(dev));
}

void attach_diagnostics(FitResult& fr, std::span<const double> data, const Kernel& k, double q) {
  const ScoreContext ctx(k, fr.theta_hat);
  Vec5 st{};
  for (double x : data) {
    const double lf = ctx.dist().log_pdf(x);
    const double w = std::exp((1.0 - q) * lf);
    const Vec5 s = ctx.score(x);
    for (int j = 0; j < 5; ++j) st[j] += w * s[j];
  }
  fr.stationarity = st;
  fr.stationarity_max = 0.0;
  for (double v : st) fr.stationarity_max = std::max(fr.stationarity_max, std::fabs(v));

  try {
    fr.fisher = fisher_information(k, fr.theta_hat, q, static_cast<long>(data.size()));
    const auto cov = invert_fisher(*fr.fisher);
    Vec5 se;
    for (int i = 0; i < 5; ++i) se[i] = std::sqrt(cov.variance[i]);
    fr.std_errors = se;
    fr.se_note = "rho held fixed for mu, sigma, alpha, delta; delta held fixed for rho";
  } catch (const std::exception& e) {
    fr.std_errors.reset();
    fr.se_note = e.what();
  }
}

FitResult fit(std::span<const double> data, const Kernel& k, const FitConfig& cfg) {
  cfg.validate();
  if (data.size() < 5) throw DomainError("fit: need at least 5 observations");
  for (double x : data)
    if (!std::isfinite(x)) throw DomainError("fit: data contain non-finite values");
  const double med = median(std::vector<double>(data.begin(), data.end()));
  const double s0 = mad(data);
  if (!(s0 > 0.0)) throw DomainError("fit: median absolute deviation is zero (degenerate data)");

  const Box box{{-std::numeric_limits<double>::infinity(), cfg.eps, cfg.eps, cfg.eps, cfg.eps},
                {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                 cfg.upper, cfg.upper, cfg.upper}};
  auto objective = [&](const Vec5& v) {
    const double l = logq_likelihood(data, k, from_vec(v, cfg.p), cfg.q);
    return -l;
  };

  std::vector<StartDiagnostic> diag(cfg.n_starts);
  std::vector<char> failed(cfg.n_starts, 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < cfg.n_starts; ++s) {
    std::mt19937_64 gen(stream_seed(cfg.seed, static_cast<std::uint64_t>(s)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec5 x0{med, s0, 0, 0, 0};
    for (int j = 2; j < 5; ++j) x0[j] = std::max(unif(gen), 2.0 * cfg.eps);
    const Vec5 step{0.25 * s0, 0.25 * s0, 0.25, 0.25, 0.25};
    StartDiagnostic& dg = diag[s];
    dg.init = x0;
    try {
      dg.loglq_init = -objective(x0);
      NmResult r = nelder_mead(objective, box, x0, step, cfg.max_iters, cfg.ftol);
      int its = r.iterations, evs = r.evaluations;
      // one restart from the converged point guards against a collapsed simplex
      if (r.converged && std::isfinite(r.f)) {
        Vec5 st2{};
        for (int j = 0; j < 5; ++j) st2[j] = 0.1 * std::max(std::fabs(r.x[j]), j < 2 ? 0.1 * s0 : 0.1);
        NmResult r2 = nelder_mead(objective, box, r.x, st2, cfg.max_iters, cfg.ftol);
        its += r2.iterations, evs += r2.evaluations;
        if (r2.f <= r.f) {
          r2.converged = r2.converged && r.converged;
          r = r2;
        }
      }
      dg.final = r.x;
      dg.loglq = -r.f;
      dg.iterations = its;
      dg.evaluations = evs;
      dg.converged = r.converged;
      if (!std::isfinite(r.f)) failed[s] = 1;
    } catch (const std::exception&) {
      failed[s] = 1;
      dg.loglq = kNegInf;
    }
  }

  int best = -1;
  for (int s = 0; s < cfg.n_starts; ++s) {
    if (failed[s]) continue;
    if (best < 0 || diag[s].loglq > diag[best].loglq) best = s;
  }
  if (best < 0) throw ConvergenceError("fit: all starts failed");

  FitResult fr;
  fr.start_diagnostics = diag;
  fr.best_start = best;
  fr.theta_hat = from_vec(diag[best].final, cfg.p);
  fr.loglq = diag[best].loglq;
  fr.loglik_at_q1 = cfg.q == 1.0 ? fr.loglq : logq_likelihood(data, k, fr.theta_hat, 1.0);
  fr.converged = diag[best].converged;
  for (const auto& dg : diag) fr.n_evals += dg.evaluations;
  if (cfg.compute_se) attach_diagnostics(fr, data, k, cfg.q);
  return fr;
}

} // namespace trimodal
