#include "trimodal/modality.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trimodal/error.h"
#include "trimodal/roots.h"
#include "trimodal/specfun.h"

namespace trimodal {

std::string to_string(Modality m) {
  switch (m) {
  case Modality::Unimodal: return "Unimodal";
  case Modality::Bimodal: return "Bimodal";
  case Modality::Trimodal: return "Trimodal";
  }
  return "?";
}

namespace {

Modality from_count(size_t modes) {
  if (modes == 1) return Modality::Unimodal;
  if (modes == 2) return Modality::Bimodal;
  if (modes == 3) return Modality::Trimodal;
  std::ostringstream msg;
  msg << "modality: " << modes << " modes found; only 1-3 are representable";
  throw InconsistentClassification(msg.str());
}

// Polish a grid extremum with Brent's minimizer on the neighbouring cells.
double refine(const TrimodalDistribution& d, double x, double dx, bool maximum) {
  const double s = maximum ? -1.0 : 1.0;
  return specfun::minimize_scalar([&](double t) { return s * d.pdf(t); }, x - dx, x + dx, 1e-12);
}

} // namespace

GridExtrema grid_extrema(const TrimodalDistribution& d, double lo, double hi, int n, double rel_noise) {
  std::vector<double> xs(n), fs(n);
  const double dx = (hi - lo) / (n - 1);
  double fmax = 0.0;
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + dx * i;
    fs[i] = d.pdf(xs[i]);
    fmax = std::max(fmax, fs[i]);
  }
  const double eps = rel_noise * fmax;
  GridExtrema out;
  // hysteresis walk: a turn is recorded once the signal retreats by more than eps;
  // monotone runs touching the grid ends are not extrema
  int dir = 0;
  int hi_i = 0, lo_i = 0;
  for (int i = 1; i < n; ++i) {
    if (dir == 0) {
      if (fs[i] > fs[hi_i]) hi_i = i;
      if (fs[i] < fs[lo_i]) lo_i = i;
      if (fs[hi_i] - fs[i] > eps) {
        if (hi_i > 0) out.maxima.push_back(xs[hi_i]);
        dir = -1, lo_i = i;
      } else if (fs[i] - fs[lo_i] > eps) {
        if (lo_i > 0) out.minima.push_back(xs[lo_i]);
        dir = 1, hi_i = i;
      }
    } else if (dir == 1) {
      if (fs[i] > fs[hi_i]) hi_i = i;
      else if (fs[hi_i] - fs[i] > eps) {
        out.maxima.push_back(xs[hi_i]);
        dir = -1, lo_i = i;
      }
    } else {
      if (fs[i] < fs[lo_i]) lo_i = i;
      else if (fs[i] - fs[lo_i] > eps) {
        out.minima.push_back(xs[lo_i]);
        dir = 1, hi_i = i;
      }
    }
  }
  return out;
}

double modality_r(const TrimodalDistribution& d, double y) {
  const auto& th = d.params();
  const double a2 = th.alpha * th.alpha;
  const double w = th.rho + th.delta * specfun::regularized_lower_gamma(th.p, y / a2);
  const double dens = 2.0 * th.delta * specfun::gamma_pdf(th.p, y / a2) / a2;
  if (d.kernel().type() == KernelType::normal) return dens - w;
  // h(y) = -g'(z) / (z g(z)) at z = sqrt(y), which also covers kernels without a closed h
  const double z = std::sqrt(y);
  return dens - w * (-d.kernel().log_pdf_derivative_ratio(z) / z);
}

ModalityReport classify_modality(const TrimodalDistribution& d) {
  const auto& th = d.params();
  const double mu = th.mu, sigma = th.sigma;
  ModalityReport rep;

  if (!d.kernel().symmetric()) {
    // no h function: dense scan only
    const double lo = std::max(d.quantile(1e-9), mu - 40.0 * sigma);
    const double hi = std::min(d.quantile(1.0 - 1e-9), mu + 40.0 * sigma);
    const int n = 100000;
    const double dx = (hi - lo) / (n - 1);
    const auto ex = grid_extrema(d, lo, hi, n);
    for (double x : ex.maxima) rep.modes.push_back(refine(d, x, dx, true));
    for (double x : ex.minima) rep.minima.push_back(refine(d, x, dx, false));
    rep.method = "grid";
    rep.grid_modes = static_cast<int>(ex.maxima.size());
    rep.cls = from_count(rep.modes.size());
    return rep;
  }

  rep.method = "roots";
  const double a2 = th.alpha * th.alpha;
  if (th.delta > 0.0) {
    const int m = 4096;
    const double ylo = a2 * 1e-10, yhi = a2 * (th.p + 40.0);
    const double step = std::log(yhi / ylo) / (m - 1);
    double yprev = ylo, rprev = modality_r(d, ylo);
    for (int i = 1; i < m; ++i) {
      const double y = ylo * std::exp(step * i);
      const double r = modality_r(d, y);
      if ((r > 0.0) != (rprev > 0.0)) {
        rep.r_roots.push_back(specfun::find_root([&](double t) { return modality_r(d, t); }, yprev, y,
                                                 1e-15 * y));
      }
      yprev = y, rprev = r;
    }
  }

  // sign of R just above 0 says whether mu is a mode or a minimum
  const bool mu_is_mode = th.delta == 0.0 || modality_r(d, a2 * 1e-10) <= 0.0;
  std::vector<double> right_modes, right_minima;
  bool rising = !mu_is_mode;
  for (double y : rep.r_roots) {
    const double z = std::sqrt(y);
    (rising ? right_modes : right_minima).push_back(z);
    rising = !rising;
  }
  auto mirror = [&](const std::vector<double>& zs, std::vector<double>& out, bool centre) {
    for (auto it = zs.rbegin(); it != zs.rend(); ++it) out.push_back(mu - sigma * *it);
    if (centre) out.push_back(mu);
    for (double z : zs) out.push_back(mu + sigma * z);
  };
  mirror(right_modes, rep.modes, mu_is_mode);
  mirror(right_minima, rep.minima, !mu_is_mode);
  rep.cls = from_count(rep.modes.size());

  // cross-check against a dense scan
  const double zmax = rep.r_roots.empty() ? 0.0 : std::sqrt(rep.r_roots.back());
  const double half = std::max(8.0, 1.25 * zmax + 1.0);
  const int n = 100000;
  const double dx = 2.0 * half * sigma / (n - 1);
  const auto ex = grid_extrema(d, mu - half * sigma, mu + half * sigma, n);
  rep.grid_modes = static_cast<int>(ex.maxima.size());
  if (ex.maxima.size() != rep.modes.size()) {
    // tolerate only structure the grid cannot see: tiny prominence or sub-cell spacing
    double fmax = 0.0;
    for (double x : rep.modes) fmax = std::max(fmax, d.pdf(x));
    double prominence = fmax, gap = 1e300;
    std::vector<double> all(rep.modes);
    all.insert(all.end(), rep.minima.begin(), rep.minima.end());
    std::sort(all.begin(), all.end());
    for (size_t i = 1; i < all.size(); ++i) {
      prominence = std::min(prominence, std::fabs(d.pdf(all[i]) - d.pdf(all[i - 1])));
      gap = std::min(gap, all[i] - all[i - 1]);
    }
    if (prominence > 1e-9 * fmax && gap > 3.0 * dx) {
      std::ostringstream msg;
      msg << "modality: R has " << rep.r_roots.size() << " roots (" << rep.modes.size()
          << " modes) but the pdf scan finds " << ex.maxima.size() << " maxima";
      throw InconsistentClassification(msg.str());
    }
    rep.grid_resolved = false;
  }
  return rep;
}

} // namespace trimodal
