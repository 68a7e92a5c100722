#pragma once

#include <functional>
#include <span>

namespace trimodal::specfun {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 200;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = false;
  int evaluations = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod 10/21 on [a,b]. Either end may be infinite;
// half-lines are mapped by x = a + s*t/(1-t), the whole line is split at 0.
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

// Same, with the range cut at the given sorted points. points.front() and
// points.back() are the limits and may be infinite. `tail_scale` sets the
// length scale of the half-line maps.
QuadResult integrate(const Integrand& f, std::span<const double> points,
                     const QuadratureSpec& spec = {}, double tail_scale = 1.0);

} // namespace trimodal::specfun
