#pragma once

#include <functional>

namespace trimodal::specfun {

// Brent's method. Throws BracketError if f(lo) and f(hi) have the same sign.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12,
                 int max_iter = 200);

// Brent's minimizer on [lo,hi] (golden section with parabolic steps).
double minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                       double tol = 1e-10, int max_iter = 200);

} // namespace trimodal::specfun
