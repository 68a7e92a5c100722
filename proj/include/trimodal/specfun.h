#pragma once

namespace trimodal::specfun {

// P(p,u) = gamma(p,u)/Gamma(p). Series below u = p+1, continued fraction above.
double regularized_lower_gamma(double p, double u);
// Q(p,u) = 1 - P(p,u), computed without cancellation for large u.
double regularized_upper_gamma(double p, double u);
// Density of Gamma(p,1) at u.
double gamma_pdf(double p, double u);

double erf(double x);
double erfc(double x);

// Standard normal pdf, cdf and upper tail.
double norm_pdf(double x);
double norm_cdf(double x);
double norm_sf(double x);

// 2F1(1/2, p+1/2; 3/2; -z) for z >= 0.
double gauss_2f1_neg(double p, double z);

// I_x(a,b), the regularized incomplete beta function.
double regularized_beta(double a, double b, double x);

} // namespace trimodal::specfun
