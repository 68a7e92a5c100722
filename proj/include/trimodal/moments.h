#pragma once

#include <functional>
#include <string>
#include <vector>

#include "trimodal/distribution.h"

namespace trimodal {

// int_{-inf}^{b} L(x) f(x) dx
double truncated_expectation(const TrimodalDistribution& d, const std::function<double(double)>& L,
                             double b);

// E[X^n]. Normal kernel with integer p uses the closed form, everything else quadrature.
double moment(const TrimodalDistribution& d, int n);
double moment_quadrature(const TrimodalDistribution& d, int n);
// Closed form for the normal kernel (valid for any p > 0).
double moment_closed_form(const TrimodalDistribution& d, int n);
// E[((X - mu)/sigma)^k], closed form, normal kernel.
double standardized_moment_closed_form(const TrimodalDistribution& d, int k);
double variance(const TrimodalDistribution& d);

// -int f log f, by quadrature.
double shannon_entropy(const TrimodalDistribution& d);

struct EntropySeries {
  double value = 0.0;
  int terms = 0;
  bool converged = false;
  std::string warning; // set when the quadrature fallback was used
};

// Series path for the normal kernel with integer p: expands log(rho + delta T) in
// powers of r(1-T), r = delta/(rho+delta), each integrated in closed form.
EntropySeries shannon_entropy_series(const TrimodalDistribution& d, int max_terms = 5000);

// (1 - int f^q)/(q - 1), integrated in a form that stays stable near q = 1.
double tsallis_entropy(const TrimodalDistribution& d, double q);

struct MixtureWeights {
  double c0 = 0.0;
  std::vector<double> ck; // k = first_k, first_k + 1, ...
  int first_k = 0;
  int truncation_K = 0;
  double partial_sum = 0.0;
  bool converged = false;
};

// K <= 0 picks the truncation adaptively.
MixtureWeights mixture_weights(const TrimodalDistribution& d, int K = 0);

} // namespace trimodal
