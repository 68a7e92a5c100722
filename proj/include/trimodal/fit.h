#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trimodal/fisher.h"
#include "trimodal/inference.h"

namespace trimodal {

struct FitConfig {
  double q = 1.0;
  double eps = 1e-6;      // lower bound for sigma, alpha, rho, delta
  double upper = 100.0;   // upper bound for alpha, rho, delta
  int n_starts = 16;
  int max_iters = 2000;
  double ftol = 1e-10;
  std::uint64_t seed = 0;
  double p = 1.5;
  bool compute_se = true;

  void validate() const;
};

struct StartDiagnostic {
  Vec5 init{};
  Vec5 final{};
  double loglq_init = 0.0;
  double loglq = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct FitResult {
  ParamVector theta_hat;
  double loglq = 0.0;
  double loglik_at_q1 = 0.0;
  std::optional<Vec5> std_errors;
  std::string se_note;
  std::optional<FisherMatrix> fisher;
  bool converged = false;
  int n_evals = 0;
  int best_start = 0;
  Vec5 stationarity{}; // sum_i f^(1-q)(x_i) score(x_i)
  double stationarity_max = 0.0;
  std::vector<StartDiagnostic> start_diagnostics;
};

// Bounded Nelder-Mead maximization of the log_q likelihood from n_starts
// random starts; starts run in parallel, each with its own RNG stream.
FitResult fit(std::span<const double> data, const Kernel& k, const FitConfig& cfg = {});

// Standard errors and stationarity for a given estimate (used by fit).
void attach_diagnostics(FitResult& fr, std::span<const double> data, const Kernel& k, double q);

double median(std::vector<double> v);
double mad(std::span<const double> v); // raw median absolute deviation

} // namespace trimodal
