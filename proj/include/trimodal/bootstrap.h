#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trimodal/fit.h"
#include "trimodal/kernels.h"

namespace trimodal {

struct BootstrapPlan {
  int replications = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> models{"tdq", "td", "kde", "normal"};
  FitConfig fit_cfg;  // q is used by "tdq"; "td" forces q = 1
  Kernel kernel{KernelType::normal};
  bool kde_adaptive = false;

  void validate() const;
};

struct SummaryStats {
  double mean = 0.0, sd = 0.0, lo = 0.0, hi = 0.0; // lo/hi: 2.5% and 97.5% percentiles
  int count = 0;
};

struct ModelBootstrap {
  std::string label;
  int failure_count = 0;
  std::vector<std::string> param_names;
  std::vector<SummaryStats> params;
  std::vector<std::string> gof_names;
  std::vector<SummaryStats> gof;
  // replications x (params + gof); NaN rows for failed replicates
  std::vector<std::vector<double>> rows;
};

struct BootstrapSummary {
  int replications = 0;
  std::uint64_t seed = 0;
  std::vector<ModelBootstrap> models;
};

// Indices of the resample for replicate r.
std::vector<size_t> resample_indices(size_t n, std::uint64_t seed, std::uint64_t replicate);

BootstrapSummary run_bootstrap(std::span<const double> data, const BootstrapPlan& plan);

SummaryStats summarize(std::span<const double> values);

} // namespace trimodal
