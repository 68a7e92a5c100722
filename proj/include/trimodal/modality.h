#pragma once

#include <string>
#include <vector>

#include "trimodal/distribution.h"

namespace trimodal {

enum class Modality { Unimodal, Bimodal, Trimodal };
std::string to_string(Modality m);

struct ModalityReport {
  Modality cls = Modality::Unimodal;
  std::vector<double> modes;   // ascending x
  std::vector<double> minima;  // ascending x
  std::vector<double> r_roots; // roots of R in y = z^2, ascending
  std::string method;          // "roots" or "grid"
  int grid_modes = 0;          // maxima found by the dense scan
  bool grid_resolved = true;   // false if the scan could not resolve a predicted extremum
};

struct GridExtrema {
  std::vector<double> maxima;
  std::vector<double> minima;
};

// Local extrema of the pdf on n equispaced points over [lo,hi]. Wiggles smaller
// than rel_noise * max pdf are ignored.
GridExtrema grid_extrema(const TrimodalDistribution& d, double lo, double hi, int n = 100000,
                         double rel_noise = 1e-11);

// The function whose sign matches f'(mu + sigma sqrt y) for y > 0.
double modality_r(const TrimodalDistribution& d, double y);

ModalityReport classify_modality(const TrimodalDistribution& d);

} // namespace trimodal
