#pragma once

#include <span>

#include "trimodal/distribution.h"

// Elementwise evaluation over many points. The default namespace runs the
// loops with OpenMP; batch::serial holds the single-threaded reference the
// tests and the benchmark compare against. Reductions are summed serially
// after the parallel map, so results do not depend on the thread count.
namespace trimodal::batch {

void pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out);
void log_pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out);
void cdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out);
void quantile(const TrimodalDistribution& d, std::span<const double> u, std::span<double> out);
// sum_i log_q f(x_i); -inf if some f(x_i) = 0
double loglq(const TrimodalDistribution& d, std::span<const double> x, double q);

namespace serial {
void pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out);
void log_pdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out);
void cdf(const TrimodalDistribution& d, std::span<const double> x, std::span<double> out);
void quantile(const TrimodalDistribution& d, std::span<const double> u, std::span<double> out);
double loglq(const TrimodalDistribution& d, std::span<const double> x, double q);
} // namespace serial

// log_q applied to a log density value.
double logq_from_log(double log_f, double q);

} // namespace trimodal::batch
