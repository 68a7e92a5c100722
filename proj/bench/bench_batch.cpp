// Serial reference vs OpenMP batch kernels: wall time per call and a bitwise
// agreement check on every output.

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "trimodal/batch.h"
#include "trimodal/sampling.h"

using namespace trimodal;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"batch evaluation benchmark"};
  size_t n = 200000;
  int reps = 3;
  std::string kernel = "normal";
  app.add_option("--n", n, "points per call")->check(CLI::PositiveNumber);
  app.add_option("--reps", reps, "repetitions, best time kept")->check(CLI::PositiveNumber);
  app.add_option("--kernel", kernel);
  CLI11_PARSE(app, argc, argv);

  const TrimodalDistribution d(Kernel::from_name(kernel), {0.0, 1.0, 0.8, 0.3, 1.5, 1.5});
  const auto u = uniform_draws(n, 1);
  std::vector<double> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = -6.0 + 12.0 * u[i];
  std::vector<double> a(n), b(n);

  std::printf("n = %zu, threads = %d, kernel = %s\n", n, omp_get_max_threads(), kernel.c_str());
  std::printf("%-10s %12s %12s %9s  %s\n", "op", "serial [s]", "openmp [s]", "speedup", "identical");
  bool all_same = true;
  auto row = [&](const char* name, const std::function<void()>& ser, const std::function<void()>& par,
                 const std::function<bool()>& same) {
    const double ts = best_of(reps, ser), tp = best_of(reps, par);
    const bool ok = same();
    all_same = all_same && ok;
    std::printf("%-10s %12.4f %12.4f %9.2f  %s\n", name, ts, tp, ts / tp, ok ? "yes" : "NO");
  };
  row("pdf", [&] { batch::serial::pdf(d, x, a); }, [&] { batch::pdf(d, x, b); }, [&] { return a == b; });
  row("log_pdf", [&] { batch::serial::log_pdf(d, x, a); }, [&] { batch::log_pdf(d, x, b); }, [&] { return a == b; });
  row("cdf", [&] { batch::serial::cdf(d, x, a); }, [&] { batch::cdf(d, x, b); }, [&] { return a == b; });
  row("quantile", [&] { batch::serial::quantile(d, u, a); }, [&] { batch::quantile(d, u, b); },
      [&] { return a == b; });
  double ls = 0.0, lp = 0.0;
  row("loglq", [&] { ls = batch::serial::loglq(d, x, 0.9); }, [&] { lp = batch::loglq(d, x, 0.9); },
      [&] { return ls == lp; });
  return all_same ? 0 : 1;
}
