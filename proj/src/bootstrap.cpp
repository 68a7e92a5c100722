#include "trimodal/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "trimodal/baselines.h"
#include "trimodal/distribution.h"
#include "trimodal/error.h"
#include "trimodal/gof.h"
#include "trimodal/sampling.h"

namespace trimodal {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kGofNames{"ks", "cvm", "cvm_standard", "ad_paper", "ad_standard",
                                         "loglik", "aic", "bic"};

std::vector<std::string> param_names(const std::string& label) {
  if (label == "tdq" || label == "td") return {"mu", "sigma", "alpha", "rho", "delta", "delta_over_rho"};
  return {"mu", "sigma"};
}

void append_gof(std::vector<double>& row, const GofReport& g) {
  row.insert(row.end(), {g.ks, g.cvm, g.cvm_standard, g.ad_paper, g.ad_standard, g.loglik, g.aic, g.bic});
}

// One replicate for one model: parameters followed by GOF statistics of the fit to the resample.
std::vector<double> fit_model(const std::string& label, std::vector<double> x, const BootstrapPlan& plan) {
  std::sort(x.begin(), x.end());
  std::vector<double> row;
  if (label == "tdq" || label == "td") {
    FitConfig cfg = plan.fit_cfg;
    cfg.compute_se = false;
    if (label == "td") cfg.q = 1.0;
    const FitResult fr = fit(x, plan.kernel, cfg);
    const auto& t = fr.theta_hat;
    row = {t.mu, t.sigma, t.alpha, t.rho, t.delta, t.delta / t.rho};
    const TrimodalDistribution d(plan.kernel, t);
    append_gof(row, make_gof_report(label, x, [&](double v) { return d.cdf(v); }, fr.loglik_at_q1, kParamsTD));
  } else if (label == "kde") {
    const KdeModel m = kde_fit(x, plan.kde_adaptive);
    row = {kde_mean(m), kde_sd(m)};
    append_gof(row, make_gof_report(label, x, [&](double v) { return kde_cdf(m, v); }, kde_loglik(m, x), kParamsKDE));
  } else if (label == "normal") {
    const NormalFit nf = normal_mle(x);
    if (!(nf.sigma > 0.0)) throw DomainError("normal fit degenerate");
    row = {nf.mu, nf.sigma};
    append_gof(row, make_gof_report(label, x, [&](double v) { return 0.5 * std::erfc(-(v - nf.mu) / (nf.sigma * std::sqrt(2.0))); },
                                    normal_loglik(nf, x), kParamsNormal));
  } else {
    throw DomainError("unknown model '" + label + "'");
  }
  return row;
}

} // namespace

void BootstrapPlan::validate() const {
  if (replications < 1) throw DomainError("bootstrap: replications must be >= 1");
  if (models.empty()) throw DomainError("bootstrap: no models requested");
  for (const auto& m : models)
    if (m != "tdq" && m != "td" && m != "kde" && m != "normal")
      throw DomainError("bootstrap: unknown model '" + m + "'");
  fit_cfg.validate();
}

std::vector<size_t> resample_indices(size_t n, std::uint64_t seed, std::uint64_t replicate) {
  std::mt19937_64 gen(stream_seed(seed, replicate));
  // unbiased bounded integers by rejection
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::vector<size_t> idx(n);
  for (auto& i : idx) {
    std::uint64_t v;
    do v = gen();
    while (v >= limit);
    i = static_cast<size_t>(v % range);
  }
  return idx;
}

SummaryStats summarize(std::span<const double> values) {
  std::vector<double> v;
  for (double x : values)
    if (!std::isnan(x)) v.push_back(x);
  SummaryStats s;
  s.count = static_cast<int>(v.size());
  if (v.empty()) {
    s.mean = s.sd = s.lo = s.hi = kNaN;
    return s;
  }
  for (double x : v) s.mean += x;
  s.mean /= v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.sd = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
  s.lo = sample_quantile(v, 0.025);
  s.hi = sample_quantile(v, 0.975);
  return s;
}

BootstrapSummary run_bootstrap(std::span<const double> data, const BootstrapPlan& plan) {
  plan.validate();
  if (data.empty()) throw DomainError("bootstrap: empty data");
  const int R = plan.replications;
  const size_t nm = plan.models.size();
  // rows[m][r], filled by index so the schedule never changes the result
  std::vector<std::vector<std::vector<double>>> rows(nm, std::vector<std::vector<double>>(R));
  std::vector<std::vector<char>> failed(nm, std::vector<char>(R, 0));

#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < R; ++r) {
    const auto idx = resample_indices(data.size(), plan.seed, static_cast<std::uint64_t>(r));
    std::vector<double> x(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) x[i] = data[idx[i]];
    for (size_t m = 0; m < nm; ++m) {
      const std::string& label = plan.models[m];
      try {
        rows[m][r] = fit_model(label, x, plan);
      } catch (const std::exception&) {
        failed[m][r] = 1;
        rows[m][r].assign(param_names(label).size() + kGofNames.size(), kNaN);
      }
    }
  }

  BootstrapSummary out;
  out.replications = R;
  out.seed = plan.seed;
  for (size_t m = 0; m < nm; ++m) {
    ModelBootstrap mb;
    mb.label = plan.models[m];
    mb.failure_count = static_cast<int>(std::count(failed[m].begin(), failed[m].end(), 1));
    if (2 * mb.failure_count > R) {
      std::ostringstream msg;
      msg << "bootstrap aborted: " << mb.failure_count << " of " << R << " replicate fits failed for model "
          << mb.label;
      throw ConvergenceError(msg.str());
    }
    mb.param_names = param_names(mb.label);
    mb.gof_names = kGofNames;
    const size_t np = mb.param_names.size();
    for (size_t c = 0; c < np + kGofNames.size(); ++c) {
      std::vector<double> col(R);
      for (int r = 0; r < R; ++r) col[r] = rows[m][r][c];
      (c < np ? mb.params : mb.gof).push_back(summarize(col));
    }
    mb.rows = std::move(rows[m]);
    out.models.push_back(std::move(mb));
  }
  return out;
}

} // namespace trimodal
