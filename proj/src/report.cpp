#include "trimodal/report.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace trimodal {

using nlohmann::json;

namespace {

// NaN and inf are not valid JSON numbers
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* kNames[5] = {"mu", "sigma", "alpha", "rho", "delta"};

json stats_json(const SummaryStats& s) {
  return {{"mean", num(s.mean)}, {"sd", num(s.sd)}, {"p2_5", num(s.lo)}, {"p97_5", num(s.hi)}, {"count", s.count}};
}

} // namespace

json to_json(const ParamVector& th) {
  return {{"mu", th.mu}, {"sigma", th.sigma}, {"alpha", th.alpha}, {"rho", th.rho}, {"delta", th.delta}, {"p", th.p}};
}

json to_json(const GofReport& g) {
  return {{"model", g.model_label}, {"n", g.n},         {"k_params", g.k_params},
          {"ks", num(g.ks)},        {"cvm", num(g.cvm)}, {"cvm_standard", num(g.cvm_standard)},
          {"ad_paper", num(g.ad_paper)}, {"ad_standard", num(g.ad_standard)},
          {"loglik", num(g.loglik)}, {"aic", num(g.aic)}, {"bic", num(g.bic)}, {"warnings", g.warnings}};
}

json to_json(const ModalityReport& m) {
  return {{"class", to_string(m.cls)}, {"modes", m.modes},           {"minima", m.minima},
          {"r_roots", m.r_roots},      {"method", m.method},         {"grid_modes", m.grid_modes},
          {"grid_resolved", m.grid_resolved}};
}

json to_json(const FitResult& fr, double level) {
  json j;
  j["params"] = to_json(fr.theta_hat);
  j["loglq"] = num(fr.loglq);
  j["loglik"] = num(fr.loglik_at_q1);
  j["converged"] = fr.converged;
  j["n_evals"] = fr.n_evals;
  j["best_start"] = fr.best_start;
  j["stationarity_max"] = num(fr.stationarity_max);
  if (fr.std_errors) {
    json se, ci;
    const auto iv = confidence_intervals(fr.theta_hat, *fr.std_errors, level);
    for (int i = 0; i < 5; ++i) {
      se[kNames[i]] = num((*fr.std_errors)[i]);
      ci[kNames[i]] = {num(iv[i].lo), num(iv[i].hi)};
    }
    j["std_errors"] = se;
    j["ci"] = ci;
    j["ci_level"] = level;
  } else {
    j["std_errors"] = nullptr;
    j["ci"] = nullptr;
  }
  j["se_note"] = fr.se_note;
  json starts = json::array();
  for (const auto& s : fr.start_diagnostics)
    starts.push_back({{"loglq_init", num(s.loglq_init)}, {"loglq", num(s.loglq)}, {"iterations", s.iterations},
                      {"converged", s.converged}});
  j["starts"] = starts;
  return j;
}

json to_json(const BootstrapSummary& s) {
  json models = json::array();
  for (const auto& m : s.models) {
    json params, gof;
    for (size_t i = 0; i < m.param_names.size(); ++i) params[m.param_names[i]] = stats_json(m.params[i]);
    for (size_t i = 0; i < m.gof_names.size(); ++i) gof[m.gof_names[i]] = stats_json(m.gof[i]);
    models.push_back({{"model", m.label}, {"failure_count", m.failure_count}, {"params", params}, {"gof", gof}});
  }
  return {{"replications", s.replications}, {"seed", s.seed}, {"models", models}};
}

std::string format_gof_table(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  char buf[320];
  // same-index and textbook CvM/AD side by side
  std::snprintf(buf, sizeof buf, "%-8s %11s %11s %9s %9s %9s %11s %9s %12s %11s %11s\n", "Model", "mu", "sigma", "KS",
                "CVM", "CVM(std)", "AD", "AD(std)", "log(L)", "AIC", "BIC");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-8s %11.5f %11.5f %9.5f %9.5f %9.5f %11.5f %9.5f %12.3f %11.2f %11.2f\n",
                  r.model.c_str(), r.mu, r.sigma, r.gof.ks, r.gof.cvm, r.gof.cvm_standard, r.gof.ad_paper,
                  r.gof.ad_standard, r.gof.loglik, r.gof.aic, r.gof.bic);
    os << buf;
  }
  return os.str();
}

void write_bootstrap_csv(std::ostream& os, const BootstrapSummary& s) {
  // long format, one estimate per line
  os << "model,replicate,quantity,value\n";
  for (const auto& m : s.models) {
    for (size_t r = 0; r < m.rows.size(); ++r) {
      for (size_t c = 0; c < m.rows[r].size(); ++c) {
        const std::string& q = c < m.param_names.size() ? m.param_names[c] : m.gof_names[c - m.param_names.size()];
        os << m.label << ',' << r << ',' << q << ',';
        const double v = m.rows[r][c];
        if (std::isfinite(v)) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", v);
          os << buf;
        } else {
          os << "nan";
        }
        os << '\n';
      }
    }
  }
}

} // namespace trimodal
