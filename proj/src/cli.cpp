#include "trimodal/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "trimodal/baselines.h"
#include "trimodal/bootstrap.h"
#include "trimodal/data_io.h"
#include "trimodal/error.h"
#include "trimodal/fit.h"
#include "trimodal/gof.h"
#include "trimodal/modality.h"
#include "trimodal/report.h"
#include "trimodal/sampling.h"

namespace trimodal {

using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string column;
  std::string kernel = "normal";
  std::optional<double> nu;
  double p = 1.5;
  std::optional<double> q;
  std::vector<double> q_grid{0.90, 0.95, 0.98, 0.99, 1.0};
  std::string models = "tdq,td,kde,normal";
  int replications = 1000;
  std::uint64_t seed = 0;
  std::string format;
  std::string output;
  std::string csv;
  int starts = 16;
  bool kde_adaptive = false;
  // distribution parameters for eval/sample/modality/gof
  double mu = 0.0, sigma = 1.0, alpha = 1.0, rho = 1.0, delta = 1.0;
  long count = 1;
  std::vector<double> xs;
  std::string grid;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Kernel make_kernel(const Options& o) { return Kernel::from_name(o.kernel, o.nu); }

ParamVector make_params(const Options& o) {
  ParamVector th{o.mu, o.sigma, o.alpha, o.rho, o.delta, o.p};
  th.validate();
  return th;
}

std::vector<double> load(const Options& o) {
  if (o.input.empty()) throw DomainError("an input file is required (use - for stdin)");
  return read_numeric_file(o.input, o.column.empty() ? std::nullopt : std::optional<std::string>(o.column));
}

json header(const std::string& cmd, const Options& o) {
  json j{{"schema_version", kSchemaVersion}, {"command", cmd}, {"kernel", o.kernel}, {"p", o.p}};
  if (o.nu) j["nu"] = *o.nu;
  return j;
}

Cdf normal_cdf(const NormalFit& nf) {
  return [nf](double v) { return 0.5 * std::erfc(-(v - nf.mu) / (nf.sigma * std::sqrt(2.0))); };
}

struct ModelRow {
  json j;
  TableRow row;
};

ModelRow td_row(const std::string& label, const FitResult& fr, const Kernel& k, const std::vector<double>& sorted,
                double q) {
  const TrimodalDistribution d(k, fr.theta_hat);
  ModelRow m;
  m.row.model = label;
  m.row.mu = fr.theta_hat.mu;
  m.row.sigma = fr.theta_hat.sigma;
  m.row.gof = make_gof_report(label, sorted, [&](double v) { return d.cdf(v); }, fr.loglik_at_q1, kParamsTD);
  m.j = to_json(fr);
  m.j["model"] = label;
  m.j["q"] = q;
  m.j["gof"] = to_json(m.row.gof);
  return m;
}

ModelRow kde_row(const std::vector<double>& sorted, bool adaptive) {
  const KdeModel km = kde_fit(sorted, adaptive);
  ModelRow m;
  m.row.model = "kde";
  m.row.mu = kde_mean(km);
  m.row.sigma = kde_sd(km);
  m.row.gof = make_gof_report("kde", sorted, [&](double v) { return kde_cdf(km, v); }, kde_loglik(km, sorted), kParamsKDE);
  m.j = {{"model", "kde"},
         {"params", {{"mu", m.row.mu}, {"sigma", m.row.sigma}, {"bandwidth", km.bandwidth}, {"adaptive", adaptive}}},
         {"gof", to_json(m.row.gof)}};
  return m;
}

ModelRow normal_row(const std::vector<double>& sorted) {
  const NormalFit nf = normal_mle(sorted);
  if (!(nf.sigma > 0.0)) throw DomainError("normal fit: zero standard deviation");
  ModelRow m;
  m.row.model = "normal";
  m.row.mu = nf.mu;
  m.row.sigma = nf.sigma;
  m.row.gof = make_gof_report("normal", sorted, normal_cdf(nf), normal_loglik(nf, sorted), kParamsNormal);
  m.j = {{"model", "normal"}, {"params", {{"mu", nf.mu}, {"sigma", nf.sigma}}}, {"gof", to_json(m.row.gof)}};
  return m;
}

FitConfig fit_config(const Options& o, double q) {
  FitConfig cfg;
  cfg.q = q;
  cfg.p = o.p;
  cfg.seed = o.seed;
  cfg.n_starts = o.starts;
  return cfg;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw DomainError("cannot open output file '" + o.output + "'");
  f << text;
}

std::string cmd_fit(const Options& o) {
  auto data = load(o);
  std::sort(data.begin(), data.end());
  const Kernel k = make_kernel(o);
  const auto models = split_list(o.models);
  json j = header("fit", o);
  j["n"] = data.size();
  const auto rs = robust_stats(data);
  j["robust"] = {{"median", rs.median}, {"mad", rs.mad}};
  std::vector<ModelRow> rows;
  std::vector<std::string> failures;
  for (const auto& label : models) {
    try {
      if (label == "tdq") {
        std::vector<double> grid = o.q ? std::vector<double>{*o.q} : o.q_grid;
        json qrep = json::array();
        std::optional<ModelRow> best;
        double best_ks = INFINITY, best_q = 1.0;
        for (double q : grid) {
          const FitResult fr = fit(data, k, fit_config(o, q));
          ModelRow m = td_row("tdq", fr, k, data, q);
          qrep.push_back({{"q", q}, {"ks", m.row.gof.ks}, {"loglq", fr.loglq}});
          if (m.row.gof.ks < best_ks) best_ks = m.row.gof.ks, best_q = q, best = std::move(m);
        }
        j["q_selected"] = best_q;
        j["q_grid"] = qrep;
        rows.push_back(std::move(*best));
      } else if (label == "td") {
        rows.push_back(td_row("td", fit(data, k, fit_config(o, 1.0)), k, data, 1.0));
      } else if (label == "kde") {
        rows.push_back(kde_row(data, o.kde_adaptive));
      } else if (label == "normal") {
        rows.push_back(normal_row(data));
      } else {
        throw DomainError("unknown model '" + label + "' (expected tdq, td, kde, normal)");
      }
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception& e) {
      failures.push_back(label + ": " + e.what());
    }
  }
  if (rows.empty()) throw ConvergenceError("every requested model failed to fit");
  json mj = json::array();
  std::vector<TableRow> table;
  for (auto& m : rows) {
    mj.push_back(m.j);
    table.push_back(m.row);
  }
  j["models"] = mj;
  j["failures"] = failures;
  if (o.format == "table") {
    std::ostringstream os;
    os << format_gof_table(table);
    for (const auto& m : rows)
      if (m.j.contains("std_errors") && !m.j["std_errors"].is_null()) {
        os << "\n" << m.row.model << " (q=" << m.j["q"].get<double>() << ") estimates and standard errors\n";
        for (const char* n : {"mu", "sigma", "alpha", "rho", "delta"})
          os << "  " << std::setw(6) << n << std::setw(14) << m.j["params"][n].get<double>() << std::setw(14)
             << m.j["std_errors"][n].get<double>() << "\n";
      }
    for (const auto& f : failures) os << "failed: " << f << "\n";
    return os.str();
  }
  return j.dump(2) + "\n";
}

std::vector<double> eval_points(const Options& o) {
  if (!o.xs.empty()) return o.xs;
  std::string g = o.grid.empty() ? "" : o.grid;
  if (g.empty()) {
    std::vector<double> xs;
    for (int i = 0; i <= 200; ++i) xs.push_back(o.mu + o.sigma * (-8.0 + 16.0 * i / 200.0));
    return xs;
  }
  std::replace(g.begin(), g.end(), ':', ' ');
  std::istringstream is(g);
  double lo, hi;
  long n;
  if (!(is >> lo >> hi >> n) || n < 2 || !(lo < hi)) throw DomainError("--grid expects lo:hi:n with lo < hi, n >= 2");
  std::vector<double> xs(n);
  for (long i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
  return xs;
}

std::string cmd_eval(const Options& o) {
  const TrimodalDistribution d(make_kernel(o), make_params(o));
  const auto xs = eval_points(o);
  if (o.format == "table") {
    std::ostringstream os;
    os << "x,pdf,cdf\n" << std::setprecision(17);
    for (double x : xs) os << x << ',' << d.pdf(x) << ',' << d.cdf(x) << '\n';
    return os.str();
  }
  json j = header("eval", o);
  j["params"] = to_json(d.params());
  json pts = json::array();
  for (double x : xs) pts.push_back({{"x", x}, {"pdf", d.pdf(x)}, {"cdf", d.cdf(x)}});
  j["points"] = pts;
  return j.dump(2) + "\n";
}

std::string cmd_sample(const Options& o) {
  if (o.count < 1) throw DomainError("-n must be >= 1");
  const TrimodalDistribution d(make_kernel(o), make_params(o));
  const auto xs = sample(d, static_cast<size_t>(o.count), o.seed);
  if (o.format == "json") {
    json j = header("sample", o);
    j["params"] = to_json(d.params());
    j["seed"] = o.seed;
    j["values"] = xs;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << std::setprecision(17);
  for (double x : xs) os << x << '\n';
  return os.str();
}

std::string cmd_modality(const Options& o) {
  const TrimodalDistribution d(make_kernel(o), make_params(o));
  const auto rep = classify_modality(d);
  if (o.format == "table") {
    std::ostringstream os;
    os << to_string(rep.cls) << "\nmodes:";
    for (double m : rep.modes) os << ' ' << m;
    os << "\nminima:";
    for (double m : rep.minima) os << ' ' << m;
    os << '\n';
    return os.str();
  }
  json j = header("modality", o);
  j["params"] = to_json(d.params());
  j["modality"] = to_json(rep);
  return j.dump(2) + "\n";
}

std::string cmd_gof(const Options& o) {
  auto data = load(o);
  std::sort(data.begin(), data.end());
  const Kernel k = make_kernel(o);
  const ParamVector th = make_params(o);
  const TrimodalDistribution d(k, th);
  std::vector<ModelRow> rows;
  {
    ModelRow m;
    m.row.model = "td";
    m.row.mu = th.mu;
    m.row.sigma = th.sigma;
    m.row.gof = make_gof_report("td", data, [&](double v) { return d.cdf(v); }, logq_likelihood(data, k, th, 1.0),
                                kParamsTD);
    m.j = {{"model", "td"}, {"params", to_json(th)}, {"gof", to_json(m.row.gof)}};
    rows.push_back(std::move(m));
  }
  for (const auto& label : split_list(o.models)) {
    if (label == "kde") rows.push_back(kde_row(data, o.kde_adaptive));
    else if (label == "normal") rows.push_back(normal_row(data));
  }
  if (o.format == "table") {
    std::vector<TableRow> t;
    for (auto& m : rows) t.push_back(m.row);
    return format_gof_table(t);
  }
  json j = header("gof", o);
  j["n"] = data.size();
  json mj = json::array();
  for (auto& m : rows) mj.push_back(m.j);
  j["models"] = mj;
  return j.dump(2) + "\n";
}

std::string cmd_bootstrap(const Options& o) {
  const auto data = load(o);
  BootstrapPlan plan;
  plan.replications = o.replications;
  plan.seed = o.seed;
  plan.models = split_list(o.models);
  plan.fit_cfg = fit_config(o, o.q.value_or(1.0));
  plan.kernel = make_kernel(o);
  plan.kde_adaptive = o.kde_adaptive;
  const auto s = run_bootstrap(data, plan);
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw DomainError("cannot open csv file '" + o.csv + "'");
    write_bootstrap_csv(f, s);
  }
  json j = header("bootstrap", o);
  j["n"] = data.size();
  j["q"] = plan.fit_cfg.q;
  j["bootstrap"] = to_json(s);
  if (o.format == "table") {
    std::ostringstream os;
    os << std::left << std::setw(8) << "model" << std::setw(16) << "quantity" << std::right << std::setw(14) << "mean"
       << std::setw(14) << "sd" << std::setw(14) << "2.5%" << std::setw(14) << "97.5%" << "\n";
    for (const auto& m : s.models)
      for (size_t i = 0; i < m.param_names.size(); ++i)
        os << std::left << std::setw(8) << m.label << std::setw(16) << m.param_names[i] << std::right
           << std::setw(14) << m.params[i].mean << std::setw(14) << m.params[i].sd << std::setw(14) << m.params[i].lo
           << std::setw(14) << m.params[i].hi << "\n";
    return os.str();
  }
  return j.dump(2) + "\n";
}

const char* error_type(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence_error";
  if (dynamic_cast<const BracketError*>(&e)) return "bracket_error";
  if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
  if (dynamic_cast<const InconsistentClassification*>(&e)) return "inconsistent_classification";
  return "error";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trimodal distribution toolkit: fit, evaluate, sample and compare TD models"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--kernel", o.kernel, "normal, laplace, logistic, cauchy, student_t, gumbel");
    sc->add_option("--nu", o.nu, "Student-t degrees of freedom");
    sc->add_option("--p", o.p, "shape p of the T transform (fixed)")->check(CLI::PositiveNumber);
    sc->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sc->add_option("--output", o.output, "write to this file instead of stdout");
    sc->add_option("--seed", o.seed, "random seed");
  };
  auto params = [&](CLI::App* sc) {
    sc->add_option("--mu", o.mu);
    sc->add_option("--sigma", o.sigma);
    sc->add_option("--alpha", o.alpha);
    sc->add_option("--rho", o.rho);
    sc->add_option("--delta", o.delta);
  };
  auto data = [&](CLI::App* sc) {
    sc->add_option("input", o.input, "CSV or plain numeric file, - for stdin");
    sc->add_option("--column", o.column, "column name or 0-based index");
  };
  auto qopt = [&](CLI::App* sc) {
    sc->add_option("--q", o.q, "q of the log_q likelihood")->check(CLI::Range(1e-12, 1.0));
    sc->add_option("--q-grid", o.q_grid, "candidate q values, best KS wins")->delimiter(',');
    sc->add_option("--starts", o.starts, "random starts per fit")->check(CLI::PositiveNumber);
  };

  auto* fit_c = app.add_subcommand("fit", "fit TD(q), TD, KDE and normal models to data");
  common(fit_c), data(fit_c), qopt(fit_c);
  fit_c->add_option("--models", o.models, "comma list of tdq, td, kde, normal");
  fit_c->add_flag("--kde-adaptive", o.kde_adaptive);

  auto* eval_c = app.add_subcommand("eval", "pdf and cdf on a grid or at given points");
  common(eval_c), params(eval_c);
  eval_c->add_option("--x", o.xs, "points")->delimiter(',');
  eval_c->add_option("--grid", o.grid, "lo:hi:n");

  auto* sample_c = app.add_subcommand("sample", "draw a sample, one value per line");
  common(sample_c), params(sample_c);
  sample_c->add_option("-n,--count", o.count, "sample size");

  auto* mod_c = app.add_subcommand("modality", "classify the density as uni-, bi- or trimodal");
  common(mod_c), params(mod_c);

  auto* gof_c = app.add_subcommand("gof", "goodness of fit of given TD parameters to data");
  common(gof_c), params(gof_c), data(gof_c);
  gof_c->add_option("--models", o.models, "extra baselines: kde, normal");
  gof_c->add_flag("--kde-adaptive", o.kde_adaptive);

  auto* boot_c = app.add_subcommand("bootstrap", "bootstrap the model fits");
  common(boot_c), data(boot_c), qopt(boot_c);
  boot_c->add_option("--models", o.models, "comma list of tdq, td, kde, normal");
  boot_c->add_option("--replications", o.replications)->check(CLI::PositiveNumber);
  boot_c->add_option("--csv", o.csv, "per-replicate estimates in long CSV format");
  boot_c->add_flag("--kde-adaptive", o.kde_adaptive);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  const bool sample_cmd = sample_c->parsed();
  if (o.format.empty()) o.format = sample_cmd ? "table" : "json";
  if (gof_c->parsed() && gof_c->count("--models") == 0) o.models = "";

  try {
    std::string text;
    if (fit_c->parsed()) text = cmd_fit(o);
    else if (eval_c->parsed()) text = cmd_eval(o);
    else if (sample_c->parsed()) text = cmd_sample(o);
    else if (mod_c->parsed()) text = cmd_modality(o);
    else if (gof_c->parsed()) text = cmd_gof(o);
    else text = cmd_bootstrap(o);
    emit(o, text, out);
    return 0;
  } catch (const std::exception& e) {
    if (o.format == "json") {
      json j{{"schema_version", kSchemaVersion}, {"error", {{"type", error_type(e)}, {"message", e.what()}}}};
      err << j.dump() << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return 1;
  }
}

} // namespace trimodal
