#pragma once

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trimodal/bootstrap.h"
#include "trimodal/fit.h"
#include "trimodal/gof.h"
#include "trimodal/modality.h"

namespace trimodal {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const ParamVector& th);
nlohmann::json to_json(const GofReport& g);
nlohmann::json to_json(const ModalityReport& m);
nlohmann::json to_json(const FitResult& fr, double level = 0.95);
nlohmann::json to_json(const BootstrapSummary& s);

// Aligned text table: model, mu, sigma, KS, CVM, AD, log(L), AIC, BIC.
struct TableRow {
  std::string model;
  double mu = 0.0, sigma = 0.0;
  GofReport gof;
};
std::string format_gof_table(const std::vector<TableRow>& rows);

void write_bootstrap_csv(std::ostream& os, const BootstrapSummary& s);

} // namespace trimodal
