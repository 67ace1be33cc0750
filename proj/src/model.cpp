#include "epibehave/model.hpp"

#include <cmath>
#include <sstream>

namespace epibehave {

ModelParams baseline_params() {
  ModelParams p;
  p.gamma = 1.0 / 7.0;
  p.beta = 0.3 + p.gamma;
  p.c = 2.0;
  p.eta = -2761.63;
  p.rho = (0.05 + 0.67) / 365.0;
  p.pi_s = 0.0;
  p.pi_i = -399.96;
  p.pi_r = 0.0;
  p.i0 = 0.95e-4;
  return p;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << issue.field << ": " << issue.message << "\n";
  }
  return os.str();
}

ValidationReport validate(const ModelParams& p) {
  ValidationReport report;
  auto flag = [&report](const char* field, const char* message) {
    report.issues.push_back({field, message});
  };

  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) {
    flag("beta", "beta must be positive");
  }
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) {
    flag("gamma", "gamma must be positive");
  }
  if (!(p.c > 0.0) || !std::isfinite(p.c)) {
    flag("c", "c must be positive");
  }
  if (!(p.rho > 0.0) || !std::isfinite(p.rho)) {
    flag("rho", "rho must be positive");
  }
  // eta = 0 is admitted; it nests the standard SIR.
  if (!(p.eta <= 0.0) || !std::isfinite(p.eta)) {
    flag("eta", "eta must be non-positive");
  }
  if (!(p.i0 > 0.0 && p.i0 < 1.0)) {
    flag("i0", "i0 must lie in (0,1)");
  }
  if (!(p.pi_s >= p.pi_r)) {
    flag("pi_s", "flow payoffs must satisfy pi_s >= pi_r");
  }
  if (!(p.pi_r >= p.pi_i)) {
    flag("pi_r", "flow payoffs must satisfy pi_r >= pi_i");
  }
  return report;
}

bool severity_assumption_holds(const ModelParams& p) {
  const double v_i = (p.pi_i + (p.gamma / p.rho) * p.pi_r) / (p.rho + p.gamma);
  return p.pi_s - 0.5 * p.c > p.rho * v_i;
}

}  // namespace epibehave
