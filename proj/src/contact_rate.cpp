#include "epibehave/contact_rate.hpp"

#include <cmath>

#include "epibehave/constant_cost.hpp"
#include "epibehave/errors.hpp"

namespace epibehave::contact_rate {

std::vector<std::pair<double, double>> ForceOfInfection::tabulate(
    std::size_t n) const {
  std::vector<std::pair<double, double>> rows;
  rows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / (n - 1);
    rows.emplace_back(x, g(x));
  }
  return rows;
}

ForceOfInfection recover_g_quadratic(const ModelParams& p) {
  if (p.eta > 0.0) throw DomainError("requires eta <= 0");
  ForceOfInfection f;
  f.g = [p](double i) { return p.beta * constant_cost::exposure(i, p) * i; };
  f.gprime0 = p.beta;
  return f;
}

double capasso_g(double i, double alpha, double beta) {
  return beta * i / (1.0 + i / alpha);
}

ForceOfInfection capasso_force(double alpha, double beta) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  ForceOfInfection f;
  f.g = [alpha, beta](double i) { return capasso_g(i, alpha, beta); };
  f.gprime0 = beta;
  return f;
}

double capasso_cost(double d, double alpha, double eta, double beta) {
  if (!(d >= 0.0 && d < 1.0)) {
    throw DomainError("capasso_cost defined on d in [0, 1)");
  }
  return -eta * beta * alpha * ((1.0 - d) - std::log(1.0 - d));
}

double capasso_distancing(double i, double alpha) {
  return i / (alpha + i);
}

AssumptionCheck check_assumptions(const ForceOfInfection& f,
                                  std::size_t grid_n) {
  AssumptionCheck out;
  out.zero_at_zero = f.g(0.0) == 0.0;
  const double fd = 1e-8;
  out.gprime0 = f.g(fd) / fd;
  out.positive_initial_slope = out.gprime0 > 0.0;
  out.below_tangent = true;
  for (std::size_t k = 0; k < grid_n; ++k) {
    const double x = static_cast<double>(k) / (grid_n - 1);
    if (f.g(x) > f.gprime0 * x + 1e-12) {
      out.below_tangent = false;
      break;
    }
  }
  return out;
}

}  // namespace epibehave::contact_rate
