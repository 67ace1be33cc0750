#ifndef EPIBEHAVE_CONTACT_RATE_HPP
#define EPIBEHAVE_CONTACT_RATE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "epibehave/model.hpp"

namespace epibehave::contact_rate {

// Nonlinear force of infection g: [0,1] -> [0, inf) with g(0) = 0,
// g'(0) > 0 and g(x) <= g'(0) x.
struct ForceOfInfection {
  std::function<double(double)> g;
  double gprime0;

  // Uniform tabulation on [0,1].
  std::vector<std::pair<double, double>> tabulate(std::size_t n = 1001) const;
};

// Force of infection induced by quadratic distancing costs:
// g(I) = beta * I * max(1 + eta*beta*I/c, 0), i.e. beta * eps(I) * I.
ForceOfInfection recover_g_quadratic(const ModelParams& p);

// Saturating form beta*I / (1 + I/alpha).
double capasso_g(double i, double alpha, double beta);
ForceOfInfection capasso_force(double alpha, double beta);

// Distancing cost whose equilibrium reproduces the saturating form:
// -eta*beta*alpha * ((1-d) - log(1-d)). Diverges as d -> 1.
double capasso_cost(double d, double alpha, double eta, double beta);

// Exposure choice equating marginal distancing cost with the marginal
// infection loss -eta*beta*I: d = I / (alpha + I).
double capasso_distancing(double i, double alpha);

struct AssumptionCheck {
  bool zero_at_zero;
  bool positive_initial_slope;
  bool below_tangent;  // g(x) <= g'(0) x on the grid
  double gprime0;

  bool all() const {
    return zero_at_zero && positive_initial_slope && below_tangent;
  }
};

AssumptionCheck check_assumptions(const ForceOfInfection& f,
                                  std::size_t grid_n = 1001);

}  // namespace epibehave::contact_rate

#endif
