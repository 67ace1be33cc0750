#ifndef EPIBEHAVE_MODEL_HPP
#define EPIBEHAVE_MODEL_HPP

#include <string>
#include <vector>

namespace epibehave {

// All rates are per day; payoffs are flow utils per day.
struct ModelParams {
  double beta;   // transmission rate upon full-exposure contact, > 0
  double gamma;  // recovery rate, > 0
  double c;      // distancing cost coefficient, > 0
  double eta;    // cost of infection (<= 0; 0 recovers the standard SIR)
  double rho;    // effective discount rate (discounting + cure arrival), > 0
  double pi_s;   // flow payoff while susceptible
  double pi_i;   // flow payoff while infected
  double pi_r;   // flow payoff while recovered
  double i0;     // initial infected share, in (0,1)

  double s0() const { return 1.0 - i0; }
};

// Table-driven baseline: gamma = 1/7, beta = 0.3 + gamma, I0 = 0.95e-4,
// rho = (0.05 + 0.67)/365, c = 2, pi_S = pi_R = 0, pi_I = -399.96,
// eta = -2761.63.
ModelParams baseline_params();

struct ValidationIssue {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

// Report-style: collects every violated invariant, empty means valid.
ValidationReport validate(const ModelParams& p);

// pi_S - c/2 > rho * V_I. Required by the endogenous-cost model: being
// susceptible under full distancing still beats certain infection.
bool severity_assumption_holds(const ModelParams& p);

struct EpidemicState {
  double t;    // days
  double s;    // susceptible share
  double i;    // infected share
  double r;    // recovered share
  double eps;  // equilibrium exposure in [0,1]
};

// States sampled on a uniform (default daily) output grid. S is
// non-increasing, R non-decreasing and S+I+R stays within 1e-9 of one.
struct Trajectory {
  ModelParams params{};
  double step = 0.0;     // integrator step, days
  double horizon = 0.0;  // requested horizon, days
  std::vector<EpidemicState> states;

  std::size_t size() const { return states.size(); }
  const EpidemicState& operator[](std::size_t k) const { return states[k]; }
  const EpidemicState& front() const { return states.front(); }
  const EpidemicState& back() const { return states.back(); }
};

}  // namespace epibehave

#endif
