#ifndef EPIBEHAVE_ENDOGENOUS_HPP
#define EPIBEHAVE_ENDOGENOUS_HPP

#include <vector>

#include "epibehave/model.hpp"

namespace epibehave::endogenous {

// Continuation value upon infection: (pi_I + (gamma/rho)*pi_R) / (rho + gamma).
double v_infected(const ModelParams& p);

struct EtaBounds {
  double lo;          // -(pi_S - rho*V_I)/rho; also the terminal value of eta
  double hi_tight;    // -(pi_S - rho*V_I - c/2)/rho; binds when eta rises at 0
  double hi_general;  // -(pi_S - rho*V_I - c/2)/(rho + beta); always valid
};

// Throws AssumptionViolated when pi_S - c/2 <= rho*V_I.
EtaBounds eta_bounds(const ModelParams& p);

// Adjoint equation: eta*(rho + eps*beta*i) + (pi_S - (c/2)(1-eps)^2 - rho*V_I).
double costate_rhs(double eta, double eps, double i, const ModelParams& p);

struct SolverOptions {
  double horizon = 400.0 * 365.0;  // days
  double step = 0.05;              // days
  double tol = 1e-8;               // sup-norm gap on (S,I,R,eta) jointly
  int max_iter = 200;
  double relaxation = 1.0;  // halved (min 0.125) after two rising gaps
};

struct IterationRecord {
  int iteration;
  double gap;
  double omega;
};

struct CostateTrajectory {
  std::vector<double> t;    // daily output grid (matches the Trajectory)
  std::vector<double> eta;  // co-state, always negative
  std::vector<double> eps;  // equilibrium exposure
  std::vector<double> p;    // cumulative infection probability, < 1

  bool converged = false;
  int iterations = 0;
  double final_gap = 0.0;
  std::vector<IterationRecord> log;

  // Full solver grid, kept for quadrature cross-checks.
  double fine_step = 0.0;
  std::vector<double> fine_t, fine_s, fine_i, fine_eps, fine_eta;
};

struct EquilibriumSolution {
  Trajectory trajectory;
  CostateTrajectory costate;
};

// Fixed point of: forward RK4 of (S,I,R) under eps(t) = clamp(1 +
// beta*eta(t)*I/c, 0, 1) given the current co-state; backward RK4 of the
// adjoint from eta(T) = -(pi_S - rho*V_I)/rho given the current (I, eps);
// relaxed update until the joint sup-norm gap drops below tol. The grid
// is truncated where the epidemic has died out (daily dS < 1e-12 and
// I < 1e-10). Throws NoConvergence after max_iter and ExposureOutOfRange
// if the converged unclamped exposure leaves [0,1].
EquilibriumSolution solve_equilibrium(const ModelParams& p,
                                      const SolverOptions& opts = {});

// Daily p(t) from the converged run; verifies 1 - p(t) = S(t)/S0 within
// 1e-6 (IdentityViolation otherwise).
std::vector<double> infection_probability(const EquilibriumSolution& sol);

// Max relative gap between the ODE co-state and its integral
// representation (trapezoid on the solver grid, analytic tail) at the
// given times.
double eta_integral_check(const EquilibriumSolution& sol,
                          const std::vector<double>& sample_times);

struct SandwichReport {
  double eta_lo = 0.0, eta_hi = 0.0;
  std::vector<double> s_grid;
  std::vector<double> i_low, i_endog, i_high;
  double peak_low = 0.0, peak_endog = 0.0, peak_high = 0.0;
  double max_violation = 0.0;  // most positive breach of the ordering
  bool ordered = false;
};

// Solves the endogenous model plus the two constant-cost models at the
// co-state bounds and checks I_low(S) <= I_endog(S) <= I_high(S) on a
// shared S grid (1e-6 slack). Throws SandwichViolation on failure.
SandwichReport sandwich_check(const ModelParams& p,
                              const SolverOptions& opts = {});

}  // namespace epibehave::endogenous

#endif
