#ifndef EPIBEHAVE_CONSTANT_COST_HPP
#define EPIBEHAVE_CONSTANT_COST_HPP

#include <vector>

#include "epibehave/model.hpp"

namespace epibehave::constant_cost {

inline constexpr double kDefaultHorizonDays = 400.0 * 365.0;
inline constexpr double kDefaultStepDays = 0.05;

// Equilibrium exposure max(1 + eta*beta*i/c, 0), clamped into [0,1].
// The upper clamp cannot bind for eta <= 0 but is applied anyway.
double exposure(double i, const ModelParams& p);

struct Derivatives {
  double ds, di, dr;  // components sum to zero
};

// Behavioral SIR vector field: dS = -beta*S*I*eps(I), dI = -dS - gamma*I,
// dR = gamma*I.
Derivatives rhs(const EpidemicState& state, const ModelParams& p);

// Classic fixed-step RK4, daily output sampling, early termination once
// I < 1e-12 and the daily S decrement < 1e-14. Throws NonFiniteState /
// ConservationViolation on integrator failure.
Trajectory integrate(const ModelParams& p,
                     double horizon = kDefaultHorizonDays,
                     double step = kDefaultStepDays);

struct PeakInfo {
  double t_peak;
  double s_peak;
  double i_peak;
  bool took_off;  // dI/dt(0) > 0
};

// Grid scan plus local quadratic refinement through the three points
// around the discrete maximum. Throws MultiplePeaks if the I series has
// more than one strict local maximum (an integrator failure; the
// dynamics admit at most one).
PeakInfo detect_peak(const Trajectory& traj);

struct ReproductionNumbers {
  double r0;                 // beta*S0/gamma
  double r0b;                // r0 * eps(0)
  std::vector<double> rt_b;  // (beta/gamma)*S(t)*eps(t), one per output time
};

ReproductionNumbers reproduction_numbers(const Trajectory& traj);

}  // namespace epibehave::constant_cost

#endif
