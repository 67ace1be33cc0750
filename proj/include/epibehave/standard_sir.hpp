#ifndef EPIBEHAVE_STANDARD_SIR_HPP
#define EPIBEHAVE_STANDARD_SIR_HPP

#include "epibehave/constant_cost.hpp"
#include "epibehave/model.hpp"

namespace epibehave::standard_sir {

// No-behavior baseline: exposure fixed to 1 throughout.
Trajectory integrate_standard(
    const ModelParams& p,
    double horizon = constant_cost::kDefaultHorizonDays,
    double step = constant_cost::kDefaultStepDays);

// Closed-form peak prevalence 1 - gamma/beta + (gamma/beta)*ln(gamma/(beta*S0)).
// Throws NoTakeoff when beta*S0 <= gamma.
double standard_peak(const ModelParams& p);

// Limiting susceptible share: unique root of
// 1 - x - (gamma/beta)*ln(S0/x) on (0, gamma/beta), by bisection to 1e-12.
double standard_final_size(const ModelParams& p);

// Phase-space solution I(S) = 1 - S + (gamma/beta)*ln(S/S0) through (S0, I0).
double path_i_of_s(const ModelParams& p, double s);

}  // namespace epibehave::standard_sir

#endif
