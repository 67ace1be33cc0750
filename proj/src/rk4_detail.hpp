#ifndef EPIBEHAVE_RK4_DETAIL_HPP
#define EPIBEHAVE_RK4_DETAIL_HPP

#include <cmath>

#include "epibehave/errors.hpp"
#include "epibehave/model.hpp"

namespace epibehave::detail {

struct Sir {
  double s, i, r;
};

// eps_fn(t, i) -> exposure in [0,1]. The clamped regime (eps == 0) is
// legitimate dynamics: dS = 0, dI = -gamma*I.
template <class EpsFn>
inline Sir sir_rhs(double t, const Sir& x, double beta, double gamma,
                   EpsFn&& eps_fn) {
  const double e = eps_fn(t, x.i);
  const double infections = beta * e * x.s * x.i;
  const double recoveries = gamma * x.i;
  return {-infections, infections - recoveries, recoveries};
}

template <class EpsFn>
inline Sir rk4_sir_step(double t, const Sir& x, double h, double beta,
                        double gamma, EpsFn&& eps_fn) {
  const Sir k1 = sir_rhs(t, x, beta, gamma, eps_fn);
  const Sir x2{x.s + 0.5 * h * k1.s, x.i + 0.5 * h * k1.i,
               x.r + 0.5 * h * k1.r};
  const Sir k2 = sir_rhs(t + 0.5 * h, x2, beta, gamma, eps_fn);
  const Sir x3{x.s + 0.5 * h * k2.s, x.i + 0.5 * h * k2.i,
               x.r + 0.5 * h * k2.r};
  const Sir k3 = sir_rhs(t + 0.5 * h, x3, beta, gamma, eps_fn);
  const Sir x4{x.s + h * k3.s, x.i + h * k3.i, x.r + h * k3.r};
  const Sir k4 = sir_rhs(t + h, x4, beta, gamma, eps_fn);
  return {x.s + h / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s),
          x.i + h / 6.0 * (k1.i + 2.0 * k2.i + 2.0 * k3.i + k4.i),
          x.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r)};
}

inline void check_state(const Sir& x, double t) {
  if (!std::isfinite(x.s) || !std::isfinite(x.i) || !std::isfinite(x.r)) {
    throw NonFiniteState("non-finite state at t = " + std::to_string(t));
  }
  const double drift = std::abs(x.s + x.i + x.r - 1.0);
  if (drift > 1e-9) {
    throw ConservationViolation("|S+I+R-1| = " + std::to_string(drift) +
                                " at t = " + std::to_string(t));
  }
}

// Fixed-step RK4 sampled at day boundaries. eps_fn(t, i) supplies the
// exposure; early stopping fires once the daily S decrement and I both
// fall below their thresholds (disabled when early_stop_i < 0).
template <class EpsFn>
Trajectory integrate_daily(const ModelParams& p, EpsFn&& eps_fn,
                           double horizon, double step, double early_stop_i,
                           double early_stop_ds) {
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  if (!(step > 0.0) || step > 1.0) {
    throw DomainError("step must lie in (0, 1] days");
  }
  const int spd = static_cast<int>(std::lround(1.0 / step));
  const double h = 1.0 / spd;
  const long n_days = static_cast<long>(std::ceil(horizon));

  Trajectory traj;
  traj.params = p;
  traj.step = h;
  traj.horizon = horizon;
  traj.states.reserve(static_cast<std::size_t>(std::min<long>(n_days, 16384)) + 1);

  Sir x{p.s0(), p.i0, 0.0};
  traj.states.push_back({0.0, x.s, x.i, x.r, eps_fn(0.0, x.i)});

  for (long day = 0; day < n_days; ++day) {
    const double s_before = x.s;
    for (int k = 0; k < spd; ++k) {
      const double t = static_cast<double>(day) + static_cast<double>(k) / spd;
      x = rk4_sir_step(t, x, h, p.beta, p.gamma, eps_fn);
    }
    const double t_out = static_cast<double>(day + 1);
    check_state(x, t_out);
    traj.states.push_back({t_out, x.s, x.i, x.r, eps_fn(t_out, x.i)});
    if (early_stop_i >= 0.0 && x.i < early_stop_i &&
        (s_before - x.s) < early_stop_ds) {
      break;
    }
  }
  return traj;
}

}  // namespace epibehave::detail

#endif
