#include "epibehave/endogenous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "epibehave/constant_cost.hpp"
#include "epibehave/errors.hpp"
#include "rk4_detail.hpp"

namespace epibehave::endogenous {

namespace {

constexpr double kTruncDailyDs = 1e-12;
constexpr double kTruncI = 1e-10;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

struct FineGrid {
  int spd = 20;        // integrator substeps per day
  long n_days = 0;     // grid covers [0, n_days]
  double h = 0.05;

  std::size_t nodes() const {
    return static_cast<std::size_t>(n_days) * spd + 1;
  }
  double time_at(std::size_t k) const {
    return static_cast<double>(k / spd) + static_cast<double>(k % spd) / spd;
  }
};

struct ForwardState {
  std::vector<double> s, i, r, p, eps;
};

// One RK4 step of (S, I, R, p) under exposure from the co-state nodes
// bracketing the step; eta and the stored profiles are linear between
// grid nodes.
struct ForwardStepper {
  const ModelParams& mp;

  struct X4 {
    double s, i, r, p;
  };

  X4 deriv(const X4& x, double eta) const {
    const double e = clamp01(1.0 + mp.beta * eta * x.i / mp.c);
    const double force = mp.beta * e * x.i;
    const double infections = force * x.s;
    const double recoveries = mp.gamma * x.i;
    return {-infections, infections - recoveries, recoveries,
            force * (1.0 - x.p)};
  }

  X4 step(const X4& x, double h, double eta0, double eta1) const {
    const double eta_half = 0.5 * (eta0 + eta1);
    const X4 k1 = deriv(x, eta0);
    const X4 x2{x.s + 0.5 * h * k1.s, x.i + 0.5 * h * k1.i,
                x.r + 0.5 * h * k1.r, x.p + 0.5 * h * k1.p};
    const X4 k2 = deriv(x2, eta_half);
    const X4 x3{x.s + 0.5 * h * k2.s, x.i + 0.5 * h * k2.i,
                x.r + 0.5 * h * k2.r, x.p + 0.5 * h * k2.p};
    const X4 k3 = deriv(x3, eta_half);
    const X4 x4{x.s + h * k3.s, x.i + h * k3.i, x.r + h * k3.r,
                x.p + h * k3.p};
    const X4 k4 = deriv(x4, eta1);
    return {x.s + h / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s),
            x.i + h / 6.0 * (k1.i + 2.0 * k2.i + 2.0 * k3.i + k4.i),
            x.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
            x.p + h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
  }
};

void run_forward(const ModelParams& mp, const FineGrid& grid,
                 const std::vector<double>& eta, ForwardState& out) {
  const std::size_t n = grid.nodes();
  out.s.resize(n);
  out.i.resize(n);
  out.r.resize(n);
  out.p.resize(n);
  out.eps.resize(n);

  ForwardStepper stepper{mp};
  ForwardStepper::X4 x{mp.s0(), mp.i0, 0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    out.s[k] = x.s;
    out.i[k] = x.i;
    out.r[k] = x.r;
    out.p[k] = x.p;
    out.eps[k] = clamp01(1.0 + mp.beta * eta[k] * x.i / mp.c);
    if (k + 1 < n) {
      x = stepper.step(x, grid.h, eta[k], eta[k + 1]);
      if (!std::isfinite(x.s) || !std::isfinite(x.i) || !std::isfinite(x.r)) {
        throw NonFiniteState("endogenous forward pass diverged at t = " +
                             std::to_string(grid.time_at(k + 1)));
      }
      const double drift = std::abs(x.s + x.i + x.r - 1.0);
      if (drift > 1e-9) {
        throw ConservationViolation("endogenous forward pass drift " +
                                    std::to_string(drift));
      }
    }
  }
}

// Adjoint integrated from the terminal node backward; I and eps are the
// stored forward profiles, linear at half-nodes.
void run_backward(const ModelParams& mp, const FineGrid& grid,
                  const ForwardState& fwd, double eta_terminal,
                  std::vector<double>& eta_out) {
  const std::size_t n = grid.nodes();
  eta_out.resize(n);
  eta_out[n - 1] = eta_terminal;

  const double premium0 = mp.pi_s - mp.rho * v_infected(mp);
  auto deriv = [&](double eta, double i_val, double eps_val) {
    const double d = 1.0 - eps_val;
    return eta * (mp.rho + eps_val * mp.beta * i_val) +
           (premium0 - 0.5 * mp.c * d * d);
  };

  const double h = grid.h;
  for (std::size_t k = n - 1; k > 0; --k) {
    const double i1 = fwd.i[k], i0 = fwd.i[k - 1];
    const double e1 = fwd.eps[k], e0 = fwd.eps[k - 1];
    const double ih = 0.5 * (i0 + i1);
    const double eh = 0.5 * (e0 + e1);
    const double eta1 = eta_out[k];
    const double g1 = deriv(eta1, i1, e1);
    const double g2 = deriv(eta1 - 0.5 * h * g1, ih, eh);
    const double g3 = deriv(eta1 - 0.5 * h * g2, ih, eh);
    const double g4 = deriv(eta1 - h * g3, i0, e0);
    eta_out[k - 1] = eta1 - h / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
    if (!std::isfinite(eta_out[k - 1])) {
      throw NonFiniteState("endogenous backward pass diverged at t = " +
                           std::to_string(grid.time_at(k - 1)));
    }
  }
}

// Day count at which the epidemic under a constant co-state has died out
// (the first forward pass uses the terminal value, which gives the
// slowest decay of all iterates).
long scan_truncation_day(const ModelParams& mp, double eta_const, int spd,
                         long max_days) {
  const double h = 1.0 / spd;
  detail::Sir x{mp.s0(), mp.i0, 0.0};
  auto eps_fn = [&](double, double i) {
    return clamp01(1.0 + mp.beta * eta_const * i / mp.c);
  };
  for (long day = 0; day < max_days; ++day) {
    const double s_before = x.s;
    for (int k = 0; k < spd; ++k) {
      const double t = static_cast<double>(day) + static_cast<double>(k) / spd;
      x = detail::rk4_sir_step(t, x, h, mp.beta, mp.gamma, eps_fn);
    }
    detail::check_state(x, static_cast<double>(day + 1));
    if (x.i < kTruncI && (s_before - x.s) < kTruncDailyDs) {
      return day + 1;
    }
  }
  return max_days;
}

double joint_gap(const ForwardState& a, const ForwardState& b,
                 const std::vector<double>& eta_a,
                 const std::vector<double>& eta_b) {
  double gap = 0.0;
  for (std::size_t k = 0; k < eta_a.size(); ++k) {
    gap = std::max(gap, std::abs(a.s[k] - b.s[k]));
    gap = std::max(gap, std::abs(a.i[k] - b.i[k]));
    gap = std::max(gap, std::abs(a.r[k] - b.r[k]));
    gap = std::max(gap, std::abs(eta_a[k] - eta_b[k]));
  }
  return gap;
}

}  // namespace

double v_infected(const ModelParams& p) {
  return (p.pi_i + p.gamma / p.rho * p.pi_r) / (p.rho + p.gamma);
}

EtaBounds eta_bounds(const ModelParams& p) {
  const double premium0 = p.pi_s - p.rho * v_infected(p);
  if (!(premium0 - 0.5 * p.c > 0.0)) {
    throw AssumptionViolated(
        "severity assumption pi_S - c/2 > rho*V_I does not hold");
  }
  EtaBounds b;
  b.lo = -premium0 / p.rho;
  b.hi_tight = -(premium0 - 0.5 * p.c) / p.rho;
  b.hi_general = -(premium0 - 0.5 * p.c) / (p.rho + p.beta);
  return b;
}

double costate_rhs(double eta, double eps, double i, const ModelParams& p) {
  const double d = 1.0 - eps;
  return eta * (p.rho + eps * p.beta * i) +
         (p.pi_s - 0.5 * p.c * d * d - p.rho * v_infected(p));
}

EquilibriumSolution solve_equilibrium(const ModelParams& p,
                                      const SolverOptions& opts) {
  const EtaBounds bounds = eta_bounds(p);  // severity assumption checked here
  const double eta_term = bounds.lo;

  FineGrid grid;
  grid.spd = std::max(1, static_cast<int>(std::lround(1.0 / opts.step)));
  grid.h = 1.0 / grid.spd;
  const long horizon_days = static_cast<long>(std::ceil(opts.horizon));

  const long trunc = scan_truncation_day(p, eta_term, grid.spd, horizon_days);
  grid.n_days = std::min<long>(horizon_days,
                               static_cast<long>(std::ceil(1.25 * trunc)));

  std::vector<double> eta(grid.nodes(), eta_term);
  std::vector<double> eta_new;
  ForwardState fwd, fwd_prev;

  CostateTrajectory costate;
  double omega = opts.relaxation;
  int rising_streak = 0;
  double prev_gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;

  for (int attempt = 0; attempt < 4 && !converged; ++attempt) {
    for (; iter < opts.max_iter; ++iter) {
      run_forward(p, grid, eta, fwd);
      run_backward(p, grid, fwd, eta_term, eta_new);
      for (std::size_t k = 0; k < eta_new.size(); ++k) {
        eta_new[k] = (1.0 - omega) * eta[k] + omega * eta_new[k];
      }
      double gap;
      const bool joint =
          !fwd_prev.s.empty() && fwd_prev.s.size() == fwd.s.size();
      if (joint) {
        gap = joint_gap(fwd, fwd_prev, eta_new, eta);
      } else {
        // No predecessor trajectory yet: track the co-state change only.
        gap = 0.0;
        for (std::size_t k = 0; k < eta_new.size(); ++k) {
          gap = std::max(gap, std::abs(eta_new[k] - eta[k]));
        }
      }
      costate.log.push_back({iter + 1, gap, omega});
      eta.swap(eta_new);
      fwd_prev = fwd;

      if (joint && gap < opts.tol) {
        converged = true;
        costate.final_gap = gap;
        ++iter;
        break;
      }
      if (gap > prev_gap) {
        if (++rising_streak >= 2) {
          omega = std::max(0.125, 0.5 * omega);
          rising_streak = 0;
        }
      } else {
        rising_streak = 0;
      }
      prev_gap = gap;
    }
    if (!converged) break;

    // The grid must end in the settled regime; extend and resume if not.
    const std::size_t last = grid.nodes() - 1;
    const std::size_t day_before = last - static_cast<std::size_t>(grid.spd);
    const bool settled = fwd.i[last] < 10.0 * kTruncI &&
                         (fwd.s[day_before] - fwd.s[last]) < 10.0 * kTruncDailyDs;
    if (!settled && grid.n_days < horizon_days) {
      grid.n_days = std::min<long>(horizon_days, grid.n_days * 2);
      eta.resize(grid.nodes(), eta_term);
      fwd_prev = ForwardState{};
      prev_gap = std::numeric_limits<double>::infinity();
      converged = false;
    }
  }

  if (!converged) {
    std::ostringstream os;
    os << "no fixed point after " << iter << " iterations; gaps:";
    const std::size_t n_log = costate.log.size();
    for (std::size_t j = n_log > 6 ? n_log - 6 : 0; j < n_log; ++j) {
      os << " " << costate.log[j].gap;
    }
    throw NoConvergence(os.str());
  }

  // Final check: the unclamped exposure must already lie inside [0,1].
  run_forward(p, grid, eta, fwd);
  for (std::size_t k = 0; k < grid.nodes(); ++k) {
    const double raw = 1.0 + p.beta * eta[k] * fwd.i[k] / p.c;
    if (raw < -1e-9 || raw > 1.0 + 1e-9) {
      throw ExposureOutOfRange("unclamped exposure " + std::to_string(raw) +
                               " at t = " + std::to_string(grid.time_at(k)));
    }
  }

  EquilibriumSolution sol;
  sol.trajectory.params = p;
  sol.trajectory.step = grid.h;
  sol.trajectory.horizon = opts.horizon;
  costate.converged = true;
  costate.iterations = iter;
  costate.fine_step = grid.h;

  const std::size_t n_out = static_cast<std::size_t>(grid.n_days) + 1;
  sol.trajectory.states.reserve(n_out);
  costate.t.reserve(n_out);
  costate.eta.reserve(n_out);
  costate.eps.reserve(n_out);
  costate.p.reserve(n_out);
  for (long day = 0; day <= grid.n_days; ++day) {
    const std::size_t k = static_cast<std::size_t>(day) * grid.spd;
    const double t = static_cast<double>(day);
    sol.trajectory.states.push_back(
        {t, fwd.s[k], fwd.i[k], fwd.r[k], fwd.eps[k]});
    costate.t.push_back(t);
    costate.eta.push_back(eta[k]);
    costate.eps.push_back(fwd.eps[k]);
    costate.p.push_back(fwd.p[k]);
  }

  const std::size_t n_fine = grid.nodes();
  costate.fine_t.resize(n_fine);
  for (std::size_t k = 0; k < n_fine; ++k) costate.fine_t[k] = grid.time_at(k);
  costate.fine_s = std::move(fwd.s);
  costate.fine_i = std::move(fwd.i);
  costate.fine_eps = std::move(fwd.eps);
  costate.fine_eta = std::move(eta);
  sol.costate = std::move(costate);
  return sol;
}

std::vector<double> infection_probability(const EquilibriumSolution& sol) {
  const ModelParams& p = sol.trajectory.params;
  const double s0 = p.s0();
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.costate.p.size(); ++k) {
    const double lhs = 1.0 - sol.costate.p[k];
    const double rhs = sol.trajectory.states[k].s / s0;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  if (worst > 1e-6) {
    throw IdentityViolation("1 - p(t) vs S(t)/S0 differ by " +
                            std::to_string(worst));
  }
  return sol.costate.p;
}

double eta_integral_check(const EquilibriumSolution& sol,
                          const std::vector<double>& sample_times) {
  const ModelParams& p = sol.trajectory.params;
  const auto& ct = sol.costate;
  const std::size_t n = ct.fine_t.size();
  const double h = ct.fine_step;
  const double premium0 = p.pi_s - p.rho * v_infected(p);

  auto premium = [&](std::size_t k) {
    const double d = 1.0 - ct.fine_eps[k];
    return premium0 - 0.5 * p.c * d * d;
  };

  double worst = 0.0;
  for (double t_sample : sample_times) {
    std::size_t j = static_cast<std::size_t>(
        std::clamp(std::lround(t_sample / h), 0L, static_cast<long>(n - 1)));
    const double t_j = ct.fine_t[j];
    const double s_j = ct.fine_s[j];

    double integral = 0.0;
    double f_prev = premium(j);  // weight exp(0) * S_j/S_j
    for (std::size_t k = j + 1; k < n; ++k) {
      const double w =
          std::exp(-p.rho * (ct.fine_t[k] - t_j)) * ct.fine_s[k] / s_j;
      const double f_k = w * premium(k);
      integral += 0.5 * h * (f_prev + f_k);
      f_prev = f_k;
    }
    // Tail beyond the grid: exposure ~ 1 and S constant.
    const double tail = std::exp(-p.rho * (ct.fine_t[n - 1] - t_j)) *
                        (ct.fine_s[n - 1] / s_j) * premium0 / p.rho;
    const double eta_quad = -(integral + tail);
    const double eta_ode = ct.fine_eta[j];
    worst = std::max(worst,
                     std::abs(eta_quad - eta_ode) / std::abs(eta_ode));
  }
  return worst;
}

namespace {

// I at susceptible level s by linear interpolation along a trajectory
// (S is non-increasing in time).
double interp_i_of_s(const Trajectory& traj, double s) {
  const auto& st = traj.states;
  if (s >= st.front().s) return st.front().i;
  std::size_t lo = 0, hi = st.size() - 1;
  if (s <= st[hi].s) return st[hi].i;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (st[mid].s > s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double span = st[lo].s - st[hi].s;
  if (span <= 0.0) return st[lo].i;
  const double w = (st[lo].s - s) / span;
  return st[lo].i + w * (st[hi].i - st[lo].i);
}

}  // namespace

SandwichReport sandwich_check(const ModelParams& p,
                              const SolverOptions& opts) {
  const EtaBounds bounds = eta_bounds(p);
  SandwichReport rep;
  rep.eta_lo = bounds.lo;
  rep.eta_hi = bounds.hi_tight;

  const EquilibriumSolution endog = solve_equilibrium(p, opts);

  ModelParams p_low = p;
  p_low.eta = bounds.lo;
  ModelParams p_high = p;
  p_high.eta = bounds.hi_tight;
  const Trajectory low =
      constant_cost::integrate(p_low, opts.horizon, opts.step);
  const Trajectory high =
      constant_cost::integrate(p_high, opts.horizon, opts.step);

  const double s_floor = std::max(
      {low.back().s, high.back().s, endog.trajectory.back().s});
  const double s0 = p.s0();
  const int n_grid = 200;
  rep.s_grid.reserve(n_grid);
  rep.i_low.reserve(n_grid);
  rep.i_endog.reserve(n_grid);
  rep.i_high.reserve(n_grid);

  rep.max_violation = 0.0;
  double worst_s = s0;
  for (int j = 1; j <= n_grid; ++j) {
    const double s = s_floor + (s0 - s_floor) * j / (n_grid + 1);
    const double i_l = interp_i_of_s(low, s);
    const double i_e = interp_i_of_s(endog.trajectory, s);
    const double i_h = interp_i_of_s(high, s);
    rep.s_grid.push_back(s);
    rep.i_low.push_back(i_l);
    rep.i_endog.push_back(i_e);
    rep.i_high.push_back(i_h);
    const double breach = std::max(i_l - i_e, i_e - i_h);
    if (breach > rep.max_violation) {
      rep.max_violation = breach;
      worst_s = s;
    }
  }

  rep.peak_low = constant_cost::detect_peak(low).i_peak;
  rep.peak_endog = constant_cost::detect_peak(endog.trajectory).i_peak;
  rep.peak_high = constant_cost::detect_peak(high).i_peak;

  rep.ordered = rep.max_violation <= 1e-6 &&
                rep.peak_low <= rep.peak_endog + 1e-6 &&
                rep.peak_endog <= rep.peak_high + 1e-6;
  if (!rep.ordered) {
    throw SandwichViolation("ordering breached by " +
                            std::to_string(rep.max_violation) + " at S = " +
                            std::to_string(worst_s));
  }
  return rep;
}

}  // namespace epibehave::endogenous
