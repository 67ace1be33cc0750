#include "epibehave/constant_cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epibehave/errors.hpp"
#include "rk4_detail.hpp"

namespace epibehave::constant_cost {

double exposure(double i, const ModelParams& p) {
  const double e = 1.0 + p.eta * p.beta * i / p.c;
  return std::clamp(e, 0.0, 1.0);
}

Derivatives rhs(const EpidemicState& state, const ModelParams& p) {
  const double infections =
      p.beta * exposure(state.i, p) * state.s * state.i;
  const double recoveries = p.gamma * state.i;
  return {-infections, infections - recoveries, recoveries};
}

Trajectory integrate(const ModelParams& p, double horizon, double step) {
  return detail::integrate_daily(
      p, [&p](double, double i) { return exposure(i, p); }, horizon, step,
      1e-12, 1e-14);
}

namespace {

// Vertex of the parabola through (-1,ym), (0,y0), (1,yp); offset in grid
// units, clamped to the bracketing cell.
double parabola_offset(double ym, double y0, double yp) {
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return 0.0;
  return std::clamp(0.5 * (ym - yp) / denom, -1.0, 1.0);
}

double parabola_value(double ym, double y0, double yp, double x) {
  return y0 + 0.5 * x * (yp - ym) + 0.5 * x * x * (ym - 2.0 * y0 + yp);
}

}  // namespace

PeakInfo detect_peak(const Trajectory& traj) {
  if (traj.states.empty()) throw DomainError("detect_peak: empty trajectory");
  const ModelParams& p = traj.params;
  const auto& st = traj.states;

  // Initial growth from the stored exposure, so that trajectories from
  // other exposure rules (the endogenous model) are classified by their
  // own dynamics.
  const auto& first = st.front();
  const bool took_off =
      p.beta * first.eps * first.s * first.i - p.gamma * first.i > 0.0;

  std::size_t peak_idx = 0;
  int interior_maxima = 0;
  for (std::size_t k = 1; k + 1 < st.size(); ++k) {
    if (st[k].i > st[k - 1].i && st[k].i > st[k + 1].i) {
      ++interior_maxima;
      peak_idx = k;
    }
  }
  if (interior_maxima > 1) {
    throw MultiplePeaks("found " + std::to_string(interior_maxima) +
                        " strict local maxima of I");
  }
  if (!took_off) {
    if (interior_maxima > 0) {
      throw MultiplePeaks("interior maximum despite dI/dt(0) <= 0");
    }
    return {0.0, st.front().s, st.front().i, false};
  }
  if (interior_maxima == 0) {
    // I still rising at the end of the grid; report the boundary maximum.
    const auto& last = st.back();
    return {last.t, last.s, last.i, true};
  }

  const double im = st[peak_idx - 1].i;
  const double i0 = st[peak_idx].i;
  const double ip = st[peak_idx + 1].i;
  const double dt = st[peak_idx + 1].t - st[peak_idx].t;
  const double off = parabola_offset(im, i0, ip);
  const double i_peak = parabola_value(im, i0, ip, off);
  const double s_peak = parabola_value(st[peak_idx - 1].s, st[peak_idx].s,
                                       st[peak_idx + 1].s, off);
  return {st[peak_idx].t + off * dt, s_peak, i_peak, true};
}

ReproductionNumbers reproduction_numbers(const Trajectory& traj) {
  const ModelParams& p = traj.params;
  ReproductionNumbers out;
  out.r0 = p.beta * p.s0() / p.gamma;
  out.r0b = out.r0 * exposure(p.i0, p);
  out.rt_b.reserve(traj.size());
  for (const auto& st : traj.states) {
    out.rt_b.push_back(p.beta / p.gamma * st.s * st.eps);
  }
  return out;
}

}  // namespace epibehave::constant_cost
