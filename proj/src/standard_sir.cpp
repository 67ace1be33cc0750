#include "epibehave/standard_sir.hpp"

#include <algorithm>
#include <cmath>

#include "epibehave/errors.hpp"
#include "rk4_detail.hpp"
#include "root_detail.hpp"

namespace epibehave::standard_sir {

Trajectory integrate_standard(const ModelParams& p, double horizon,
                              double step) {
  return detail::integrate_daily(
      p, [](double, double) { return 1.0; }, horizon, step, 1e-12, 1e-14);
}

double standard_peak(const ModelParams& p) {
  const double ratio = p.gamma / p.beta;
  if (!(p.beta * p.s0() > p.gamma)) {
    throw NoTakeoff("standard_peak requires beta*S0 > gamma");
  }
  return 1.0 - ratio + ratio * std::log(ratio / p.s0());
}

double standard_final_size(const ModelParams& p) {
  const double ratio = p.gamma / p.beta;
  const double s0 = p.s0();
  auto f = [&](double x) { return 1.0 - x - ratio * std::log(s0 / x); };
  // Half the guaranteed lower bound S0*exp(-beta/gamma); the 1e-290 floor
  // only matters once the root itself would be subnormal.
  const double lo = std::max(1e-290, 0.5 * s0 * std::exp(-p.beta / p.gamma));
  const double hi = ratio - 1e-12;
  return detail::bisect(f, lo, hi, 1e-12, "standard_final_size");
}

double path_i_of_s(const ModelParams& p, double s) {
  return 1.0 - s + p.gamma / p.beta * std::log(s / p.s0());
}

}  // namespace epibehave::standard_sir
