#include "epibehave/onset.hpp"

#include <algorithm>
#include <cmath>

#include "epibehave/constant_cost.hpp"
#include "epibehave/errors.hpp"

namespace epibehave::onset {

double behavioral_r0(const ModelParams& p) {
  return p.beta / p.gamma * p.s0() * constant_cost::exposure(p.i0, p);
}

OnsetInterval onset_beta_interval(const ModelParams& p) {
  if (!(p.eta < 0.0)) {
    throw DomainError("onset_beta_interval requires eta < 0");
  }
  OnsetInterval out;
  out.i0_threshold = 1.0 / (1.0 - 4.0 * p.eta * p.gamma / p.c);

  // At I0 exactly on the threshold the discriminant is zero in exact
  // arithmetic; anything within 1e-14 of zero is float noise at the
  // tangency and yields no takeoff window.
  const double disc = 1.0 + 4.0 * p.eta * p.gamma * p.i0 / (p.c * p.s0());
  if (disc <= 1e-14) {
    out.tangency = std::abs(disc) <= 1e-14;
    return out;
  }
  const double root = std::sqrt(disc);
  out.empty = false;
  // Smaller root written division-free in (1 - sqrt) to avoid cancellation.
  out.beta_lo = 2.0 * p.gamma / (p.s0() * (1.0 + root));
  out.beta_hi = -p.c / (2.0 * p.eta * p.i0) * (1.0 + root);
  return out;
}

SeverityFrontier severity_frontier(const ModelParams& p,
                                   const std::vector<double>& beta_grid) {
  SeverityFrontier out;
  out.neg_eta_ceiling = p.c / (4.0 * p.gamma) * p.s0() / p.i0;
  out.points.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    // dI/dt(0) = 0: beta*(1 + eta*beta*I0/c)*S0 = gamma, linear in eta.
    const double neg_eta =
        std::max(0.0, (1.0 - p.gamma / (beta * p.s0())) * p.c / (beta * p.i0));
    out.points.push_back({beta, neg_eta});
  }
  return out;
}

double c_threshold(const ModelParams& p) {
  const double margin = p.beta * p.s0() - p.gamma;
  if (p.eta == 0.0) {
    if (margin <= 0.0) throw NoThreshold("beta*(1-I0) <= gamma");
    return 0.0;
  }
  if (margin <= 0.0) {
    throw NoThreshold("beta*(1-I0) <= gamma: no distancing cost starts it");
  }
  return -p.eta * p.beta * p.beta * p.i0 * p.s0() / margin;
}

}  // namespace epibehave::onset
