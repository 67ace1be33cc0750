#ifndef EPIBEHAVE_ONSET_HPP
#define EPIBEHAVE_ONSET_HPP

#include <vector>

#include "epibehave/model.hpp"

namespace epibehave::onset {

// (beta/gamma) * S0 * max(1 + eta*beta*I0/c, 0). Takeoff criterion is
// behavioral_r0 > 1; concave in beta while the clamp is slack.
double behavioral_r0(const ModelParams& p);

// Transmission-rate window (beta_lo, beta_hi) with dI/dt(0) > 0, from the
// quadratic beta*(1 + eta*I0*beta/c)*(1-I0) = gamma. Empty when
// I0 >= 1/(1 - 4*eta*gamma/c); a discriminant within [-1e-14, 0) is
// float noise at tangency and flagged as such.
struct OnsetInterval {
  bool empty = true;
  bool tangency = false;
  double beta_lo = 0.0;
  double beta_hi = 0.0;
  double i0_threshold = 0.0;  // 1/(1 - 4*eta*gamma/c)

  bool contains(double beta) const {
    return !empty && beta > beta_lo && beta < beta_hi;
  }
};

OnsetInterval onset_beta_interval(const ModelParams& p);  // requires eta < 0

struct FrontierPoint {
  double beta;
  double neg_eta;  // infection cost with dI/dt(0) = 0 at this beta; 0 when
                   // no positive cost is required (beta*S0 <= gamma)
};

struct SeverityFrontier {
  std::vector<FrontierPoint> points;
  double neg_eta_ceiling;  // (c/(4*gamma)) * (S0/I0); above it no beta takes off
};

SeverityFrontier severity_frontier(const ModelParams& p,
                                   const std::vector<double>& beta_grid);

// Distancing-cost threshold: dI/dt(0) > 0 iff c exceeds
// -eta*beta^2*I0*(1-I0) / (beta*(1-I0) - gamma). Throws NoThreshold when
// beta*(1-I0) <= gamma (no c makes the epidemic start).
double c_threshold(const ModelParams& p);

}  // namespace epibehave::onset

#endif
