#ifndef EPIBEHAVE_PHASE_HPP
#define EPIBEHAVE_PHASE_HPP

#include <string>
#include <vector>

#include "epibehave/model.hpp"

namespace epibehave::phase {

struct PhasePoint {
  double s, i;
};

// Susceptible share of the implicit solution path through (S0, I0),
// parameterized by the sum x = S + I (strictly decreasing along the path).
// Requires eta < 0 and interior initial exposure. Evaluated in scaled
// form; the raw exponentials underflow at realistic infection costs.
double path_s_of_sum(double x, const ModelParams& p);

// (path value at S+I minus S) / S; zero iff the point lies on the
// solution path through (S0, I0). Throws DomainError when the exposure
// at the point (or initially) is clamped at zero.
double phase_residual(const PhasePoint& pt, const ModelParams& p);

// dI/dS = -1 + (gamma/beta) / (S * eps(I)). Throws DivisionByZero at
// eps(I) = 0.
double quotient_slope(const PhasePoint& pt, const ModelParams& p);

struct SlopeDerivatives {
  double d_beta;  // -(gamma/(beta^2 S)) * (1 + 2 q I) / (1 + q I)^2, q = beta*eta/c
  double d_c;     //  gamma*eta*I / (c^2 S (1 + q I)^2)
};

// Closed-form parameter derivatives of the quotient slope at a fixed point.
SlopeDerivatives slope_param_derivatives(const PhasePoint& pt,
                                         const ModelParams& p);

struct PhasePeak {
  double s, i;
};

// Peak of the epidemic from the implicit path: solves the system
// S = (gamma/beta)/eps(I) (stationarity of I) together with the path
// equation, by bracketed bisection in I. Throws NoPeak when beta lies
// outside the onset interval.
PhasePeak peak_from_phase(const ModelParams& p);

// Limiting susceptible share: root of path(x) = x on (0, gamma/beta).
double final_size(const ModelParams& p);

// Infected share where the path crosses susceptible level s. Requires
// s between the final size and S0.
double path_i_of_s(const ModelParams& p, double s);

enum class SweepParam { Beta, C, Eta, I0 };

const char* sweep_param_name(SweepParam param);

struct SweepRow {
  double value = 0.0;
  double i_peak = 0.0;
  double s_peak = 0.0;
  double s_inf = 0.0;
  bool took_off = false;
  std::string error;  // per-row capture; sweep continues
};

struct SweepTable {
  SweepParam param = SweepParam::Beta;
  std::vector<SweepRow> rows;
};

// One row per grid value; rows evaluated concurrently (threads = 0 picks
// EPIBEHAVE_THREADS or the hardware count), assembled in grid order.
SweepTable peak_sweep(const ModelParams& p, SweepParam param,
                      const std::vector<double>& grid, int threads = 0);
SweepTable final_size_sweep(const ModelParams& p, SweepParam param,
                            const std::vector<double>& grid, int threads = 0);
// Both outcomes per row, one pass.
SweepTable full_sweep(const ModelParams& p, SweepParam param,
                      const std::vector<double>& grid, int threads = 0);

struct PathComparison {
  std::vector<double> s_grid;
  std::vector<double> i_a, i_b;
  bool a_below_b = false;    // I_a(S) <= I_b(S) everywhere (1e-12 slack)
  double max_excess = 0.0;   // max of I_a - I_b over the grid
};

// Pointwise ordering of two solution paths on a shared S grid. Either
// parameter set may have eta = 0 (closed-form standard path).
PathComparison path_comparison(const ModelParams& a, const ModelParams& b,
                               const std::vector<double>& s_grid);

}  // namespace epibehave::phase

#endif
