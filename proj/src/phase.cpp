#include "epibehave/phase.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "epibehave/constant_cost.hpp"
#include "epibehave/errors.hpp"
#include "epibehave/onset.hpp"
#include "epibehave/special_functions.hpp"
#include "epibehave/standard_sir.hpp"
#include "root_detail.hpp"

namespace epibehave::phase {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Precomputed pieces of the implicit path equation. With
// k = beta*sqrt(-eta/(2*gamma*c)) and m = c/(beta*eta) < 0, the equation
// reads S = exp(-v(x)^2) / (exp(-v(1)^2)/S0 + 2k * int_{v(x)}^{v(1)} e^{-w^2} dw)
// where v(y) = k*(y + m) and x = S + I.
struct PathKernel {
  double k;
  double m;
  double s0;

  double v(double x) const { return k * (x + m); }
};

PathKernel make_kernel(const ModelParams& p) {
  if (!(p.eta < 0.0)) {
    throw DomainError("phase path requires eta < 0");
  }
  if (!(constant_cost::exposure(p.i0, p) > 0.0)) {
    throw DomainError("phase path requires interior initial exposure");
  }
  PathKernel kern;
  kern.k = p.beta * std::sqrt(-p.eta / (2.0 * p.gamma * p.c));
  kern.m = p.c / (p.beta * p.eta);
  kern.s0 = p.s0();
  return kern;
}

// Path S at sum coordinate x, evaluated in scaled form: all exponentials
// carry differences of squares only. The raw exponents v^2 reach ~950 at
// the baseline infection cost, far past double range.
double eval_path(const PathKernel& kern, double x) {
  const double t = kern.v(x);
  const double u = kern.v(1.0);
  const double k = kern.k;
  if (t > u) {
    throw DomainError("phase path evaluated at S+I > 1");
  }
  if (t >= 0.0) {
    const double damp = std::exp(-(u - t) * (u + t));  // exp(t^2 - u^2) <= 1
    const double denom =
        damp / kern.s0 + k * kSqrtPi * (erfcx(t) - damp * erfcx(u));
    return 1.0 / denom;
  }
  if (u <= 0.0) {
    const double damp = std::exp(-(t - u) * (t + u));  // exp(u^2 - t^2) <= 1
    const double denom =
        1.0 / kern.s0 + k * kSqrtPi * (erfcx(-u) - damp * erfcx(-t));
    return damp / denom;
  }
  // t < 0 < u: the integral spans the origin, no cancellation anywhere.
  const double denom =
      std::exp(-u * u) / kern.s0 + 2.0 * k * erf_integral(t, u);
  return std::exp(-t * t) / denom;
}

int resolve_threads(int requested, std::size_t rows) {
  if (requested <= 0) {
    if (const char* env = std::getenv("EPIBEHAVE_THREADS")) {
      requested = std::atoi(env);
    }
  }
  if (requested <= 0) {
    requested = static_cast<int>(std::thread::hardware_concurrency());
    if (requested <= 0) requested = 1;
  }
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(requested), rows));
}

ModelParams with_param(const ModelParams& base, SweepParam param,
                       double value) {
  ModelParams p = base;
  switch (param) {
    case SweepParam::Beta: p.beta = value; break;
    case SweepParam::C: p.c = value; break;
    case SweepParam::Eta: p.eta = value; break;
    case SweepParam::I0: p.i0 = value; break;
  }
  return p;
}

bool takes_off(const ModelParams& p) {
  return p.beta * constant_cost::exposure(p.i0, p) * p.s0() - p.gamma > 0.0;
}

void fill_peak(SweepRow& row, const ModelParams& p) {
  if (!row.took_off) {
    row.i_peak = p.i0;
    row.s_peak = p.s0();
    return;
  }
  if (p.eta == 0.0) {
    row.i_peak = standard_sir::standard_peak(p);
    row.s_peak = p.gamma / p.beta;
    return;
  }
  const PhasePeak peak = peak_from_phase(p);
  row.i_peak = peak.i;
  row.s_peak = peak.s;
}

void fill_final_size(SweepRow& row, const ModelParams& p) {
  row.s_inf =
      p.eta == 0.0 ? standard_sir::standard_final_size(p) : final_size(p);
}

SweepTable run_sweep(const ModelParams& base, SweepParam param,
                     const std::vector<double>& grid, int threads,
                     bool want_peak, bool want_final) {
  if (grid.size() < 2) {
    throw DomainError("sweep grid needs at least 2 points");
  }
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw DomainError("sweep grid must be strictly increasing");
    }
  }
  SweepTable table;
  table.param = param;
  table.rows.resize(grid.size());

  const int n_workers = resolve_threads(threads, grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= grid.size()) return;
      SweepRow& row = table.rows[idx];
      row.value = grid[idx];
      row.i_peak = row.s_peak = row.s_inf =
          std::numeric_limits<double>::quiet_NaN();
      const ModelParams p = with_param(base, param, grid[idx]);
      try {
        const ValidationReport report = validate(p);
        if (!report.ok()) {
          throw DomainError(report.to_string());
        }
        row.took_off = takes_off(p);
        if (want_peak) fill_peak(row, p);
        if (want_final) fill_final_size(row, p);
      } catch (const SimulationError& e) {
        row.error = e.what();
      }
    }
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return table;
}

}  // namespace

double path_s_of_sum(double x, const ModelParams& p) {
  return eval_path(make_kernel(p), x);
}

double phase_residual(const PhasePoint& pt, const ModelParams& p) {
  if (!(constant_cost::exposure(pt.i, p) > 0.0)) {
    throw DomainError("phase_residual: exposure clamped at zero");
  }
  const double implied = path_s_of_sum(pt.s + pt.i, p);
  return (implied - pt.s) / pt.s;
}

double quotient_slope(const PhasePoint& pt, const ModelParams& p) {
  const double eps = constant_cost::exposure(pt.i, p);
  if (eps == 0.0) {
    throw DivisionByZero("quotient_slope: exposure is zero");
  }
  return -1.0 + p.gamma / (p.beta * pt.s * eps);
}

SlopeDerivatives slope_param_derivatives(const PhasePoint& pt,
                                         const ModelParams& p) {
  const double q = p.beta * p.eta / p.c;
  const double e = 1.0 + q * pt.i;
  SlopeDerivatives d;
  d.d_beta =
      -p.gamma / (p.beta * p.beta * pt.s) * (1.0 + 2.0 * q * pt.i) / (e * e);
  d.d_c = p.gamma * p.eta * pt.i / (p.c * p.c * pt.s * e * e);
  return d;
}

PhasePeak peak_from_phase(const ModelParams& p) {
  const onset::OnsetInterval window = onset::onset_beta_interval(p);
  if (!window.contains(p.beta)) {
    throw NoPeak("beta outside the onset interval");
  }
  const PathKernel kern = make_kernel(p);
  const double q = -p.beta * p.eta / p.c;  // > 0; exposure = 1 - q*I
  const double ratio = p.gamma / p.beta;

  auto s_star = [&](double i) { return ratio / (1.0 - q * i); };
  // path(S*(I)+I) - S*(I): negative below the peak, slope +1 at the root.
  // Beyond the point where the stationarity locus leaves S+I <= 1 the
  // path equation no longer applies; treat that side as positive.
  auto f = [&](double i) {
    const double x = s_star(i) + i;
    if (x > 1.0) return std::numeric_limits<double>::infinity();
    return eval_path(kern, x) - s_star(i);
  };

  // The stationarity locus meets S+I = 1 at the smaller root of
  // q I^2 - (1+q) I + (1 - gamma/beta) = 0; the peak lies strictly below.
  const double half_b = 0.5 * (1.0 + q);
  const double disc = half_b * half_b - q * (1.0 - ratio);
  double hi = disc > 0.0 ? (1.0 - ratio) / (half_b + std::sqrt(disc))
                         : 1.0 - ratio * 1e-3;
  hi = std::min({hi * (1.0 + 1e-12), 1.0 - ratio * 1e-3, (1.0 - 1e-9) / q});
  double lo = p.i0 * (1.0 + 1e-9);

  double flo = f(lo);
  double fhi = f(hi);
  if ((flo > 0.0) == (fhi > 0.0)) {
    // Scan the bracket interior for the sign change.
    bool found = false;
    double prev = lo, fprev = flo;
    for (int j = 1; j <= 256 && !found; ++j) {
      const double cand = lo + (hi - lo) * j / 256.0;
      const double fcand = f(cand);
      if ((fcand > 0.0) != (fprev > 0.0)) {
        lo = prev;
        hi = cand;
        found = true;
      }
      prev = cand;
      fprev = fcand;
    }
    if (!found) throw NoPeak("could not bracket the phase-space peak");
  }

  const double i_peak = detail::bisect(f, lo, hi, 1e-13, "peak_from_phase");
  return {s_star(i_peak), i_peak};
}

double final_size(const ModelParams& p) {
  const PathKernel kern = make_kernel(p);
  const double ratio = p.gamma / p.beta;
  auto f = [&](double x) { return eval_path(kern, x) - x; };

  // Scan downward from gamma/beta for the first sign change: the final
  // size is the largest root below the herd-immunity threshold.
  const double hi0 = std::min(ratio, 1.0) * (1.0 - 1e-12);
  double hi = hi0;
  double fhi = f(hi);
  if (fhi > 0.0) {
    throw BracketFailure("final_size: path above S at the herd threshold");
  }
  const int n_scan = 64;
  double lo = hi;
  double flo = fhi;
  for (int j = 1; j <= n_scan; ++j) {
    lo = hi0 * (1.0 - static_cast<double>(j) / n_scan) + 1e-14;
    flo = f(lo);
    if (flo > 0.0) break;
    hi = lo;
    fhi = flo;
  }
  if (flo <= 0.0) {
    throw BracketFailure("final_size: no sign change on (0, gamma/beta)");
  }
  return detail::bisect(f, lo, hi, 1e-12, "final_size");
}

double path_i_of_s(const ModelParams& p, double s) {
  if (p.eta == 0.0) return standard_sir::path_i_of_s(p, s);
  const PathKernel kern = make_kernel(p);
  if (!(s > 0.0 && s <= kern.s0)) {
    throw DomainError("path_i_of_s: s outside (0, S0]");
  }
  auto f = [&](double x) { return eval_path(kern, x) - s; };
  const double x = detail::bisect(f, s, 1.0, 1e-13, "path_i_of_s");
  return x - s;
}

const char* sweep_param_name(SweepParam param) {
  switch (param) {
    case SweepParam::Beta: return "beta";
    case SweepParam::C: return "c";
    case SweepParam::Eta: return "eta";
    case SweepParam::I0: return "i0";
  }
  return "?";
}

SweepTable peak_sweep(const ModelParams& p, SweepParam param,
                      const std::vector<double>& grid, int threads) {
  return run_sweep(p, param, grid, threads, true, false);
}

SweepTable final_size_sweep(const ModelParams& p, SweepParam param,
                            const std::vector<double>& grid, int threads) {
  return run_sweep(p, param, grid, threads, false, true);
}

SweepTable full_sweep(const ModelParams& p, SweepParam param,
                      const std::vector<double>& grid, int threads) {
  return run_sweep(p, param, grid, threads, true, true);
}

PathComparison path_comparison(const ModelParams& a, const ModelParams& b,
                               const std::vector<double>& s_grid) {
  PathComparison cmp;
  cmp.s_grid = s_grid;
  cmp.i_a.reserve(s_grid.size());
  cmp.i_b.reserve(s_grid.size());
  cmp.max_excess = -std::numeric_limits<double>::infinity();
  for (double s : s_grid) {
    const double ia = path_i_of_s(a, s);
    const double ib = path_i_of_s(b, s);
    cmp.i_a.push_back(ia);
    cmp.i_b.push_back(ib);
    cmp.max_excess = std::max(cmp.max_excess, ia - ib);
  }
  cmp.a_below_b = cmp.max_excess <= 1e-12;
  return cmp;
}

}  // namespace epibehave::phase
