#include <doctest.h>

#include <cmath>
#include <random>

#include "epibehave/constant_cost.hpp"
#include "epibehave/errors.hpp"
#include "epibehave/onset.hpp"
#include "epibehave/phase.hpp"
#include "epibehave/standard_sir.hpp"
#include "oracles.hpp"

using namespace epibehave;
using namespace epibehave::phase;

namespace {

ModelParams baseline() { return baseline_params(); }

// Direct, unscaled evaluation of the implicit path equation. Only valid
// while the exponents stay small; used as an independent oracle for the
// scaled production evaluator.
double path_direct(double x, const ModelParams& p) {
  const double k = p.beta * std::sqrt(-p.eta / (2.0 * p.gamma * p.c));
  const double m = p.c / (p.beta * p.eta);
  const double t = k * (x + m);
  const double u = k * (1.0 + m);
  const double numer = std::exp(-t * t);
  const double denom = std::exp(-u * u) / p.s0() +
                       2.0 * k * 0.5 * std::sqrt(M_PI) *
                           (std::erf(u) - std::erf(t));
  return numer / denom;
}

}  // namespace

TEST_CASE("scaled path evaluation matches the direct formula") {
  // Mild infection cost keeps the raw exponentials representable.
  ModelParams p = baseline();
  p.eta = -5.0;
  for (double x : {0.05, 0.2, 0.45, 0.7, 0.9, 0.999, 1.0}) {
    CHECK(path_s_of_sum(x, p) ==
          doctest::Approx(path_direct(x, p)).epsilon(1e-12));
  }
  // At eta = -40 the direct route already loses ~5 digits to erf
  // cancellation near x = 1; the scaled evaluator does not.
  p.eta = -40.0;
  for (double x : {0.1, 0.5, 0.95}) {
    CHECK(path_s_of_sum(x, p) ==
          doctest::Approx(path_direct(x, p)).epsilon(1e-10));
  }
}

TEST_CASE("phase residual") {
  const ModelParams p = baseline();

  SUBCASE("initial point lies on its own path") {
    CHECK(std::abs(phase_residual({p.s0(), p.i0}, p)) < 1e-14);
  }

  SUBCASE("off-path points are flagged") {
    // The interior-exposure strip is only ~1.6e-3 wide in I at the
    // baseline cost, so the farthest admissible off-path points sit near
    // the clamp prevalence where the true path carries almost no
    // infections.
    CHECK(std::abs(phase_residual({0.32, 1.55e-3}, p)) > 1e-3);
    CHECK(std::abs(phase_residual({0.5, 1.5e-3}, p)) > 1e-3);
  }

  SUBCASE("clamped exposure is out of the formula's domain") {
    const double i_clamp = p.c / (-p.eta * p.beta);
    CHECK_THROWS_AS(phase_residual({0.5, i_clamp * 1.01}, p), DomainError);
  }

  SUBCASE("requires a negative infection cost") {
    ModelParams q = p;
    q.eta = 0.0;
    CHECK_THROWS_AS(phase_residual({0.9, 0.01}, q), DomainError);
  }
}

TEST_CASE("quotient slope") {
  ModelParams p = baseline();

  SUBCASE("standard peak condition") {
    ModelParams q = p;
    q.eta = 0.0;
    CHECK(quotient_slope({q.gamma / q.beta, 0.05}, q) ==
          doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("vanishes at the behavioral peak") {
    const PhasePeak peak = peak_from_phase(p);
    CHECK(std::abs(quotient_slope({peak.s, peak.i}, p)) < 1e-8);
  }

  SUBCASE("division by zero at full distancing") {
    const double i_clamp = p.c / (-p.eta * p.beta);
    CHECK_THROWS_AS(quotient_slope({0.5, i_clamp * 1.01}, p), DivisionByZero);
  }

  SUBCASE("cheaper distancing flattens the slope in c") {
    const PhasePoint pt{0.9, 5e-4};
    auto slope_of_c = [&](double c) {
      ModelParams q = p;
      q.c = c;
      return quotient_slope(pt, q);
    };
    const double fd = test::central_difference(slope_of_c, p.c, 1e-6 * p.c);
    CHECK(fd < 0.0);
  }
}

TEST_CASE("slope parameter derivatives") {
  const ModelParams p = baseline();

  SUBCASE("sign of the beta derivative flips at I = -c/(2 beta eta)") {
    const double i_flip = -p.c / (2.0 * p.beta * p.eta);
    const PhasePoint below{0.9, i_flip * 0.9};
    const PhasePoint above{0.9, i_flip * 1.1};
    CHECK(slope_param_derivatives(below, p).d_beta < 0.0);
    CHECK(slope_param_derivatives(above, p).d_beta > 0.0);
  }

  SUBCASE("matches central finite differences") {
    std::mt19937 rng(20240702);
    std::uniform_real_distribution<double> s_draw(0.25, 0.999);
    std::uniform_real_distribution<double> i_frac(0.01, 0.9);
    for (int k = 0; k < 20; ++k) {
      const double s = s_draw(rng);
      const double i = i_frac(rng) * p.c / (-p.eta * p.beta);
      const PhasePoint pt{s, i};
      const auto grad = slope_param_derivatives(pt, p);

      auto of_beta = [&](double b) {
        ModelParams q = p;
        q.beta = b;
        return quotient_slope(pt, q);
      };
      auto of_c = [&](double c) {
        ModelParams q = p;
        q.c = c;
        return quotient_slope(pt, q);
      };
      const double fd_beta =
          test::central_difference(of_beta, p.beta, 1e-6 * p.beta);
      const double fd_c = test::central_difference(of_c, p.c, 1e-6 * p.c);
      CHECK(grad.d_beta == doctest::Approx(fd_beta).epsilon(1e-6));
      CHECK(grad.d_c == doctest::Approx(fd_c).epsilon(1e-6));
    }
  }

  SUBCASE("standard SIR limit") {
    ModelParams q = p;
    q.eta = 0.0;
    const PhasePoint pt{0.6, 0.1};
    const auto grad = slope_param_derivatives(pt, q);
    CHECK(grad.d_beta ==
          doctest::Approx(-q.gamma / (q.beta * q.beta * pt.s)).epsilon(1e-14));
    CHECK(grad.d_c == 0.0);
  }
}

TEST_CASE("peak from the implicit path") {
  const ModelParams p = baseline();

  SUBCASE("agrees with the integrated peak") {
    const PhasePeak peak = peak_from_phase(p);
    const auto dyn =
        constant_cost::detect_peak(constant_cost::integrate(p, 2000.0, 0.05));
    CHECK(peak.i == doctest::Approx(dyn.i_peak).epsilon(1e-5));
    CHECK(peak.s == doctest::Approx(dyn.s_peak).epsilon(1e-4));
  }

  SUBCASE("susceptibles at the peak exceed the herd threshold") {
    const PhasePeak peak = peak_from_phase(p);
    CHECK(peak.s > p.gamma / p.beta);
  }

  SUBCASE("vanishing infection cost recovers the standard peak") {
    ModelParams q = p;
    q.eta = -1e-6;
    const PhasePeak peak = peak_from_phase(q);
    q.eta = 0.0;
    CHECK(peak.i ==
          doctest::Approx(standard_sir::standard_peak(q)).epsilon(1e-4));
  }

  SUBCASE("no peak outside the onset window") {
    ModelParams q = p;
    q.beta = 7.6;  // above beta_hi
    CHECK_THROWS_AS(peak_from_phase(q), NoPeak);
    q.beta = 0.14;  // below beta_lo
    CHECK_THROWS_AS(peak_from_phase(q), NoPeak);
  }
}

TEST_CASE("final size from the implicit path") {
  const ModelParams p = baseline();
  const double s_inf = final_size(p);

  SUBCASE("inequality chain at baseline") {
    const double s_hat = standard_sir::standard_final_size(p);
    CHECK(p.s0() * std::exp(-p.beta / p.gamma) <= s_hat);
    CHECK(s_hat <= s_inf);
    CHECK(s_inf < p.gamma / p.beta);
  }

  SUBCASE("matches the long-run dynamics") {
    const Trajectory traj = constant_cost::integrate(p);
    CHECK(traj.back().s == doctest::Approx(s_inf).epsilon(1e-4));
  }

  SUBCASE("vanishing infection cost recovers the standard final size") {
    ModelParams q = p;
    q.eta = -1e-8;
    CHECK(final_size(q) ==
          doctest::Approx(standard_sir::standard_final_size(q))
              .epsilon(1e-6));
  }

  SUBCASE("slow burn above the takeoff window") {
    // Infections never exceed the seed, yet heavy distancing only delays
    // the depletion of susceptibles: S still ends below gamma/beta.
    ModelParams q = p;
    q.beta = 7.5;
    const Trajectory traj = constant_cost::integrate(q);
    const auto peak = constant_cost::detect_peak(traj);
    CHECK_FALSE(peak.took_off);
    CHECK(peak.i_peak == q.i0);
    const double s_end = final_size(q);
    CHECK(s_end < q.gamma / q.beta);
    CHECK(traj.back().s == doctest::Approx(s_end).epsilon(1e-4));
    CHECK(traj.back().t > 50000.0);
  }
}

TEST_CASE("comparative statics sweeps") {
  const ModelParams p = baseline();
  const auto window = onset::onset_beta_interval(p);

  SUBCASE("peak rises then falls across the onset window") {
    std::vector<double> grid;
    const int n = 48;
    for (int k = 0; k < n; ++k) {
      const double w = static_cast<double>(k) / (n - 1);
      grid.push_back(window.beta_lo * 1.02 *
                     std::pow(window.beta_hi * 0.98 / (window.beta_lo * 1.02),
                              w));
    }
    const SweepTable table = peak_sweep(p, SweepParam::Beta, grid);
    REQUIRE(table.rows.size() == grid.size());
    for (const auto& row : table.rows) CHECK(row.error.empty());

    std::size_t argmax = 0;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      if (table.rows[k].i_peak > table.rows[argmax].i_peak) argmax = k;
    }
    CHECK(argmax > 0);
    CHECK(argmax + 1 < table.rows.size());
    // Strictly decreasing on [-c/(2 eta I0), beta_hi), per the proof.
    const double beta_step1 = -p.c / (2.0 * p.eta * p.i0);
    for (std::size_t k = 0; k + 1 < table.rows.size(); ++k) {
      if (grid[k] >= beta_step1) {
        CHECK(table.rows[k + 1].i_peak < table.rows[k].i_peak);
      }
    }
    // Rising prefix near beta_lo.
    CHECK(table.rows[1].i_peak > table.rows[0].i_peak);
    CHECK(table.rows[2].i_peak > table.rows[1].i_peak);
  }

  SUBCASE("peak increases with the distancing cost") {
    const double c_lo = onset::c_threshold(p);
    std::vector<double> grid;
    for (int k = 0; k < 16; ++k) {
      grid.push_back(c_lo * 1.05 * std::pow(20.0, k / 15.0));
    }
    const SweepTable table = peak_sweep(p, SweepParam::C, grid);
    for (std::size_t k = 0; k + 1 < table.rows.size(); ++k) {
      CHECK(table.rows[k].error.empty());
      CHECK(table.rows[k + 1].i_peak > table.rows[k].i_peak);
    }
  }

  SUBCASE("no-behavior peak is monotone in beta") {
    ModelParams q = p;
    q.eta = 0.0;
    std::vector<double> grid;
    for (int k = 0; k < 16; ++k) grid.push_back(0.16 + 0.08 * k);
    const SweepTable table = peak_sweep(q, SweepParam::Beta, grid);
    for (std::size_t k = 0; k + 1 < table.rows.size(); ++k) {
      CHECK(table.rows[k + 1].i_peak > table.rows[k].i_peak);
    }
  }

  SUBCASE("final size falls in beta and c; bounds hold row-wise") {
    std::vector<double> beta_grid;
    for (int k = 0; k < 24; ++k) {
      const double w = static_cast<double>(k) / 23.0;
      beta_grid.push_back(window.beta_lo * 1.01 *
                          std::pow(window.beta_hi * 0.99 /
                                       (window.beta_lo * 1.01),
                                   w));
    }
    const SweepTable by_beta = final_size_sweep(p, SweepParam::Beta, beta_grid);
    for (std::size_t k = 0; k < by_beta.rows.size(); ++k) {
      const auto& row = by_beta.rows[k];
      REQUIRE(row.error.empty());
      CHECK(row.s_inf < p.gamma / row.value);
      ModelParams q = p;
      q.beta = row.value;
      CHECK(row.s_inf >= standard_sir::standard_final_size(q) - 1e-10);
      if (k > 0) CHECK(row.s_inf < by_beta.rows[k - 1].s_inf);
    }

    std::vector<double> c_grid;
    for (int k = 0; k < 16; ++k) c_grid.push_back(0.5 * std::pow(2.0, k * 0.4));
    const SweepTable by_c = final_size_sweep(p, SweepParam::C, c_grid);
    for (std::size_t k = 1; k < by_c.rows.size(); ++k) {
      CHECK(by_c.rows[k].s_inf < by_c.rows[k - 1].s_inf);
    }
  }

  SUBCASE("rows outside the window report the seed as peak") {
    const SweepTable table =
        peak_sweep(p, SweepParam::Beta, {window.beta_lo * 0.5, 0.10});
    for (const auto& row : table.rows) {
      CHECK_FALSE(row.took_off);
      CHECK(row.i_peak == p.i0);
    }
  }

  SUBCASE("invalid rows are captured without aborting the sweep") {
    // 0.5 pins the initial exposure at zero (outside the path formula's
    // domain), 1.5 is not a valid share at all; both stay row-local.
    const SweepTable table =
        full_sweep(p, SweepParam::I0, {0.5e-4, 5e-4, 0.5, 1.5});
    CHECK(table.rows[0].error.empty());
    CHECK(table.rows[1].error.empty());
    CHECK_FALSE(table.rows[2].error.empty());
    CHECK_FALSE(table.rows[3].error.empty());
    CHECK(std::isnan(table.rows[3].i_peak));
  }
}

TEST_CASE("path comparisons") {
  const ModelParams p = baseline();
  std::vector<double> s_grid;
  for (int k = 0; k < 30; ++k) s_grid.push_back(0.40 + 0.02 * k);

  SUBCASE("costlier infection keeps the path lower") {
    ModelParams milder = p;
    milder.eta = -1000.0;
    const auto cmp = path_comparison(p, milder, s_grid);
    CHECK(cmp.a_below_b);
  }

  SUBCASE("the no-behavior path dominates") {
    ModelParams hat = p;
    hat.eta = 0.0;
    const auto cmp = path_comparison(p, hat, s_grid);
    CHECK(cmp.a_below_b);
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
      CHECK(cmp.i_b[k] ==
            doctest::Approx(standard_sir::path_i_of_s(hat, s_grid[k]))
                .epsilon(1e-12));
    }
  }

  SUBCASE("identical parameters give identical paths") {
    const auto cmp = path_comparison(p, p, s_grid);
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
      CHECK(std::abs(cmp.i_a[k] - cmp.i_b[k]) < 1e-12);
    }
  }

  SUBCASE("time-domain dominance against the standard model") {
    const Trajectory ours = constant_cost::integrate(p, 730.0, 0.05);
    const Trajectory hat = standard_sir::integrate_standard(p, 730.0, 0.05);
    const std::size_t n = std::min(ours.size(), hat.size());
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(ours[k].s >= hat[k].s - 1e-9);
      CHECK(ours[k].r <= hat[k].r + 1e-9);
    }
  }
}

TEST_CASE("sweeps are deterministic across worker counts") {
  const ModelParams p = baseline();
  std::vector<double> grid;
  for (int k = 0; k < 12; ++k) grid.push_back(0.2 + 0.5 * k);
  const SweepTable one = full_sweep(p, SweepParam::Beta, grid, 1);
  const SweepTable four = full_sweep(p, SweepParam::Beta, grid, 4);
  REQUIRE(one.rows.size() == four.rows.size());
  for (std::size_t k = 0; k < one.rows.size(); ++k) {
    CHECK(one.rows[k].i_peak == four.rows[k].i_peak);
    CHECK(one.rows[k].s_inf == four.rows[k].s_inf);
    CHECK(one.rows[k].took_off == four.rows[k].took_off);
  }
}
