#include <doctest.h>

#include <cmath>

#include "epibehave/constant_cost.hpp"
#include "epibehave/errors.hpp"
#include "epibehave/onset.hpp"

using namespace epibehave;
using namespace epibehave::onset;

namespace {

double initial_growth(const ModelParams& p) {
  const auto d = constant_cost::rhs(
      {0.0, p.s0(), p.i0, 0.0, constant_cost::exposure(p.i0, p)}, p);
  return d.di;
}

// Left side of the takeoff quadratic beta*(1 + eta*I0*beta/c)*(1-I0) - gamma.
double quadratic_value(const ModelParams& p, double beta) {
  return beta * (1.0 + p.eta * p.i0 * beta / p.c) * p.s0() - p.gamma;
}

}  // namespace

TEST_CASE("behavioral reproduction number") {
  ModelParams p = baseline_params();

  SUBCASE("nested case") {
    p.eta = 0.0;
    CHECK(behavioral_r0(p) == doctest::Approx(p.beta * p.s0() / p.gamma));
  }

  SUBCASE("baseline value") {
    CHECK(behavioral_r0(p) == doctest::Approx(2.920).epsilon(1e-3));
  }

  SUBCASE("concave in beta with zeros at the ends") {
    const double beta_zero = -p.c / (p.eta * p.i0);
    CHECK(behavioral_r0([&] {
            ModelParams q = p;
            q.beta = beta_zero;
            return q;
          }()) == doctest::Approx(0.0).epsilon(1e-10));

    const int n = 101;
    std::vector<double> values(n);
    for (int k = 0; k < n; ++k) {
      ModelParams q = p;
      q.beta = beta_zero * (k + 0.5) / (n + 1);
      values[k] = behavioral_r0(q);
    }
    for (int k = 1; k + 1 < n; ++k) {
      CHECK(values[k + 1] - 2.0 * values[k] + values[k - 1] <= 1e-12);
    }
  }
}

TEST_CASE("onset interval") {
  ModelParams p = baseline_params();
  const OnsetInterval window = onset_beta_interval(p);

  SUBCASE("bounds from the quadratic") {
    REQUIRE_FALSE(window.empty);
    CHECK(p.gamma / p.s0() < window.beta_lo);
    CHECK(window.beta_lo < window.beta_hi);
    CHECK(window.beta_hi < -p.c / (p.eta * p.i0));
    // Roots satisfy the quadratic to high relative accuracy.
    CHECK(std::abs(quadratic_value(p, window.beta_lo)) < 1e-10 * p.gamma);
    CHECK(std::abs(quadratic_value(p, window.beta_hi)) < 1e-10 * p.gamma);
  }

  SUBCASE("initial growth flips sign exactly at the roots") {
    for (double factor : {1.01, 0.99}) {
      ModelParams q = p;
      q.beta = window.beta_lo * factor;
      CHECK((initial_growth(q) > 0.0) == (factor > 1.0));
      q.beta = window.beta_hi * factor;
      CHECK((initial_growth(q) > 0.0) == (factor < 1.0));
    }
  }

  SUBCASE("agreement with integrated takeoff on a beta grid") {
    for (double beta : {0.10, 0.144, 0.16, 0.45, 2.0, 6.0, 7.4, 7.5, 7.62}) {
      ModelParams q = p;
      q.beta = beta;
      const Trajectory traj = constant_cost::integrate(q);
      const auto peak = constant_cost::detect_peak(traj);
      CHECK(peak.took_off == window.contains(beta));
    }
  }

  SUBCASE("interior exposure inside the window") {
    for (double beta : {window.beta_lo * 1.1, 0.443, window.beta_hi * 0.9}) {
      ModelParams q = p;
      q.beta = beta;
      const Trajectory traj = constant_cost::integrate(q);
      for (const auto& st : traj.states) {
        CHECK(st.eps > 0.0);
        CHECK(st.eps < 1.0);
      }
    }
  }

  SUBCASE("empty window above the seed threshold") {
    ModelParams q = p;
    q.i0 = window.i0_threshold * 1.01;
    const OnsetInterval none = onset_beta_interval(q);
    CHECK(none.empty);
    // No beta takes off.
    for (double beta : {0.5, 1.0, 2.0, 4.0}) {
      ModelParams r = q;
      r.beta = beta;
      CHECK(initial_growth(r) <= 0.0);
    }
  }

  SUBCASE("tangency flag at float-noise discriminants") {
    // Walk I0 upward from the exact threshold until the discriminant
    // goes barely negative.
    ModelParams q = p;
    q.i0 = p.c / (4.0 * -p.eta * p.gamma + p.c);
    for (int j = 0; j < 64; ++j) {
      const double disc = 1.0 + 4.0 * q.eta * q.gamma * q.i0 / (q.c * q.s0());
      if (disc < 0.0 && disc >= -1e-14) {
        const OnsetInterval tang = onset_beta_interval(q);
        CHECK(tang.empty);
        CHECK(tang.tangency);
        return;
      }
      q.i0 = std::nextafter(q.i0, 1.0);
    }
    FAIL("no float-noise discriminant found near the threshold");
  }
}

TEST_CASE("severity frontier") {
  ModelParams p = baseline_params();

  SUBCASE("reduces to the no-behavior threshold at zero cost") {
    const auto fr = severity_frontier(p, {p.gamma / p.s0()});
    CHECK(fr.points[0].neg_eta == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("ceiling value") {
    const auto fr = severity_frontier(p, {1.0});
    CHECK(fr.neg_eta_ceiling ==
          doctest::Approx(p.c / (4.0 * p.gamma) * p.s0() / p.i0));
  }

  SUBCASE("points strictly inside the frontier take off") {
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(0.2 + 0.35 * k);
    const auto fr = severity_frontier(p, grid);
    for (const auto& pt : fr.points) {
      if (pt.neg_eta <= 0.0) continue;
      ModelParams q = p;
      q.beta = pt.beta;
      q.eta = -0.9 * pt.neg_eta;
      CHECK(behavioral_r0(q) > 1.0);
      q.eta = -1.1 * pt.neg_eta;
      CHECK(behavioral_r0(q) < 1.0);
    }
  }
}

TEST_CASE("distancing cost threshold") {
  ModelParams p = baseline_params();

  SUBCASE("free takeoff without infection cost") {
    ModelParams q = p;
    q.eta = 0.0;
    CHECK(c_threshold(q) == 0.0);
  }

  SUBCASE("initial growth vanishes at the threshold") {
    const double c_lo = c_threshold(p);
    ModelParams q = p;
    q.c = c_lo;
    CHECK(std::abs(initial_growth(q)) < 1e-12);
    q.c = 2.0 * c_lo;
    CHECK(initial_growth(q) > 0.0);
    q.c = 0.5 * c_lo;
    CHECK(initial_growth(q) < 0.0);
  }

  SUBCASE("no threshold when the epidemic cannot start") {
    ModelParams q = p;
    q.beta = q.gamma / q.s0();
    CHECK_THROWS_AS(c_threshold(q), NoThreshold);
  }
}
