#include "epibehave/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace epibehave {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

double erf_integral(double a, double b) {
  return 0.5 * kSqrtPi * (std::erf(b) - std::erf(a));
}

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    throw std::domain_error("erfcx: negative argument not supported");
  }
  if (x <= 25.0) {
    // exp(x^2)*erfc(x); both factors representable in this range.
    return std::exp(x * x) * std::erfc(x);
  }
  // Continued fraction erfcx(x) = 1/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x +
  // (3/2)/(x + 2/(x + ...))))), evaluated by the modified Lentz method.
  // Converges in a handful of terms for x this large.
  const double tiny = std::numeric_limits<double>::min() * 16.0;
  double f = x;
  double c_term = f;
  double d_term = 0.0;
  for (int n = 1; n <= 64; ++n) {
    const double a_n = 0.5 * n;
    d_term = x + a_n * d_term;
    if (d_term == 0.0) d_term = tiny;
    c_term = x + a_n / c_term;
    if (c_term == 0.0) c_term = tiny;
    d_term = 1.0 / d_term;
    const double delta = c_term * d_term;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 / (kSqrtPi * f);
}

}  // namespace epibehave
