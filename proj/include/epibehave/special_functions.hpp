#ifndef EPIBEHAVE_SPECIAL_FUNCTIONS_HPP
#define EPIBEHAVE_SPECIAL_FUNCTIONS_HPP

namespace epibehave {

// Integral of exp(-v^2) over [a, b], either order. Evaluated as
// (sqrt(pi)/2) * (erf(b) - erf(a)).
double erf_integral(double a, double b);

// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
// Stays representable where erfc(x) underflows and exp(x^2) overflows
// (x beyond ~26.6), which the phase-space formula needs at realistic
// infection costs.
double erfcx(double x);

}  // namespace epibehave

#endif
