#ifndef EPIBEHAVE_ROOT_DETAIL_HPP
#define EPIBEHAVE_ROOT_DETAIL_HPP

#include <cmath>
#include <string>

#include "epibehave/errors.hpp"

namespace epibehave::detail {

// Bisection on [lo, hi]; requires f(lo) and f(hi) of opposite sign.
// Returns the midpoint once the bracket width drops below xtol.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol,
              const char* what = "bisect") {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw BracketFailure(std::string(what) + ": no sign change on [" +
                         std::to_string(lo) + ", " + std::to_string(hi) +
                         "], f = " + std::to_string(flo) + " / " +
                         std::to_string(fhi));
  }
  for (int iter = 0; iter < 200 && (hi - lo) > xtol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace epibehave::detail

#endif
