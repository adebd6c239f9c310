#pragma once

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <utility>

#include "chemflood/errors.hpp"

namespace chemflood::roots {

/// Bisection on a sign-changing bracket; stops when the bracket is below tol.
template <class F>
double bisect(F&& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw NumericalError("bisection bracket has no sign change");
  auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
  const auto r = boost::math::tools::bisect(f, a, b, stop);
  return 0.5 * (r.first + r.second);
}

/// TOMS 748 on a sign-changing bracket with absolute tolerance tol.
template <class F>
double solve(F&& f, double a, double b, double tol, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw NumericalError("root bracket has no sign change");
  std::uintmax_t iters = 200;
  auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
  return 0.5 * (r.first + r.second);
}

template <class F>
double solve(F&& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  return solve(f, a, b, tol, fa, fb);
}

}  // namespace chemflood::roots
