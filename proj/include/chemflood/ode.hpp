#pragma once

#include <array>
#include <functional>

namespace chemflood::ode {

using Vec2 = std::array<double, 2>;
using Field = std::function<Vec2(double, const Vec2&)>;

/// One accepted Dormand-Prince step with its continuous extension.
/// A step with rc[2..4] = 0 is a straight segment.
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<Vec2, 5> rc{};

  Vec2 at_theta(double theta) const;
  Vec2 at(double t) const { return at_theta((t - t0) / h); }
  Vec2 start() const { return rc[0]; }
  Vec2 end() const;

  static DenseStep segment(const Vec2& a, const Vec2& b);
};

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h0 = 1e-3;
  double hmax = 0.05;
  double hmin = 1e-14;
};

/// Adaptive Dormand-Prince 5(4) stepper with dense output.
class Dp5 {
 public:
  Dp5(Field f, double t0, const Vec2& y0, Options opt = {});

  /// Takes one accepted step not beyond t_limit. Returns false when the step size underflows.
  bool step(double t_limit);

  double t() const { return t_; }
  const Vec2& y() const { return y_; }
  const DenseStep& last() const { return last_; }
  long evaluations() const { return nfev_; }

 private:
  Field f_;
  Options opt_;
  double t_;
  Vec2 y_;
  Vec2 k1_;
  double h_;
  DenseStep last_;
  long nfev_ = 0;
};

}  // namespace chemflood::ode
