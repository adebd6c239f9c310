#include "chemflood/ode.hpp"

#include <algorithm>
#include <cmath>

namespace chemflood::ode {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

Vec2 DenseStep::at_theta(double th) const {
  const double th1 = 1.0 - th;
  Vec2 y;
  for (int i = 0; i < 2; ++i)
    y[i] = rc[0][i] + th * (rc[1][i] + th1 * (rc[2][i] + th * (rc[3][i] + th1 * rc[4][i])));
  return y;
}

Vec2 DenseStep::end() const { return {rc[0][0] + rc[1][0], rc[0][1] + rc[1][1]}; }

DenseStep DenseStep::segment(const Vec2& a, const Vec2& b) {
  DenseStep d;
  d.t0 = 0.0;
  d.h = 1.0;
  d.rc[0] = a;
  d.rc[1] = {b[0] - a[0], b[1] - a[1]};
  return d;
}

Dp5::Dp5(Field f, double t0, const Vec2& y0, Options opt)
    : f_(std::move(f)), opt_(opt), t_(t0), y_(y0), h_(opt.h0) {
  k1_ = f_(t_, y_);
  ++nfev_;
}

bool Dp5::step(double t_limit) {
  const double dir = t_limit >= t_ ? 1.0 : -1.0;
  for (;;) {
    double h = std::min(std::abs(h_), opt_.hmax);
    const double room = std::abs(t_limit - t_);
    bool clipped = false;
    if (h >= room) {
      h = room;
      clipped = true;
    }
    if (h < opt_.hmin) return false;
    const double hs = dir * h;
    auto at = [&](std::initializer_list<std::pair<double, const Vec2*>> terms) {
      Vec2 y = y_;
      for (const auto& [w, k] : terms) {
        y[0] += hs * w * (*k)[0];
        y[1] += hs * w * (*k)[1];
      }
      return y;
    };
    const Vec2& k1 = k1_;
    const Vec2 k2 = f_(t_ + c2 * hs, at({{a21, &k1}}));
    const Vec2 k3 = f_(t_ + c3 * hs, at({{a31, &k1}, {a32, &k2}}));
    const Vec2 k4 = f_(t_ + c4 * hs, at({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec2 k5 = f_(t_ + c5 * hs, at({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec2 k6 =
        f_(t_ + hs, at({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec2 y1 = at({{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const Vec2 k7 = f_(t_ + hs, y1);
    nfev_ += 6;

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double ei =
          hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(y1[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / 2.0);
    if (!std::isfinite(err)) {
      h_ = 0.25 * h;
      continue;
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      DenseStep d;
      d.t0 = t_;
      d.h = hs;
      for (int i = 0; i < 2; ++i) {
        const double ydiff = y1[i] - y_[i];
        const double bspl = hs * k1[i] - ydiff;
        d.rc[0][i] = y_[i];
        d.rc[1][i] = ydiff;
        d.rc[2][i] = bspl;
        d.rc[3][i] = ydiff - hs * k7[i] - bspl;
        d.rc[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                           d7 * k7[i]);
      }
      last_ = d;
      t_ = clipped ? t_limit : t_ + hs;
      y_ = y1;
      k1_ = k7;
      if (!clipped || fac < 1.0) h_ = h * fac;
      return true;
    }
    h_ = h * std::max(fac, 0.2);
  }
}

}  // namespace chemflood::ode
