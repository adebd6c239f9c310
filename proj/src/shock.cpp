#include "chemflood/shock.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "chemflood/errors.hpp"
#include "chemflood/ode.hpp"
#include "chemflood/roots.hpp"

namespace chemflood {

namespace {

constexpr double kRhTol = 1e-10;
constexpr double kClassTol = 1e-10;
constexpr double kBoxLo = -0.5;
constexpr double kBoxHi = 1.5;
constexpr double kLaunch = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

double chord_h(const Model& model, double c_minus, double c_plus) {
  return (model.a(c_minus) - model.a(c_plus)) / (c_minus - c_plus);
}

}  // namespace

const char* to_string(ShockFamily f) {
  return f == ShockFamily::SShock ? "SShock" : "CShock";
}

const char* to_string(ShockClass c) {
  switch (c) {
    case ShockClass::Lax1: return "Lax1";
    case ShockClass::Lax2: return "Lax2";
    case ShockClass::Overcompressive: return "Overcompressive";
    case ShockClass::Crossing: return "Crossing";
    case ShockClass::Degenerate: return "Degenerate";
    case ShockClass::NonCompressive: return "NonCompressive";
  }
  return "?";
}

RhResidual rh_residual(const Model& model, State um, State up, double v) {
  const double fm = model.f(um.s, um.c), fp = model.f(up.s, up.c);
  RhResidual r;
  r.mass = std::abs(v * (up.s - um.s) - (fp - fm));
  const double qm = um.c * um.s + model.a(um.c), qp = up.c * up.s + model.a(up.c);
  r.chemical = std::abs(v * (qp - qm) - (up.c * fp - um.c * fm));
  return r;
}

double rh_speed(const Model& model, State um, State up) {
  if (um.s == up.s && um.c == up.c) throw DegenerateError("shock states coincide");
  double v;
  if (um.c == up.c) {
    v = (model.f(up.s, up.c) - model.f(um.s, um.c)) / (up.s - um.s);
  } else {
    const double h = chord_h(model, um.c, up.c);
    v = model.f(up.s, up.c) / (up.s + h);
    const double alt = model.f(um.s, um.c) / (um.s + h);
    if (std::abs(v - alt) > kRhTol) {
      std::ostringstream os;
      os.precision(17);
      os << "states are not Rankine-Hugoniot connected: speeds " << v << " and " << alt;
      throw RhError(os.str());
    }
  }
  const RhResidual r = rh_residual(model, um, up, v);
  if (r.max() > kRhTol) throw RhError("Rankine-Hugoniot residual exceeds tolerance");
  return v;
}

Shock make_shock(const Model& model, State um, State up) {
  Shock sh;
  sh.u_minus = um;
  sh.u_plus = up;
  sh.v = rh_speed(model, um, up);
  if (um.c == up.c) {
    sh.family = ShockFamily::SShock;
    sh.d1 = sh.v > 0.0 ? model.f(um.s, um.c) / sh.v - um.s : 0.0;
    sh.d2 = sh.d1 * um.c - model.a(um.c);
  } else {
    sh.family = ShockFamily::CShock;
    sh.h = chord_h(model, um.c, up.c);
    sh.d1 = sh.h;
    sh.d2 = sh.h * um.c - model.a(um.c);
  }
  sh.classification = classify_shock(model, sh);
  return sh;
}

CriticalShockValue critical_shock_value(const Model& model, State u, double h) {
  CriticalShockValue out;
  const PivotFan fan(model, u.c, h);
  if (std::abs(u.s - fan.s_peak()) <= 1e-12) {
    out.s = u.s;
    out.tangent = true;
    return out;
  }
  out.s = fan.partner(u.s);
  return out;
}

TwField::TwField(const Model& model, double v, double d1, double d2, double kappa, double A)
    : model_(&model), v_(v), d1_(d1), d2_(d2), kappa_(kappa), A_(A) {
  if (!(kappa > 0.0)) throw PreconditionError("kappa must be positive");
  if (!(A > 0.0)) throw PreconditionError("capillary factor must be positive");
}

double TwField::g(double c) const { return d1_ * c - d2_ - model_->a(c); }

std::array<double, 2> TwField::operator()(State u) const {
  return {(model_->f(u.s, u.c) - v_ * (u.s + d1_)) / A_, v_ / kappa_ * g(u.c)};
}

double TwField::ds_dc(double s, double c) const {
  const auto w = (*this)({s, c});
  return w[0] / w[1];
}

TwField tw_field(const Model& model, double v, double d1, double d2, double kappa) {
  return TwField(model, v, d1, d2, kappa);
}

ShockFrame::ShockFrame(const Model& model, double c_minus, double c_plus, double kappa)
    : model_(&model),
      c_minus_(c_minus),
      c_plus_(c_plus),
      kappa_(kappa),
      h_(c_minus > c_plus ? chord_h(model, c_minus, c_plus) : 0.0),
      d2_(h_ * c_minus - model.a(c_minus)),
      fan_minus_(model, c_minus, h_),
      fan_plus_(model, c_plus, h_) {
  if (!(c_minus > c_plus)) throw PreconditionError("c-shock frame needs c_minus > c_plus");
  if (!(kappa > 0.0)) throw PreconditionError("kappa must be positive");
}

ShockFrame::Sweep ShockFrame::sweep(double v, double s0, double c0, double c1,
                                    std::vector<State>* path) const {
  const Model& m = *model_;
  const double h = h_, d2 = d2_, kappa = kappa_;
  const double dir = c1 > c0 ? 1.0 : -1.0;
  // unstable (or stable) manifold of the row saddle is tangent to the c-eigenvector
  const FluxEval e = m.flux(s0, c0);
  const double alpha = e.f_s - v;
  const double beta = v / kappa * (h - m.adsorption(c0).a_c);
  const double slope = e.f_c / (beta - alpha);
  const double dc = kLaunch * std::abs(c1 - c0);
  const double cs = c0 + dir * dc;
  const double ss = s0 + slope * dir * dc;
  if (path) {
    path->push_back({s0, c0});
    path->push_back({ss, cs});
  }
  ode::Field field = [&m, v, h, d2, kappa](double c, const ode::Vec2& y) -> ode::Vec2 {
    const double F = m.f(std::clamp(y[0], kBoxLo, kBoxHi), c) - v * (y[0] + h);
    const double G = v / kappa * (h * c - d2 - m.a(c));
    return {F / G, 0.0};
  };
  ode::Options opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-13;
  opt.h0 = dc;
  opt.hmax = 0.02;
  opt.hmin = 1e-15;
  ode::Dp5 dp(field, cs, {ss, 0.0}, opt);
  Sweep out;
  while (dp.t() * dir < c1 * dir) {
    if (!dp.step(c1)) throw NumericalError("travelling-wave sweep step size underflow");
    const double s = dp.y()[0];
    if (path) path->push_back({s, dp.t()});
    if (s < kBoxLo || s > kBoxHi || !std::isfinite(s)) {
      out.exited = true;
      out.c_exit = dp.t();
      out.s = s;
      return out;
    }
  }
  out.s = dp.y()[0];
  return out;
}

double ShockFrame::miss(double v) const {
  if (v < v1()) return kInf;
  if (v > v_max() && v <= v_max() * (1.0 + 1e-10)) v = v_max();
  const auto s2 = fan_minus_.falling_root(v);
  const auto s1 = fan_plus_.rising_root(v);
  if (!s2 || !s1) throw DomainError("speed outside the range of the row critical points");
  const double cm = 0.5 * (c_minus_ + c_plus_);
  auto proxy = [&](const Sweep& w) {
    if (!w.exited) return w.s;
    const double sign = w.s > 0.5 ? 1.0 : -1.0;
    return sign * (10.0 + std::abs(w.c_exit - cm));
  };
  // s = 1 is invariant at v1, the falling root sits on it
  const Sweep fwd = *s2 >= 1.0 ? Sweep{1.0, false, 0.0} : sweep(v, *s2, c_minus_, cm, nullptr);
  const Sweep bwd = sweep(v, *s1, c_plus_, cm, nullptr);
  return proxy(fwd) - proxy(bwd);
}

std::vector<State> ShockFrame::saddle_trajectory(double v, bool from_minus, double c_end) const {
  std::vector<State> path;
  if (from_minus) {
    const auto s2 = fan_minus_.falling_root(v);
    if (!s2) throw DomainError("no saddle on the c_minus row at this speed");
    sweep(v, *s2, c_minus_, c_end, &path);
  } else {
    const auto s1 = fan_plus_.rising_root(v);
    if (!s1) throw DomainError("no saddle on the c_plus row at this speed");
    sweep(v, *s1, c_plus_, c_end, &path);
  }
  return path;
}

CriticalSpeed critical_speed(const ShockFrame& fr) {
  const double lo = fr.v1();
  const double hi = fr.v_max() - 1e-9 * (fr.v_max() - lo);
  CriticalSpeed out;
  if (!(hi > lo)) throw StructureError("empty speed bracket for the c-shock connection");
  const int n = 24;
  double a = lo, da = fr.miss(lo);
  for (int k = 1; k <= n; ++k) {
    const double b = lo + (hi - lo) * double(k) / n;
    const double db = fr.miss(b);
    if (da >= 0.0 && db < 0.0) {
      auto g = [&](double v) { return fr.miss(v); };
      double fa = da;
      if (!std::isfinite(fa)) {
        // miss is infinite exactly at v1 only when s = 1 is not yet reached
        fa = 1e3;
      }
      out.v = roots::solve(g, a, b, 1e-15, fa, db);
      out.residual = std::abs(fr.miss(out.v));
      return out;
    }
    a = b;
    da = db;
  }
  out.v = fr.v_max();
  out.tangent = true;
  out.residual = 0.0;
  return out;
}

Connection connect_undercompressive(const Model& model, double c_L, double c_R, double kappa) {
  if (!model.is_validated()) throw PreconditionError("model has not been validated");
  if (!(c_L > model.c_star() && model.c_star() > c_R))
    throw PreconditionError("undercompressive connection needs c_L > c* > c_R");
  if (!(kappa > 0.0)) throw PreconditionError("kappa must be positive");
  const ShockFrame fr(model, c_L, c_R, kappa);
  const CriticalSpeed cs = critical_speed(fr);
  if (cs.tangent) throw ConnectionNotFound("miss function keeps its sign over the speed bracket");
  const double sm = *fr.fan_minus().falling_root(cs.v);
  const double sp = *fr.fan_plus().rising_root(cs.v);
  Connection out;
  out.shock.u_minus = {sm, c_L};
  out.shock.u_plus = {sp, c_R};
  out.shock.v = cs.v;
  out.shock.family = ShockFamily::CShock;
  out.shock.h = fr.h();
  out.shock.d1 = fr.h();
  out.shock.d2 = fr.d2();
  out.shock.classification = classify_shock(model, out.shock);
  out.residual = cs.residual;
  out.rh = rh_residual(model, out.shock.u_minus, out.shock.u_plus, cs.v);
  if (out.residual > 1e-8)
    throw ConnectionNotFound("shooting residual of the saddle connection exceeds tolerance");
  return out;
}

ShockClass classify_shock(const Model& model, const Shock& sh) {
  const CharData a = char_data(model, sh.u_minus);
  const CharData b = char_data(model, sh.u_plus);
  const double l1m = std::min(a.lambda_s, a.lambda_c), l2m = std::max(a.lambda_s, a.lambda_c);
  const double l1p = std::min(b.lambda_s, b.lambda_c), l2p = std::max(b.lambda_s, b.lambda_c);
  const double v = sh.v;
  for (double l : {l1m, l2m, l1p, l2p})
    if (std::abs(l - v) <= kClassTol) return ShockClass::Degenerate;
  const bool comp1 = l1m > v && v > l1p;
  const bool comp2 = l2m > v && v > l2p;
  if (comp1 && comp2) return ShockClass::Overcompressive;
  if (comp1 && v < l2m && v < l2p) return ShockClass::Lax1;
  if (comp2 && v > l1m && v > l1p) return ShockClass::Lax2;
  if (l2m > v && v > l1m && l1p < v && v < l2p) return ShockClass::Crossing;
  return ShockClass::NonCompressive;
}

bool oleinik_holds(const Model& model, double c, double sm, double sp, double v) {
  const double fm = model.f(sm, c);
  const double sign = sp > sm ? 1.0 : -1.0;
  auto margin = [&](double s) { return sign * (model.f(s, c) - fm - v * (s - sm)); };
  const int n = 512;
  const double tol = 1e-12;
  double worst = kInf;
  int worst_k = -1;
  for (int k = 1; k < n; ++k) {
    const double s = sm + (sp - sm) * double(k) / n;
    const double g = margin(s);
    if (g < worst) {
      worst = g;
      worst_k = k;
    }
  }
  if (worst < -tol) return false;
  if (worst_k < 0) return true;
  double a = sm + (sp - sm) * double(worst_k - 1) / n;
  double b = sm + (sp - sm) * double(worst_k + 1) / n;
  if (a > b) std::swap(a, b);
  const auto r = boost::math::tools::brent_find_minima(margin, a, b, 50);
  return r.second >= -tol;
}

Admissibility is_admissible(const Model& model, const Shock& sh, double kappa) {
  const State um = sh.u_minus, up = sh.u_plus;
  const double v = sh.v;
  if (!(v > 0.0) || !(v < model.c1_norm())) return {false, "speed outside (0, |f|_C1)"};
  if (um.s <= 0.0) return {false, "s_minus = 0"};
  if (up.c > um.c) return {false, "c_plus > c_minus"};
  if (up.s <= 0.0 && up.c != um.c) return {false, "s_plus = 0 with a c jump"};
  if (rh_residual(model, um, up, v).max() > 1e-9) return {false, "not Rankine-Hugoniot consistent"};
  if (um.c == up.c) {
    if (oleinik_holds(model, um.c, um.s, up.s, v)) return {true, "Oleinik chord condition holds"};
    return {false, "Oleinik chord condition fails"};
  }
  const ShockFrame fr(model, um.c, up.c, kappa);
  const bool minus_saddle = um.s > fr.fan_minus().s_peak();
  const bool plus_saddle = up.s < fr.fan_plus().s_peak();
  if (v < fr.v1()) {
    if (minus_saddle || !plus_saddle) return {false, "no critical point pair below v1"};
    return {true, "repeller connects to the saddle below v1"};
  }
  const double d = fr.miss(v);
  if (minus_saddle && plus_saddle) {
    if (std::abs(d) <= 1e-7) return {true, "saddle-saddle connection"};
    return {false, "saddle trajectories miss each other"};
  }
  if (d > -1e-7) return {true, "connecting orbit exists"};
  return {false, "saddle separatrices block the connection"};
}

double lax_small_s_threshold(const Model& model) {
  const int n = 257;
  double s_f = 1.0;
  for (int k = 0; k < n; ++k) s_f = std::min(s_f, inflection_point(model, double(k) / (n - 1)));
  double f_min = kInf, a_max = 0.0, ac_max = 0.0;
  for (int k = 0; k < n; ++k) {
    const double c = double(k) / (n - 1);
    f_min = std::min(f_min, model.f(s_f, c));
    const AdsorptionEval ad = model.adsorption(c);
    a_max = std::max(a_max, std::abs(ad.a));
    ac_max = std::max(ac_max, std::abs(ad.a_c));
  }
  const double delta = f_min / (1.0 + a_max + ac_max);
  double s_star = s_f;
  for (int k = 0; k < n; ++k) {
    const double c = double(k) / (n - 1);
    // chord from the origin with slope delta meets the convex part once
    auto chord = [&](double s) { return model.f(s, c) - delta * s; };
    const double sc = roots::solve(chord, 1e-9 * s_f, s_f, 1e-15);
    // tangent from (1, f_min) onto the convex part
    auto tangent = [&](double t) {
      const FluxEval e = model.flux(t, c);
      return e.f + e.f_s * (1.0 - t) - f_min;
    };
    const double ss = roots::solve(tangent, 1e-9 * s_f, s_f, 1e-15);
    s_star = std::min({s_star, sc, ss});
  }
  // sampled minima over c; shrink slightly to stay on the safe side
  return s_star * (1.0 - 1e-3);
}

}  // namespace chemflood
