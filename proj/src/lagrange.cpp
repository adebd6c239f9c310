#include "chemflood/lagrange.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chemflood/errors.hpp"
#include "chemflood/roots.hpp"

namespace chemflood {

namespace {

constexpr double kMinS = 1e-12;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

/// Integral of g over [a, b] split at the given interior points.
template <class G>
double piecewise(G&& g, double a, double b, std::vector<double> breaks) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double x) { return !(x > a && x < b); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  double sum = 0.0, lo = a;
  breaks.push_back(b);
  for (double hi : breaks) {
    if (hi > lo) sum += GK::integrate(g, lo, hi, 8, 1e-12);
    lo = hi;
  }
  return sign * sum;
}

std::vector<double> speeds(const RiemannSolution& sol) {
  std::vector<double> v;
  for (const Wave& w : sol.waves) {
    v.push_back(w.speed_lo);
    v.push_back(w.speed_hi);
  }
  return v;
}

/// Integral of s(x/t) dx over [xa, xb] at fixed t > 0.
double horizontal(const Model& m, const RiemannSolution& sol, double t, double xa, double xb) {
  auto g = [&](double xi) { return evaluate_profile(m, sol, xi).s; };
  return t * piecewise(g, xa / t, xb / t, speeds(sol));
}

/// Integral of f(u(x/t)) dt over [ta, tb] at fixed x.
double vertical(const Model& m, const RiemannSolution& sol, double x, double ta, double tb) {
  auto g = [&](double t) {
    const State u = t <= 0.0 ? (x >= 0.0 ? sol.u_R : sol.u_L) : evaluate_profile(m, sol, x / t);
    return m.f(u.s, u.c);
  };
  if (x == 0.0) return g(1.0) * (tb - ta);
  std::vector<double> br;
  for (double v : speeds(sol))
    if (v != 0.0 && x / v > 0.0) br.push_back(x / v);
  return piecewise(g, ta, tb, br);
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

LagrangeState to_lagrange(const Model& model, State u) {
  if (u.s < kMinS) throw ZeroFlowError("zero water flow at s = 0");
  const double f = model.f(u.s, u.c);
  return {1.0 / f, u.c, -u.s / f};
}

double saturation_from_U(const Model& model, double U, double zeta) {
  if (!(U >= 1.0)) throw DomainError("U must be at least 1");
  if (U == 1.0) return 1.0;
  const double target = 1.0 / U;
  auto g = [&](double s) { return model.f(s, zeta) - target; };
  return roots::bisect(g, 0.0, 1.0, 1e-15);
}

double lagrange_flux(const Model& model, double U, double zeta) {
  const double s = saturation_from_U(model, U, zeta);
  return -s * U;
}

LagrangeShock map_shock(const Model& model, const Shock& sh) {
  const LagrangeState from_plus = to_lagrange(model, sh.u_plus);
  const LagrangeState from_minus = to_lagrange(model, sh.u_minus);
  LagrangeShock out;
  // phi grows with t at fixed x, so the original minus side is the Lagrange plus side
  out.U_minus = from_plus.U;
  out.zeta_minus = from_plus.zeta;
  out.U_plus = from_minus.U;
  out.zeta_plus = from_minus.zeta;
  const double dU = out.U_plus - out.U_minus;
  const double dF = from_minus.F - from_plus.F;
  const double dz = out.zeta_plus - out.zeta_minus;
  const double da = model.a(out.zeta_plus) - model.a(out.zeta_minus);
  if (dz != 0.0)
    out.v_star = da / dz;
  else if (dU != 0.0)
    out.v_star = dF / dU;
  else
    throw DegenerateError("shock with equal states");
  out.rh_U = std::abs(out.v_star * dU - dF);
  out.rh_zeta = std::abs(out.v_star * dz - da);
  return out;
}

std::pair<State, State> unmap_shock(const Model& model, const LagrangeShock& sh) {
  const State um{saturation_from_U(model, sh.U_plus, sh.zeta_plus), sh.zeta_plus};
  const State up{saturation_from_U(model, sh.U_minus, sh.zeta_minus), sh.zeta_minus};
  return {um, up};
}

ZetaEntropy check_zeta_entropy(const Model& model, const Shock& a, const Shock& b) {
  if (a.family != ShockFamily::CShock || b.family != ShockFamily::CShock)
    throw PreconditionError("entropy check needs two c-shocks");
  if (std::abs(a.u_minus.c - b.u_minus.c) > 1e-12 || std::abs(a.u_plus.c - b.u_plus.c) > 1e-12)
    throw PreconditionError("c-shocks do not share (c-, c+)");
  const Shock& slow = a.v <= b.v ? a : b;
  const Shock& fast = a.v <= b.v ? b : a;
  ZetaEntropy out;
  if (slow.v < fast.v && slow.u_minus.s > fast.u_minus.s && slow.u_plus.s < fast.u_plus.s) {
    out.excluded = true;
    return out;
  }
  const LagrangeShock U = map_shock(model, a);
  const LagrangeShock V = map_shock(model, b);
  const double zp = U.zeta_plus, zm = U.zeta_minus;
  const double vs = (model.a(zp) - model.a(zm)) / (zp - zm);
  auto F = [&](State u) { return -u.s / model.f(u.s, u.c); };
  // Lagrange plus side is the original minus side
  const double Gp = (F(a.u_minus) - F(b.u_minus)) * sgn(U.U_plus - V.U_plus);
  const double Gm = (F(a.u_plus) - F(b.u_plus)) * sgn(U.U_minus - V.U_minus);
  const double jump_abs = std::abs(U.U_plus - V.U_plus) - std::abs(U.U_minus - V.U_minus);
  out.residual = (Gp - Gm) - vs * jump_abs;
  return out;
}

double potential(const Model& model, const RiemannSolution& sol, double x, double t, int path) {
  if (!(t > 0.0)) throw PreconditionError("potential needs t > 0");
  if (path == 0) {
    const State u0 = evaluate_profile(model, sol, 0.0);
    return model.f(u0.s, u0.c) * t - horizontal(model, sol, t, 0.0, x);
  }
  const double s0 = x >= 0.0 ? sol.u_R.s : sol.u_L.s;
  return -s0 * x + vertical(model, sol, x, 0.0, t);
}

double loop_integral(const Model& model, const RiemannSolution& sol, double x0, double x1,
                     double t0, double t1) {
  if (!(t0 > 0.0) || !(t1 > t0) || !(x1 > x0)) throw PreconditionError("degenerate loop rectangle");
  // f dt - s dx, counter-clockwise: bottom, right, top, left
  const double bottom = -horizontal(model, sol, t0, x0, x1);
  const double right = vertical(model, sol, x1, t0, t1);
  const double top = horizontal(model, sol, t1, x0, x1);
  const double left = -vertical(model, sol, x0, t0, t1);
  return bottom + right + top + left;
}

LagrangeReport verify_lagrange(const Model& model, const RiemannSolution& sol) {
  LagrangeReport rep;
  for (size_t i = 0; i < sol.waves.size(); ++i) {
    const Wave& w = sol.waves[i];
    if (!w.shock) continue;
    LagrangeShockReport r;
    r.wave = static_cast<int>(i);
    r.kind = to_string(w.kind);
    r.mapped = map_shock(model, *w.shock);
    const auto [um, up] = unmap_shock(model, r.mapped);
    r.round_trip = std::max({std::abs(um.s - w.shock->u_minus.s), std::abs(up.s - w.shock->u_plus.s),
                             std::abs(um.c - w.shock->u_minus.c), std::abs(up.c - w.shock->u_plus.c)});
    const double v = w.shock->v;
    r.loop = std::abs(loop_integral(model, sol, 0.5 * v, 2.5 * v, 1.0, 2.0));
    if (w.kind == WaveKind::CShock) r.zeta_speed_positive = r.mapped.v_star > 0.0;
    rep.max_rh = std::max(rep.max_rh, r.mapped.rh());
    rep.max_loop = std::max(rep.max_loop, r.loop);
    rep.max_round_trip = std::max(rep.max_round_trip, r.round_trip);
    rep.zeta_speeds_positive = rep.zeta_speeds_positive && r.zeta_speed_positive;
    rep.shocks.push_back(r);
  }
  for (const State& u : sol.states)
    rep.unit_flux = std::max(rep.unit_flux, std::abs(lagrange_flux(model, 1.0, u.c) + 1.0));
  double vmax = 1.0;
  for (const Wave& w : sol.waves) vmax = std::max(vmax, w.speed_hi);
  for (double fx : {-0.5, 0.25, 0.5, 1.0, 1.5}) {
    const double x = fx * vmax;
    rep.path_difference = std::max(
        rep.path_difference, std::abs(potential(model, sol, x, 1.0, 0) - potential(model, sol, x, 1.0, 1)));
  }
  for (int k = 0; k <= 200; ++k) {
    const State u = evaluate_profile(model, sol, -0.1 + (vmax + 0.2) * k / 200.0);
    if (u.s < kMinS) continue;
    const LagrangeState l = to_lagrange(model, u);
    if (!(l.U >= 1.0) || !(l.F < 0.0)) rep.min_U_ok = false;
  }
  return rep;
}

}  // namespace chemflood
