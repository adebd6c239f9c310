#include "chemflood/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chemflood/errors.hpp"
#include "chemflood/parallel.hpp"

namespace chemflood {

namespace {

struct Cell {
  double s, c, m;  // m = c s + a(c)
  double f, f_s, a_c;
};

Cell make_cell(const Model& model, double s, double c) {
  const AdsorptionEval ad = model.adsorption(c);
  Cell k;
  k.s = s;
  k.c = c;
  k.m = c * s + ad.a;
  k.f = model.f(s, c);
  k.f_s = model.f_s(s, c);
  k.a_c = ad.a_c;
  return k;
}

/// c with c s + a(c) = m, Newton from c0 with a bisection fallback; `clipped` when outside [0, 1].
double recover_c(const Model& model, double s, double m, double c0, bool& clipped) {
  auto g = [&](double c) { return c * s + model.a(c) - m; };
  clipped = false;
  if (g(0.0) >= 0.0) {
    clipped = g(0.0) > 1e-14;
    return 0.0;
  }
  if (g(1.0) <= 0.0) {
    clipped = g(1.0) < -1e-14;
    return 1.0;
  }
  double c = std::clamp(c0, 0.0, 1.0);
  for (int it = 0; it < 8; ++it) {
    const AdsorptionEval ad = model.adsorption(c);
    const double r = c * s + ad.a - m;
    const double d = s + ad.a_c;
    if (!(d > 0.0)) break;
    const double step = r / d;
    c -= step;
    if (c < 0.0 || c > 1.0) break;
    if (std::abs(step) <= 1e-15) return c;
  }
  if (c >= 0.0 && c <= 1.0 && std::abs(g(c)) <= 1e-15) return c;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GridSolution simulate(const Model& model, State uL, State uR, const ViscousParams& p) {
  if (!(p.eps_c > 0.0) || !(p.kappa > 0.0)) throw PreconditionError("eps_c and kappa must be positive");
  if (p.N < 256) throw PreconditionError("at least 256 cells are required");
  if (!(p.X > 0.0) || !(p.T > 0.0)) throw PreconditionError("X and T must be positive");
  if (!(uL.s > 0.0)) throw PreconditionError("s_L must be positive");
  const int N = p.N;
  const double dx = 2.0 * p.X / N;
  const double eps_c = p.eps_c * p.A, eps_d = p.eps_d();

  GridSolution g;
  g.dx = dx;
  g.x.resize(N);
  std::vector<Cell> cells(N + 2);
  cells[0] = make_cell(model, uL.s, uL.c);
  cells[N + 1] = make_cell(model, uR.s, uR.c);
  for (int i = 0; i < N; ++i) {
    g.x[i] = -p.X + (i + 0.5) * dx;
    const State u = g.x[i] < 0.0 ? uL : uR;
    cells[i + 1] = make_cell(model, u.s, u.c);
  }
  double mass_s0 = 0.0, mass_m0 = 0.0, scale_s = 0.0, scale_m = 0.0;
  for (int i = 1; i <= N; ++i) {
    mass_s0 += cells[i].s * dx;
    mass_m0 += cells[i].m * dx;
  }
  scale_s = std::max(std::abs(mass_s0), dx);
  scale_m = std::max(std::abs(mass_m0), dx);

  std::vector<double> G1(N + 1), G2(N + 1), ns(N), nm(N);
  double in_s = 0.0, in_m = 0.0;
  g.s_min = g.c_min = std::numeric_limits<double>::infinity();
  g.s_max = g.c_max = -std::numeric_limits<double>::infinity();
  double t = 0.0;
  while (t < p.T) {
    double amax = 0.0, nu = eps_c;
    for (int k = 0; k <= N; ++k) {
      const Cell& L = cells[k];
      const Cell& R = cells[k + 1];
      const double lcL = L.f / (L.s + L.a_c), lcR = R.f / (R.s + R.a_c);
      const double alpha = std::max({std::abs(L.f_s), std::abs(R.f_s), std::abs(lcL), std::abs(lcR)});
      amax = std::max(amax, alpha);
      const double ds = R.s - L.s;
      G1[k] = 0.5 * (L.f + R.f) - 0.5 * alpha * ds - eps_c * ds / dx;
      G2[k] = 0.5 * (L.c * L.f + R.c * R.f) - 0.5 * alpha * (R.m - L.m) -
              eps_c * 0.5 * (L.c + R.c) * ds / dx - eps_d * (R.c - L.c) / dx;
    }
    for (int i = 0; i <= N + 1; ++i) nu = std::max(nu, eps_d / (cells[i].s + cells[i].a_c));
    double dt = p.safety * std::min(dx / std::max(amax, 1e-12), dx * dx / (2.0 * nu));
    if (t + dt > p.T) dt = p.T - t;
    in_s += dt * (G1[0] - G1[N]);
    in_m += dt * (G2[0] - G2[N]);
    const double r = dt / dx;
    for (int i = 0; i < N; ++i) {
      ns[i] = cells[i + 1].s - r * (G1[i + 1] - G1[i]);
      nm[i] = cells[i + 1].m - r * (G2[i + 1] - G2[i]);
    }
    for (int i = 0; i < N; ++i) {
      double s = ns[i];
      if (!std::isfinite(s) || !std::isfinite(nm[i])) {
        std::ostringstream os;
        os << "non-finite state at step " << g.steps << " (t=" << t << ", x=" << g.x[i] << ")";
        throw NumericalError(os.str());
      }
      g.s_min = std::min(g.s_min, s);
      g.s_max = std::max(g.s_max, s);
      if (s < 0.0 || s > 1.0) {
        ++g.clipped_s;
        s = std::clamp(s, 0.0, 1.0);
      }
      bool clipped = false;
      const double c = recover_c(model, s, nm[i], cells[i + 1].c, clipped);
      if (clipped) ++g.clipped_c;
      g.c_min = std::min(g.c_min, c);
      g.c_max = std::max(g.c_max, c);
      cells[i + 1] = make_cell(model, s, c);
    }
    t += dt;
    ++g.steps;
  }
  g.t = t;
  g.s.resize(N);
  g.c.resize(N);
  double mass_s = 0.0, mass_m = 0.0;
  for (int i = 0; i < N; ++i) {
    g.s[i] = cells[i + 1].s;
    g.c[i] = cells[i + 1].c;
    mass_s += cells[i + 1].s * dx;
    mass_m += cells[i + 1].m * dx;
  }
  g.drift_s = std::abs(mass_s - mass_s0 - in_s) / scale_s;
  g.drift_m = std::abs(mass_m - mass_m0 - in_m) / scale_m;
  return g;
}

L1Error compare(const Model& model, const GridSolution& grid, const RiemannSolution& exact,
                bool align) {
  if (!(grid.t > 0.0)) throw PreconditionError("comparison needs t > 0");
  const int N = static_cast<int>(grid.x.size());
  const double t = grid.t;
  L1Error e;
  if (align) {
    // first crossing of the mid level in s (or c when s does not change)
    const bool use_s = std::abs(exact.u_R.s - exact.u_L.s) > 1e-6;
    const bool use_c = std::abs(exact.u_R.c - exact.u_L.c) > 1e-6;
    if (use_s || use_c) {
      const double mid = use_s ? 0.5 * (exact.u_L.s + exact.u_R.s) : 0.5 * (exact.u_L.c + exact.u_R.c);
      auto comp = [&](State u) { return (use_s ? u.s : u.c) - mid; };
      const std::vector<double>& v = use_s ? grid.s : grid.c;
      double xg = std::numeric_limits<double>::quiet_NaN();
      for (int i = 0; i + 1 < N; ++i) {
        const double a = v[i] - mid, b = v[i + 1] - mid;
        if (a == 0.0) {
          xg = grid.x[i];
          break;
        }
        if ((a < 0.0) != (b < 0.0)) {
          xg = grid.x[i] + (grid.x[i + 1] - grid.x[i]) * a / (a - b);
          break;
        }
      }
      double xe = std::numeric_limits<double>::quiet_NaN();
      double prev = comp(evaluate_profile(model, exact, grid.x[0] / t));
      for (int i = 1; i < N && std::isnan(xe); ++i) {
        const double cur = comp(evaluate_profile(model, exact, grid.x[i] / t));
        if (prev == 0.0) {
          xe = grid.x[i - 1] / t;
        } else if ((prev < 0.0) != (cur < 0.0)) {
          double lo = grid.x[i - 1] / t, hi = grid.x[i] / t;
          for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (lo + hi);
            const double vm = comp(evaluate_profile(model, exact, m));
            ((vm < 0.0) == (prev < 0.0) ? lo : hi) = m;
          }
          xe = 0.5 * (lo + hi);
        }
        prev = cur;
      }
      if (std::isfinite(xg) && std::isfinite(xe)) e.shift = xg / t - xe;
    }
  }
  const int buffer = static_cast<int>(std::ceil(0.05 * N));
  const double dxi = grid.dx / t;
  for (int i = buffer; i < N - buffer; ++i) {
    const double w = (i == buffer || i == N - buffer - 1) ? 0.5 : 1.0;
    const State u = evaluate_profile(model, exact, grid.x[i] / t - e.shift);
    e.s += w * std::abs(grid.s[i] - u.s) * dxi;
    e.c += w * std::abs(grid.c[i] - u.c) * dxi;
  }
  return e;
}

LadderResult convergence_ladder(const Model& model, const RiemannSolution& exact,
                                const ViscousParams& base, const std::vector<double>& eps,
                                int threads) {
  LadderResult out;
  out.rungs.resize(eps.size());
  parallel_for(static_cast<int>(eps.size()), [&](int k) {
    ViscousParams p = base;
    p.eps_c = eps[k];
    const GridSolution g = simulate(model, exact.u_L, exact.u_R, p);
    out.rungs[k].eps = eps[k];
    out.rungs[k].error = compare(model, g, exact);
    out.rungs[k].steps = g.steps;
    out.rungs[k].drift = std::max(g.drift_s, g.drift_m);
  }, threads);
  for (size_t k = 0; k + 1 < out.rungs.size(); ++k)
    out.ratios.push_back(out.rungs[k].error.total() / out.rungs[k + 1].error.total());
  return out;
}

double domain_half_width(const RiemannSolution& sol, double T) {
  double v = 0.0;
  for (const Wave& w : sol.waves) v = std::max({v, std::abs(w.speed_lo), std::abs(w.speed_hi)});
  return std::max(0.5, 1.15 * v + 0.15) * T;
}

}  // namespace chemflood
