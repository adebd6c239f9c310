#pragma once

#include <string>
#include <vector>

#include "chemflood/riemann.hpp"
#include "chemflood/shock.hpp"

namespace chemflood {

/// U = 1/f, zeta = c, F = -s/f.
struct LagrangeState {
  double U = 1.0;
  double zeta = 0.0;
  double F = -1.0;
};

LagrangeState to_lagrange(const Model& model, State u);

/// Saturation with 1/f(s, zeta) = U (U >= 1).
double saturation_from_U(const Model& model, double U, double zeta);

/// F(U, zeta) = -s/f with s recovered from U.
double lagrange_flux(const Model& model, double U, double zeta);

/// Shock in (phi, x) with the sides swapped: U^+- comes from the original minus/plus side.
struct LagrangeShock {
  double U_minus = 1.0, U_plus = 1.0;
  double zeta_minus = 0.0, zeta_plus = 0.0;
  double v_star = 0.0;
  double rh_U = 0.0;     // |v*[U] - [F]|
  double rh_zeta = 0.0;  // |v*[zeta] - [a]|
  double rh() const { return rh_U > rh_zeta ? rh_U : rh_zeta; }
};

LagrangeShock map_shock(const Model& model, const Shock& shock);
/// Original-coordinate (u_minus, u_plus) of a mapped shock.
std::pair<State, State> unmap_shock(const Model& model, const LagrangeShock& shock);

/// [G(U,V)] - v*[|U - V|] for two c-shocks sharing (c-, c+); must be <= 0 up to tolerance.
/// Pairs in the forbidden ordering (slower shock with larger s- and smaller s+) are flagged, not evaluated.
struct ZetaEntropy {
  double residual = 0.0;
  bool excluded = false;
};
ZetaEntropy check_zeta_entropy(const Model& model, const Shock& a, const Shock& b);

/// Potential phi(x, t) from (0, 0+): path 0 goes up x = 0 then across, path 1 goes across
/// t = 0+ then up.
double potential(const Model& model, const RiemannSolution& sol, double x, double t, int path = 0);

/// Counter-clockwise integral of f dt - s dx around [x0, x1] x [t0, t1].
double loop_integral(const Model& model, const RiemannSolution& sol, double x0, double x1,
                     double t0, double t1);

struct LagrangeShockReport {
  int wave = 0;
  std::string kind;
  LagrangeShock mapped;
  double round_trip = 0.0;   // max state error after unmap
  double loop = 0.0;         // closed loop around the shock
  bool zeta_speed_positive = true;
};

struct LagrangeReport {
  std::vector<LagrangeShockReport> shocks;
  double max_rh = 0.0;
  double max_loop = 0.0;
  double max_round_trip = 0.0;
  double unit_flux = 0.0;    // max |F(1, zeta) + 1| over the solution states
  double path_difference = 0.0;
  bool zeta_speeds_positive = true;
  bool min_U_ok = true;      // U >= 1 and F < 0 on sampled profile states
};

LagrangeReport verify_lagrange(const Model& model, const RiemannSolution& sol);

}  // namespace chemflood
