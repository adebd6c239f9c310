#pragma once

#include <vector>

#include "chemflood/riemann.hpp"

namespace chemflood {

struct ViscousParams {
  double eps_c = 1e-3;
  double kappa = 1.0;  // eps_d / eps_c
  double A = 1.0;      // capillary function, constant
  double X = 1.5;      // domain [-X, X]
  double T = 1.0;
  int N = 4096;
  double safety = 0.4;
  double eps_d() const { return kappa * eps_c; }
};

struct GridSolution {
  std::vector<double> x, s, c;
  double t = 0.0;
  double dx = 0.0;
  long steps = 0;
  double drift_s = 0.0;  // relative conservation error including boundary fluxes
  double drift_m = 0.0;
  long clipped_s = 0, clipped_c = 0;
  double s_min = 0.0, s_max = 0.0, c_min = 0.0, c_max = 0.0;  // before clipping
};

/// Explicit finite-volume solution of the dissipative system from Riemann data at x = 0.
GridSolution simulate(const Model& model, State uL, State uR, const ViscousParams& p);

struct L1Error {
  double s = 0.0;
  double c = 0.0;
  double shift = 0.0;  // xi offset removed by alignment
  double total() const { return s + c; }
};

/// L1 distance in xi = x/t between the grid and the exact profile, with a 5% buffer per side.
L1Error compare(const Model& model, const GridSolution& grid, const RiemannSolution& exact,
                bool align = true);

struct LadderRung {
  double eps = 0.0;
  L1Error error;
  long steps = 0;
  double drift = 0.0;
};

struct LadderResult {
  std::vector<LadderRung> rungs;
  std::vector<double> ratios;  // error(eps_k) / error(eps_{k+1})
};

/// Runs simulate for each eps (eps_c) against one exact solution.
LadderResult convergence_ladder(const Model& model, const RiemannSolution& exact,
                                const ViscousParams& base, const std::vector<double>& eps,
                                int threads = 0);

/// Half-width that keeps all waves of `sol` inside the domain at time T with a margin.
double domain_half_width(const RiemannSolution& sol, double T);

}  // namespace chemflood
