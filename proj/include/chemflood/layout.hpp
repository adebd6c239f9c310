#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chemflood/riemann.hpp"

namespace chemflood {

struct Polyline {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (s_L, s_R)
};

/// Region labels on the cell centres of an n x n grid over (s_L, s_R).
struct Layout {
  double c_L = 0.0, c_R = 0.0, kappa = 1.0;
  int n = 0;
  std::vector<RegionLabel> labels;  // index i * n + j: s_L = (i+0.5)/n, s_R = (j+0.5)/n
  std::vector<Polyline> boundaries;

  double s_L(int i) const { return (i + 0.5) / n; }
  double s_R(int j) const { return (j + 0.5) / n; }
  const RegionLabel& at(int i, int j) const { return labels[static_cast<size_t>(i) * n + j]; }
  /// Distinct label names in first-seen order.
  std::vector<std::string> names() const;
  int count(const std::string& name) const;
};

Layout region_layout(const RiemannSolver& solver, double c_L, double c_R, int n, int threads = 0);

/// Boundary curves of the (s_L, s_R) layout, sampled with n points each.
std::vector<Polyline> boundary_polylines(const RiemannSolver& solver, double c_L, double c_R,
                                         int n = 200);

/// Exact areas of the seven c_L < c_R regions (in the unit square).
struct RegionAreas {
  double cs = 0, sc = 0, csc = 0, scs = 0, cscs = 0, scsc = 0, cscsc = 0;
};
RegionAreas region_areas(const Model& model, double c_L, double c_R);

/// Degeneracy consistency along the label changes of a layout.
struct BoundaryCheck {
  int pairs = 0;
  int failures = 0;  // constructions that could not be built on the boundary
  double max_l1 = 0.0;
  std::string worst;  // description of the worst pair
};
BoundaryCheck boundary_consistency(const RiemannSolver& solver, const Layout& layout,
                                   int threads = 0);

}  // namespace chemflood
