#pragma once

#include <array>
#include <optional>

#include "chemflood/model.hpp"

namespace chemflood {

enum class Region { OmegaL, OmegaR, Locus };

const char* to_string(Region r);

struct CharData {
  double lambda_s = 0.0;
  double lambda_c = 0.0;
  std::array<double, 2> r_c{};  // (-f_c, lambda_s - lambda_c)
  Region region = Region::OmegaL;
};

double lambda_c(const Model& model, double s, double c);
/// lambda_s - lambda_c
double lambda_gap(const Model& model, double s, double c);

CharData char_data(const Model& model, State u);

/// Characteristic matrix [[f_s, f_c], [0, f/(s+a_c)]] in (s,c) variables.
std::array<std::array<double, 2>, 2> characteristic_matrix(const Model& model, State u);

/// Root s in (0,1) of lambda_s = lambda_c at fixed c.
double coincidence_point(const Model& model, double c);

/// Jacobian of the c-eigenvector field (-f_c, lambda_s - lambda_c).
std::array<std::array<double, 2>, 2> rarefaction_linearization(const Model& model, State u);

struct SaddlePoint {
  State u_star;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  std::array<double, 2> dir_plus{};   // (ds, dc), unit, dc > 0
  std::array<double, 2> dir_minus{};
  std::array<std::array<double, 2>, 2> L{};
  double residual_fc = 0.0;
  double residual_locus = 0.0;
  int newton_iterations = 0;
};

SaddlePoint find_saddle(const Model& model);

/// The fan of chords through the pivot (-h, 0) at fixed c.
/// phi(s) = f(s,c)/(s+h) rises on (0, s_peak] and falls on [s_peak, 1].
class PivotFan {
 public:
  PivotFan(const Model& model, double c, double h);

  double phi(double s) const;
  double s_peak() const { return s_peak_; }
  double peak() const { return peak_; }
  double end_value() const { return end_; }  // phi(1) = 1/(1+h)

  /// Root of phi = v on the rising branch, absent when v is above the peak.
  std::optional<double> rising_root(double v) const;
  /// Root of phi = v on the falling branch, absent when v is outside [phi(1), peak].
  std::optional<double> falling_root(double v) const;
  /// Other intersection of the chord through (s, f(s,c)); s itself at the peak.
  std::optional<double> partner(double s) const;

 private:
  const Model* model_;
  double c_, h_;
  double s_peak_, peak_, end_;
};

}  // namespace chemflood
