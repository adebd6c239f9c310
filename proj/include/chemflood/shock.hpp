#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemflood/characteristics.hpp"
#include "chemflood/model.hpp"

namespace chemflood {

enum class ShockFamily { SShock, CShock };

/// Ordering of characteristic speeds against the shock speed.
/// NonCompressive collects the orderings that none of the four named configurations cover.
enum class ShockClass { Lax1, Lax2, Overcompressive, Crossing, Degenerate, NonCompressive };

const char* to_string(ShockFamily f);
const char* to_string(ShockClass c);

struct Shock {
  State u_minus;
  State u_plus;
  double v = 0.0;
  ShockFamily family = ShockFamily::SShock;
  ShockClass classification = ShockClass::Degenerate;
  double h = 0.0;  // [a]/[c], c-shocks only
  double d1 = 0.0;
  double d2 = 0.0;
};

struct RhResidual {
  double mass = 0.0;      // |v[s] - [f]|
  double chemical = 0.0;  // |v[cs+a] - [cf]|
  double max() const { return mass > chemical ? mass : chemical; }
};

RhResidual rh_residual(const Model& model, State u_minus, State u_plus, double v);

/// Speed of the discontinuity joining u_minus and u_plus.
/// Throws DegenerateError for equal states and RhError when the pair is not connectable.
double rh_speed(const Model& model, State u_minus, State u_plus);

/// Shock with speed, travelling-wave constants and classification filled in.
Shock make_shock(const Model& model, State u_minus, State u_plus);

/// Second intersection of f(., c) with the line through (-h, 0) and (s, f(s,c)).
/// On tangency the value is s itself and `tangent` is set.
struct CriticalShockValue {
  std::optional<double> s;
  bool tangent = false;
};
CriticalShockValue critical_shock_value(const Model& model, State u, double h);

/// Travelling-wave vector field s' = (f - v(s+d1))/A, c' = (v/kappa)(d1 c - d2 - a(c)).
class TwField {
 public:
  TwField(const Model& model, double v, double d1, double d2, double kappa, double A = 1.0);
  std::array<double, 2> operator()(State u) const;
  /// Reduced slope ds/dc.
  double ds_dc(double s, double c) const;
  double g(double c) const;  // d1 c - d2 - a(c)

 private:
  const Model* model_;
  double v_, d1_, d2_, kappa_, A_;
};

TwField tw_field(const Model& model, double v, double d1, double d2, double kappa);

/// Phase-plane geometry for c-shocks between the rows c_minus > c_plus at fixed kappa.
class ShockFrame {
 public:
  ShockFrame(const Model& model, double c_minus, double c_plus, double kappa);

  double c_minus() const { return c_minus_; }
  double c_plus() const { return c_plus_; }
  double kappa() const { return kappa_; }
  double h() const { return h_; }
  double d2() const { return d2_; }
  double v1() const { return fan_minus_.end_value(); }
  double v_max() const { return std::min(fan_minus_.peak(), fan_plus_.peak()); }
  const PivotFan& fan_minus() const { return fan_minus_; }
  const PivotFan& fan_plus() const { return fan_plus_; }

  /// Signed separation at the middle row between the saddle trajectory leaving the
  /// falling root on c_minus and the one entering the rising root on c_plus.
  /// Infinite below v1; trajectories leaving the strip map to +-(10 + remaining c).
  double miss(double v) const;

  /// Saddle trajectory as (s, c) points: from the c_minus row down when `from_minus`,
  /// otherwise from the c_plus row up. Stops at c_end or on leaving the box.
  std::vector<State> saddle_trajectory(double v, bool from_minus, double c_end) const;

 private:
  struct Sweep {
    double s = 0.0;
    bool exited = false;
    double c_exit = 0.0;
  };
  Sweep sweep(double v, double s0, double c0, double c1, std::vector<State>* path) const;

  const Model* model_;
  double c_minus_, c_plus_, kappa_;
  double h_, d2_;
  PivotFan fan_minus_, fan_plus_;
};

/// Speed of the saddle-to-saddle connection between the rows, or the tangency speed when
/// the miss function keeps its sign.
struct CriticalSpeed {
  double v = 0.0;
  bool tangent = false;
  double residual = 0.0;
};
CriticalSpeed critical_speed(const ShockFrame& frame);

struct Connection {
  Shock shock;
  double residual = 0.0;  // |miss(v)|
  RhResidual rh;
};

/// Crossing c-shock selected by the travelling-wave criterion for c_L > c* > c_R.
Connection connect_undercompressive(const Model& model, double c_L, double c_R, double kappa);

ShockClass classify_shock(const Model& model, const Shock& shock);

struct Admissibility {
  bool admissible = false;
  std::string reason;
};

Admissibility is_admissible(const Model& model, const Shock& shock, double kappa);

/// Oleinik chord condition for a jump at fixed c.
bool oleinik_holds(const Model& model, double c, double s_minus, double s_plus, double v);

/// Saturation below which admissible shocks are Lax with respect to the s-family.
double lax_small_s_threshold(const Model& model);

}  // namespace chemflood
