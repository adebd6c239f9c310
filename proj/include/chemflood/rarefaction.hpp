#pragma once

#include <optional>
#include <vector>

#include "chemflood/characteristics.hpp"
#include "chemflood/model.hpp"
#include "chemflood/ode.hpp"

namespace chemflood {

enum class Direction { TowardCLo, TowardCHi };

enum class Terminus { ReachedC0, ReachedC1, ReachedTarget, HitLocus, HitBoundary, Saddle, Launch };

enum class Side { OmegaL, OmegaR, Mixed, Boundary };

const char* to_string(Terminus t);
const char* to_string(Side s);

/// Integral curve of the c-eigenvector field, stored as a graph s(c).
/// Pieces are dense-output steps ordered by increasing c.
class RarefactionCurve {
 public:
  RarefactionCurve() = default;

  static RarefactionCurve constant(double s, double c_lo, double c_hi);
  static RarefactionCurve point(State u);
  /// Straight piece between two states with different c.
  static RarefactionCurve segment(State a, State b);
  /// Concatenates two curves meeting at lower.c_hi() == upper.c_lo().
  static RarefactionCurve join(const RarefactionCurve& lower, const RarefactionCurve& upper);

  bool empty() const { return pieces_.empty(); }
  double c_lo() const;
  double c_hi() const;
  double s_at(double c) const;
  State at(double c) const { return {s_at(c), c}; }
  State lo_state() const { return at(c_lo()); }
  State hi_state() const { return at(c_hi()); }
  bool is_point() const;

  Terminus terminus_lo() const { return term_lo_; }
  Terminus terminus_hi() const { return term_hi_; }
  Side side() const { return side_; }

  /// Sub-curve over [c0, c1] (clamped to the stored range).
  RarefactionCurve restricted(double c0, double c1) const;

  /// Step end points in increasing c.
  std::vector<State> knots() const;
  /// n+1 points uniformly spaced in c.
  std::vector<State> sample(int n) const;

 private:
  struct Piece {
    ode::DenseStep step;
    double th_lo, th_hi;  // theta at the low-c and high-c ends
    double c_lo, c_hi;
  };
  double theta_for(const Piece& p, double c) const;

  std::vector<Piece> pieces_;
  Terminus term_lo_ = Terminus::Launch;
  Terminus term_hi_ = Terminus::Launch;
  Side side_ = Side::Boundary;

  friend RarefactionCurve trace(const Model&, State, int, double, Terminus);
};

/// Integrates the curve through u0 toward c = 0 or c = 1 (or c_target when given).
RarefactionCurve integrate_curve(const Model& model, State u0, Direction dir,
                                 std::optional<double> c_target = std::nullopt);

struct Separatrices {
  SaddlePoint saddle;
  RarefactionCurve g1, g2, g3, g4;
};

Separatrices separatrices(const Model& model, const SaddlePoint& saddle);
Separatrices separatrices(const Model& model);

/// Second state on the c-row with the same lambda_c; s itself on the locus.
std::optional<double> critical_rarefaction_value(const Model& model, State u);

/// Pointwise critical states of a rarefaction curve.
class CriticalCurve {
 public:
  CriticalCurve(const Model& model, const RarefactionCurve& curve) : model_(&model), curve_(&curve) {}
  std::optional<double> s_at(double c) const;
  double c_lo() const { return curve_->c_lo(); }
  double c_hi() const { return curve_->c_hi(); }
  /// Samples (c, s_K) over the range, skipping rows where s_K is absent.
  std::vector<State> sample(int n) const;

 private:
  const Model* model_;
  const RarefactionCurve* curve_;
};

/// Branches of c-rarefaction curves that organise the c_L < c_R solutions.
/// With c_L <= c* <= c_R these are the separatrices through the saddle; otherwise
/// the pivot is the locus point at the end of the c-range nearest to c*.
struct RarefactionFrame {
  enum class Pivot { Saddle, LocusAtRight, LocusAtLeft };
  Pivot pivot = Pivot::Saddle;
  State pivot_state;
  double c_L = 0.0, c_R = 0.0;
  RarefactionCurve in_L, in_R;    // from c_L up to the pivot (Gamma_1, Gamma_2)
  RarefactionCurve out_L, out_R;  // from the pivot up to c_R (Gamma_3, Gamma_4)
};

RarefactionFrame rarefaction_frame(const Model& model, const Separatrices& seps, double c_L,
                                   double c_R);

struct KeyPoints {
  double s_1L, s_2L, s_3R, s_4R;
  std::optional<double> s_1K;
  double s_2K, s_3K;
  double s_0L, s_0R, s_0K;
};

KeyPoints key_points(const Model& model, const RarefactionFrame& frame);
KeyPoints key_points(const Model& model, double c_L, double c_R);

}  // namespace chemflood
