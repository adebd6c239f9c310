#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chemflood/model.hpp"
#include "chemflood/rarefaction.hpp"
#include "chemflood/shock.hpp"

namespace chemflood {

enum class WaveKind { SRarefaction, SShock, CRarefaction, CShock };

enum class Structure { SingleS, SingleC, CS, SC, SCS, CSC, CSCS, SCSC, CSCSC, SCOvercomp };

enum class RegionCase {
  U_cs,
  U_sc,
  U_scs,
  OvercompBoundary,
  U_csc,
  U_cscs,
  U_scsc,
  U_cscsc,
  BL,
  MonotoneJnW
};

const char* to_string(WaveKind k);
const char* to_string(Structure s);
const char* to_string(RegionCase r);
std::optional<Structure> structure_from_string(const std::string& s);

struct RegionLabel {
  RegionCase region = RegionCase::BL;
  Structure structure = Structure::SingleS;  // sub-structure, also for monotone cases
  /// Name used in layouts: the region, or monotone_JnW_<structure>.
  std::string name() const;
  bool operator==(const RegionLabel& o) const {
    return region == o.region && structure == o.structure;
  }
};

struct Wave {
  WaveKind kind = WaveKind::SShock;
  State left;
  State right;
  double speed_lo = 0.0;
  double speed_hi = 0.0;
  std::optional<Shock> shock;
  RarefactionCurve curve;  // CRarefaction only, restricted to [left.c, right.c]
};

struct RiemannSolution {
  State u_L;
  State u_R;
  double kappa = 1.0;
  RegionLabel label;
  std::vector<Wave> waves;
  /// Constant states from u_L to u_R, one more than the number of waves.
  std::vector<State> states;
};

/// Buckley-Leverett waves at fixed c from s_from to s_to; the first speed must not be
/// below entry_speed (CompatibilityError otherwise).
std::vector<Wave> s_wave_group(const Model& model, double c, double s_from, double s_to,
                               double entry_speed, double tol = 1e-9);

/// Geometry of c_L < c_R problems: rarefaction frame, key values and boundary curves.
class RarefactionContext {
 public:
  RarefactionContext(const Model& model, const Separatrices& seps, double c_L, double c_R);

  const RarefactionFrame& frame() const { return frame_; }
  double c_L() const { return frame_.c_L; }
  double c_R() const { return frame_.c_R; }
  double s_1L() const { return s_1L_; }
  double s_2L() const { return s_2L_; }
  double s_3R() const { return s_3R_; }
  double s_4R() const { return s_4R_; }
  double s_2K() const { return s_2K_; }
  double s_3K() const { return s_3K_; }
  bool saddle_pivot() const { return frame_.pivot == RarefactionFrame::Pivot::Saddle; }

  /// Curve through (s_L, c_L) toward c_R; the composite in_L + out_L on s_1L.
  RarefactionCurve left_curve(double s_L, double tol = 1e-9) const;
  /// Curve through (s_R, c_R) toward c_L; the composite in_R + out_R on s_4R.
  RarefactionCurve right_curve(double s_R, double tol = 1e-9) const;
  /// Upper s_R of the cs region for s_L < s_1L (1 when the critical value is absent).
  double b_cs(double s_L) const;
  /// Lower s_L of the sc region for s_R >= s_4R.
  double b_sc(double s_R) const;

  /// Classification with optional precomputed boundary values.
  RegionCase classify(double s_L, double s_R, const std::function<double()>& bcs = {},
                      const std::function<double()>& bsc = {}) const;

  RiemannSolution build(State uL, State uR, RegionCase region, bool forced) const;

 private:
  const Model* model_;
  RarefactionFrame frame_;
  double s_1L_, s_2L_, s_3R_, s_4R_, s_2K_, s_3K_;
};

/// Geometry of c_L > c_R problems at fixed kappa.
class ShockContext {
 public:
  ShockContext(const Model& model, double c_L, double c_R, double kappa);

  const ShockFrame& frame() const { return frame_; }
  double v_crit() const { return v_crit_; }
  bool tangent() const { return tangent_; }
  double residual() const { return residual_; }
  State u_minus() const { return {s_minus_, frame_.c_minus()}; }
  State u_plus() const { return {s_plus_, frame_.c_plus()}; }
  double sK_minus() const { return sK_minus_; }
  double sK_plus() const { return sK_plus_; }
  /// Left end of the overcompressive curve for s_R >= sK_plus.
  double s_hat_L(double s_R) const;
  /// Overcompressive curve (s_L(v), s_R(v)) for v in [v1, v_crit].
  std::vector<std::pair<double, double>> overcompressive_curve(int n) const;

  RegionCase classify(double s_L, double s_R, double tol = 1e-9) const;
  RiemannSolution build(State uL, State uR, RegionCase region, bool forced) const;

 private:
  const Model* model_;
  ShockFrame frame_;
  double v_crit_ = 0.0;
  bool tangent_ = false;
  double residual_ = 0.0;
  double s_minus_ = 0.0, s_plus_ = 0.0, sK_minus_ = 0.0, sK_plus_ = 0.0;
};

/// Solver bound to one validated model and dissipation ratio.
class RiemannSolver {
 public:
  RiemannSolver(const Model& model, double kappa);

  const Model& model() const { return model_; }
  double kappa() const { return kappa_; }
  const Separatrices& separatrices() const { return seps_; }

  RegionLabel classify(State uL, State uR) const;
  RiemannSolution solve(State uL, State uR) const;
  /// Builds the construction of `region` even when (uL, uR) sits on its boundary.
  RiemannSolution solve_as(State uL, State uR, RegionCase region) const;

  RarefactionContext rarefaction_context(double c_L, double c_R) const;
  ShockContext shock_context(double c_L, double c_R) const;

 private:
  Model model_;
  double kappa_;
  Separatrices seps_;
};

/// Label for a region of the (c_L, c_R) frame: monotone frames get monotone_JnW.
RegionLabel region_label(const Model& model, double c_L, double c_R, RegionCase r);

RegionLabel classify_pair(const Model& model, State uL, State uR, double kappa);
RiemannSolution solve(const Model& model, State uL, State uR, double kappa);

/// Self-similar solution at xi = x/t; right-continuous at shocks.
State evaluate_profile(const Model& model, const RiemannSolution& sol, double xi);

/// Speed-ordering, continuity and c-monotonicity checks; returns the failures.
std::vector<std::string> check_solution(const RiemannSolution& sol, double tol = 1e-8);

/// L1 distance of two profiles in xi over [lo, hi] (both s and c components).
double profile_l1(const Model& model, const RiemannSolution& a, const RiemannSolution& b,
                  double lo, double hi, int n = 20000);

}  // namespace chemflood
