#include "chemflood/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chemflood/errors.hpp"
#include "chemflood/roots.hpp"

namespace chemflood {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTie = 1e-9;        // classification tolerance
constexpr double kForcedTie = 1e-7;  // composite-curve snapping in forced constructions
constexpr double kSnap = 1e-12;      // s-jumps below this are dropped

std::string fmt_state(State u) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << u.s << "," << u.c << ")";
  return os.str();
}

/// Appends waves left to right and enforces speed compatibility.
class Builder {
 public:
  Builder(const Model& m, State uL, double tol) : m_(m), cur_(uL), tol_(tol) {}

  State current() const { return cur_; }

  void s_waves(double s_to) {
    if (std::abs(s_to - cur_.s) <= kSnap) {
      cur_.s = s_to;
      return;
    }
    auto group = s_wave_group(m_, cur_.c, cur_.s, s_to, last_, tol_);
    for (auto& w : group) push(std::move(w));
  }

  void c_rare(const RarefactionCurve& curve, double c_to) {
    if (c_to - cur_.c <= 1e-14) return;
    Wave w;
    w.kind = WaveKind::CRarefaction;
    w.curve = curve.restricted(cur_.c, c_to);
    w.left = cur_;
    w.right = curve.at(c_to);
    w.speed_lo = lambda_c(m_, w.left.s, w.left.c);
    w.speed_hi = lambda_c(m_, w.right.s, w.right.c);
    check_entry(w.speed_lo, "c-rarefaction");
    push(std::move(w));
  }

  void c_shock(State to) {
    Shock sh = make_shock(m_, cur_, to);
    Wave w;
    w.kind = WaveKind::CShock;
    w.left = cur_;
    w.right = to;
    w.speed_lo = w.speed_hi = sh.v;
    w.shock = sh;
    check_entry(sh.v, "c-shock");
    push(std::move(w));
  }

  RiemannSolution finish(State uL, State uR, RegionLabel label, double kappa) {
    if (std::abs(cur_.s - uR.s) > 1e-9 || std::abs(cur_.c - uR.c) > 1e-12)
      throw StructureError("construction ends at " + fmt_state(cur_) + " instead of " +
                           fmt_state(uR));
    if (!waves_.empty()) waves_.back().right = uR;
    RiemannSolution sol;
    sol.u_L = uL;
    sol.u_R = uR;
    sol.kappa = kappa;
    sol.label = label;
    sol.waves = std::move(waves_);
    sol.states.push_back(uL);
    for (const auto& w : sol.waves) sol.states.push_back(w.right);
    return sol;
  }

 private:
  void check_entry(double speed, const char* what) {
    if (speed < last_ - tol_ * std::max(1.0, std::abs(speed))) {
      std::ostringstream os;
      os.precision(17);
      os << what << " at " << fmt_state(cur_) << " has speed " << speed
         << " below the preceding wave speed " << last_;
      throw CompatibilityError(os.str());
    }
  }
  void push(Wave w) {
    // absorb roundoff overlap at junctions so reported speeds are monotone
    if (!waves_.empty() && w.speed_lo < last_) {
      Wave& p = waves_.back();
      if (w.kind == WaveKind::SRarefaction || w.kind == WaveKind::CRarefaction)
        w.speed_lo = std::min(last_, w.speed_hi);
      else if (p.kind == WaveKind::SRarefaction || p.kind == WaveKind::CRarefaction)
        p.speed_hi = std::max(w.speed_lo, p.speed_lo);
      last_ = p.speed_hi;
    }
    cur_ = w.right;
    last_ = std::max(last_, w.speed_hi);
    waves_.push_back(std::move(w));
  }

  const Model& m_;
  State cur_;
  double tol_;
  double last_ = -kInf;
  std::vector<Wave> waves_;
};

/// First + to - crossing of D on [lo, hi]; endpoints accepted within `slack` in forced mode.
double crossing(const std::function<double(double)>& D, double lo, double hi, double slack,
                const char* what) {
  if (!(hi >= lo)) throw StructureError(std::string(what) + ": empty search interval");
  const int n = 64;
  double a = lo, fa = D(lo);
  if (fa <= 0.0) {
    if (fa >= -slack) return lo;
    throw StructureError(std::string(what) + ": intersection function negative at the start");
  }
  if (hi == lo) {
    if (fa <= slack) return lo;
    throw StructureError(std::string(what) + ": degenerate search interval");
  }
  for (int k = 1; k <= n; ++k) {
    const double b = k == n ? hi : lo + (hi - lo) * double(k) / n;
    const double fb = D(b);
    if (fb <= 0.0) {
      if (fb == 0.0) return b;
      return roots::solve(D, a, b, 1e-15, fa, fb);
    }
    a = b;
    fa = fb;
  }
  if (fa <= slack) return hi;
  std::ostringstream os;
  os.precision(17);
  os << what << ": no intersection on [" << lo << "," << hi << "], end value " << fa;
  throw StructureError(os.str());
}

}  // namespace

const char* to_string(WaveKind k) {
  switch (k) {
    case WaveKind::SRarefaction: return "SRarefaction";
    case WaveKind::SShock: return "SShock";
    case WaveKind::CRarefaction: return "CRarefaction";
    case WaveKind::CShock: return "CShock";
  }
  return "?";
}

const char* to_string(Structure s) {
  switch (s) {
    case Structure::SingleS: return "single_s";
    case Structure::SingleC: return "single_c";
    case Structure::CS: return "cs";
    case Structure::SC: return "sc";
    case Structure::SCS: return "scs";
    case Structure::CSC: return "csc";
    case Structure::CSCS: return "cscs";
    case Structure::SCSC: return "scsc";
    case Structure::CSCSC: return "cscsc";
    case Structure::SCOvercomp: return "sc_overcomp";
  }
  return "?";
}

std::optional<Structure> structure_from_string(const std::string& s) {
  for (Structure t : {Structure::SingleS, Structure::SingleC, Structure::CS, Structure::SC,
                      Structure::SCS, Structure::CSC, Structure::CSCS, Structure::SCSC,
                      Structure::CSCSC, Structure::SCOvercomp})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

const char* to_string(RegionCase r) {
  switch (r) {
    case RegionCase::U_cs: return "U_cs";
    case RegionCase::U_sc: return "U_sc";
    case RegionCase::U_scs: return "U_scs";
    case RegionCase::OvercompBoundary: return "overcomp_boundary";
    case RegionCase::U_csc: return "U_csc";
    case RegionCase::U_cscs: return "U_cscs";
    case RegionCase::U_scsc: return "U_scsc";
    case RegionCase::U_cscsc: return "U_cscsc";
    case RegionCase::BL: return "BL";
    case RegionCase::MonotoneJnW: return "monotone_JnW";
  }
  return "?";
}

std::string RegionLabel::name() const {
  if (region == RegionCase::MonotoneJnW) return std::string("monotone_JnW_") + to_string(structure);
  return to_string(region);
}

namespace {

Structure structure_of(RegionCase r) {
  switch (r) {
    case RegionCase::U_cs: return Structure::CS;
    case RegionCase::U_sc: return Structure::SC;
    case RegionCase::U_scs: return Structure::SCS;
    case RegionCase::OvercompBoundary: return Structure::SCOvercomp;
    case RegionCase::U_csc: return Structure::CSC;
    case RegionCase::U_cscs: return Structure::CSCS;
    case RegionCase::U_scsc: return Structure::SCSC;
    case RegionCase::U_cscsc: return Structure::CSCSC;
    case RegionCase::BL: return Structure::SingleS;
    case RegionCase::MonotoneJnW: return Structure::SingleC;
  }
  return Structure::SingleS;
}

}  // namespace

// ---------------------------------------------------------------------------
// s-wave groups

std::vector<Wave> s_wave_group(const Model& model, double c, double a, double b, double entry,
                               double tol) {
  std::vector<Wave> out;
  if (a == b) return out;
  const double sI = inflection_point(model, c);
  auto fs = [&](double s) { return model.f_s(s, c); };
  auto rare = [&](double s0, double s1) {
    Wave w;
    w.kind = WaveKind::SRarefaction;
    w.left = {s0, c};
    w.right = {s1, c};
    w.speed_lo = fs(s0);
    w.speed_hi = fs(s1);
    out.push_back(w);
  };
  auto shock = [&](double s0, double s1) {
    Wave w;
    w.kind = WaveKind::SShock;
    w.left = {s0, c};
    w.right = {s1, c};
    Shock sh = make_shock(model, w.left, w.right);
    w.speed_lo = w.speed_hi = sh.v;
    w.shock = sh;
    if (!out.empty() && out.back().speed_hi > sh.v)
      out.back().speed_hi = std::max(sh.v, out.back().speed_lo);
    out.push_back(w);
  };
  auto f = [&](double s) { return model.f(s, c); };
  if (a < b) {
    // lower convex envelope on [a, b]
    if (b <= sI) {
      rare(a, b);
    } else if (a >= sI) {
      shock(a, b);
    } else {
      auto psi = [&](double t) { return fs(t) * (b - t) - (f(b) - f(t)); };
      const double pa = psi(a);
      if (pa >= 0.0) {
        shock(a, b);
      } else {
        const double t = roots::solve(psi, a, sI, 1e-15, pa, psi(sI));
        if (t - a > kSnap) rare(a, t);
        shock(t, b);
      }
    }
  } else {
    // upper concave envelope on [b, a]
    if (b >= sI) {
      rare(a, b);
    } else if (a <= sI) {
      shock(a, b);
    } else {
      auto chi = [&](double t) { return fs(t) * (t - b) - (f(t) - f(b)); };
      const double ca = chi(a);
      if (ca >= 0.0) {
        shock(a, b);
      } else {
        const double t = roots::solve(chi, sI, a, 1e-15, chi(sI), ca);
        if (a - t > kSnap) rare(a, t);
        shock(t, b);
      }
    }
  }
  const double first = out.front().speed_lo;
  if (first < entry - tol * std::max(1.0, std::abs(first))) {
    std::ostringstream os;
    os.precision(17);
    os << "s-wave group at c=" << c << " from " << a << " to " << b << " starts at speed " << first
       << " below the entry speed " << entry;
    throw CompatibilityError(os.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// c_L < c_R

RarefactionContext::RarefactionContext(const Model& model, const Separatrices& seps, double c_L,
                                       double c_R)
    : model_(&model), frame_(rarefaction_frame(model, seps, c_L, c_R)) {
  s_1L_ = frame_.in_L.s_at(c_L);
  s_2L_ = frame_.in_R.s_at(c_L);
  s_3R_ = frame_.out_L.s_at(c_R);
  s_4R_ = frame_.out_R.s_at(c_R);
  const auto k2 = critical_rarefaction_value(model, {s_2L_, c_L});
  const auto k3 = critical_rarefaction_value(model, {s_3R_, c_R});
  if (!k2 || !k3) throw StructureError("critical values of the frame end points are missing");
  s_2K_ = *k2;
  s_3K_ = *k3;
}

RarefactionCurve RarefactionContext::left_curve(double s_L, double tol) const {
  if (std::abs(s_L - s_1L_) <= tol)
    return RarefactionCurve::join(frame_.in_L, frame_.out_L);
  return integrate_curve(*model_, {s_L, c_L()}, Direction::TowardCHi, c_R());
}

RarefactionCurve RarefactionContext::right_curve(double s_R, double tol) const {
  if (std::abs(s_R - s_4R_) <= tol)
    return RarefactionCurve::join(frame_.in_R, frame_.out_R);
  return integrate_curve(*model_, {s_R, c_R()}, Direction::TowardCLo, c_L());
}

double RarefactionContext::b_cs(double s_L) const {
  const RarefactionCurve g = left_curve(s_L);
  if (g.c_hi() < c_R() - 1e-12) throw StructureError("left curve does not reach c_R");
  const auto k = critical_rarefaction_value(*model_, g.at(c_R()));
  return k ? *k : 1.0;
}

double RarefactionContext::b_sc(double s_R) const {
  const RarefactionCurve g = right_curve(s_R);
  if (g.c_lo() > c_L() + 1e-12) throw StructureError("right curve does not reach c_L");
  const auto k = critical_rarefaction_value(*model_, g.at(c_L()));
  if (!k) throw StructureError("critical value missing on the right curve at c_L");
  return *k;
}

RegionCase RarefactionContext::classify(double s_L, double s_R, const std::function<double()>& bcs,
                                        const std::function<double()>& bsc) const {
  auto get_bcs = [&] { return bcs ? bcs() : b_cs(s_L); };
  auto get_bsc = [&] { return bsc ? bsc() : b_sc(s_R); };
  if (s_L < s_1L_ - kTie) {
    if (s_R <= get_bcs()) return RegionCase::U_cs;
    if (s_R >= s_4R_ && s_L >= get_bsc()) return RegionCase::U_sc;
    return RegionCase::U_csc;
  }
  if (s_L >= s_2K_) {
    if (s_R <= s_3K_) return RegionCase::U_scs;
    if (s_R <= s_4R_) return RegionCase::U_scsc;
    return RegionCase::U_sc;
  }
  if (s_R <= s_3K_) return RegionCase::U_cscs;
  if (s_R <= s_4R_) return RegionCase::U_cscsc;
  return s_L >= get_bsc() ? RegionCase::U_sc : RegionCase::U_csc;
}

RiemannSolution RarefactionContext::build(State uL, State uR, RegionCase region,
                                          bool forced) const {
  const Model& m = *model_;
  const double tie = forced ? kForcedTie : kTie;
  const double slack = forced ? 1e-6 : 0.0;
  Builder b(m, uL, forced ? 1e-6 : 1e-9);
  const double cL = c_L(), cR = c_R();
  const double c_piv = frame_.pivot_state.c;
  const RarefactionCurve middle = RarefactionCurve::join(frame_.in_R, frame_.out_L);

  auto sK_or = [&](State u, double absent) {
    const auto k = critical_rarefaction_value(m, u);
    return k ? *k : absent;
  };

  // c-rarefaction from u_L, s-shock onto in_R; returns the crossing level.
  auto left_part = [&]() {
    if (std::abs(uL.s - s_1L_) <= tie) {
      b.c_rare(frame_.in_L, c_piv);
      return c_piv;
    }
    const RarefactionCurve gl = left_curve(uL.s, 0.0);
    const double hi = std::min(gl.c_hi(), frame_.in_R.c_hi());
    auto D = [&](double c) { return sK_or(gl.at(c), 2.0) - frame_.in_R.s_at(c); };
    const double cp = crossing(D, cL, hi, slack, "left critical curve vs in_R");
    b.c_rare(gl, cp);
    b.s_waves(frame_.in_R.s_at(cp));
    return cp;
  };
  // s-shock from out_L onto the curve through u_R, then the final c-rarefaction.
  auto right_part = [&](double c_from) {
    if (std::abs(uR.s - s_4R_) <= tie) {
      b.c_rare(middle, c_piv);
      b.c_rare(frame_.out_R, cR);
      return;
    }
    const RarefactionCurve gr = right_curve(uR.s, 0.0);
    const double lo = std::max(gr.c_lo(), std::max(c_piv, c_from));
    auto D = [&](double c) { return sK_or(frame_.out_L.at(c), 2.0) - gr.s_at(c); };
    const double cp = crossing(D, lo, cR, slack, "out_L critical curve vs right curve");
    b.c_rare(middle, cp);
    b.s_waves(gr.s_at(cp));
    b.c_rare(gr, cR);
  };

  switch (region) {
    case RegionCase::U_cs: {
      const RarefactionCurve gl = left_curve(uL.s, tie);
      if (gl.c_hi() < cR - 1e-12) throw StructureError("left curve ends before c_R");
      b.c_rare(gl, cR);
      b.s_waves(uR.s);
      break;
    }
    case RegionCase::U_sc: {
      const RarefactionCurve gr = right_curve(uR.s, tie);
      if (gr.c_lo() > cL + 1e-12) throw StructureError("right curve starts after c_L");
      b.s_waves(gr.s_at(cL));
      b.c_rare(gr, cR);
      break;
    }
    case RegionCase::U_csc: {
      const RarefactionCurve gl = left_curve(uL.s, tie);
      const RarefactionCurve gr = right_curve(uR.s, tie);
      const double lo = std::max(gl.c_lo(), gr.c_lo());
      const double hi = std::min(gl.c_hi(), gr.c_hi());
      auto D = [&](double c) { return sK_or(gl.at(c), 2.0) - gr.s_at(c); };
      const double cp = crossing(D, lo, hi, slack, "left critical curve vs right curve");
      b.c_rare(gl, cp);
      b.s_waves(gr.s_at(cp));
      b.c_rare(gr, cR);
      break;
    }
    case RegionCase::U_scs:
      b.s_waves(s_2L_);
      b.c_rare(middle, cR);
      b.s_waves(uR.s);
      break;
    case RegionCase::U_cscs: {
      left_part();
      b.c_rare(middle, cR);
      b.s_waves(uR.s);
      break;
    }
    case RegionCase::U_scsc:
      b.s_waves(s_2L_);
      right_part(cL);
      break;
    case RegionCase::U_cscsc: {
      const double cp = left_part();
      right_part(cp);
      break;
    }
    default:
      throw PreconditionError(std::string("region ") + to_string(region) +
                              " does not apply to c_L < c_R");
  }
  RegionLabel label;
  label.region = region;
  label.structure = structure_of(region);
  return b.finish(uL, uR, label, 0.0);
}

// ---------------------------------------------------------------------------
// c_L > c_R

ShockContext::ShockContext(const Model& model, double c_L, double c_R, double kappa)
    : model_(&model), frame_(model, c_L, c_R, kappa) {
  const CriticalSpeed cs = critical_speed(frame_);
  v_crit_ = cs.v;
  tangent_ = cs.tangent;
  residual_ = cs.residual;
  const auto s1 = frame_.fan_minus().rising_root(v_crit_);
  const auto s2 = frame_.fan_minus().falling_root(v_crit_);
  const auto r1 = frame_.fan_plus().rising_root(v_crit_);
  const auto r2 = frame_.fan_plus().falling_root(v_crit_);
  if (!s1 || !s2 || !r1 || !r2) throw StructureError("critical points missing at the shock speed");
  s_minus_ = *s2;
  s_plus_ = *r1;
  sK_minus_ = *s1;
  sK_plus_ = *r2;
}

double ShockContext::s_hat_L(double s_R) const {
  const double v = frame_.fan_plus().phi(s_R);
  const auto s = frame_.fan_minus().rising_root(std::min(v, frame_.fan_minus().peak()));
  if (!s) throw StructureError("overcompressive curve undefined at this s_R");
  return *s;
}

std::vector<std::pair<double, double>> ShockContext::overcompressive_curve(int n) const {
  std::vector<std::pair<double, double>> out;
  const double v1 = frame_.v1();
  for (int k = 0; k <= n; ++k) {
    const double v = k == n ? v_crit_ : v1 + (v_crit_ - v1) * double(k) / n;
    const auto sl = frame_.fan_minus().rising_root(v);
    const auto sr = frame_.fan_plus().falling_root(v);
    if (sl && sr) out.emplace_back(*sl, *sr);
  }
  return out;
}

RegionCase ShockContext::classify(double s_L, double s_R, double tol) const {
  if (s_L >= sK_minus_ && s_R <= sK_plus_) return RegionCase::U_scs;
  if (s_R >= sK_plus_) {
    const double sh = s_hat_L(s_R);
    if (std::abs(s_L - sh) <= tol) return RegionCase::OvercompBoundary;
    if (s_L > sh) return RegionCase::U_sc;
  }
  return RegionCase::U_cs;
}

RiemannSolution ShockContext::build(State uL, State uR, RegionCase region, bool forced) const {
  const Model& m = *model_;
  Builder b(m, uL, forced ? 1e-6 : 1e-9);
  const PivotFan& fl = frame_.fan_minus();
  const PivotFan& fr = frame_.fan_plus();
  switch (region) {
    case RegionCase::U_scs:
      b.s_waves(s_minus_);
      b.c_shock(u_plus());
      b.s_waves(uR.s);
      break;
    case RegionCase::U_sc:
    case RegionCase::OvercompBoundary: {
      const double v = fr.phi(uR.s);
      const auto sm = fl.falling_root(std::min(v, fl.peak()));
      if (!sm) throw StructureError("no fast intermediate state on the c_L row");
      b.s_waves(*sm);
      b.c_shock(uR);
      break;
    }
    case RegionCase::U_cs: {
      if (uL.s <= 0.0) throw UnsupportedCase("s_L = 0 with a c jump");
      const double v = fl.phi(uL.s);
      const auto sm = fr.rising_root(std::min(v, fr.peak()));
      if (!sm) throw StructureError("no slow intermediate state on the c_R row");
      b.c_shock({*sm, frame_.c_plus()});
      b.s_waves(uR.s);
      break;
    }
    default:
      throw PreconditionError(std::string("region ") + to_string(region) +
                              " does not apply to c_L > c_R");
  }
  RegionLabel label;
  label.region = region;
  label.structure = structure_of(region);
  return b.finish(uL, uR, label, frame_.kappa());
}

// ---------------------------------------------------------------------------
// solver

RiemannSolver::RiemannSolver(const Model& model, double kappa)
    : model_(model.is_validated() ? model : model.validated()),
      kappa_(kappa),
      seps_(chemflood::separatrices(model_)) {
  if (!(kappa > 0.0)) throw PreconditionError("kappa must be positive");
}

RarefactionContext RiemannSolver::rarefaction_context(double c_L, double c_R) const {
  return RarefactionContext(model_, seps_, c_L, c_R);
}

ShockContext RiemannSolver::shock_context(double c_L, double c_R) const {
  return ShockContext(model_, c_L, c_R, kappa_);
}

namespace {

void check_states(State uL, State uR) {
  for (State u : {uL, uR})
    if (!(u.s >= 0.0 && u.s <= 1.0 && u.c >= 0.0 && u.c <= 1.0))
      throw DomainError("state " + fmt_state(u) + " outside the unit square");
  if (uL.c != uR.c && uL.s <= 0.0) throw UnsupportedCase("s_L = 0 with c_L != c_R is not covered");
}

bool monotone(const Model& m, double c_L, double c_R) {
  const double cs = m.c_star();
  return !(std::min(c_L, c_R) <= cs && cs <= std::max(c_L, c_R));
}

}  // namespace

RegionLabel RiemannSolver::classify(State uL, State uR) const {
  check_states(uL, uR);
  if (uL.c == uR.c) return region_label(model_, uL.c, uR.c, RegionCase::BL);
  const RegionCase r = uL.c > uR.c ? shock_context(uL.c, uR.c).classify(uL.s, uR.s)
                                   : rarefaction_context(uL.c, uR.c).classify(uL.s, uR.s);
  return region_label(model_, uL.c, uR.c, r);
}

RiemannSolution RiemannSolver::solve(State uL, State uR) const {
  check_states(uL, uR);
  if (uL.c == uR.c) {
    Builder b(model_, uL, 1e-9);
    b.s_waves(uR.s);
    RegionLabel label{RegionCase::BL, Structure::SingleS};
    return b.finish(uL, uR, label, kappa_);
  }
  RiemannSolution sol;
  if (uL.c > uR.c) {
    const ShockContext ctx = shock_context(uL.c, uR.c);
    const RegionCase r = ctx.classify(uL.s, uR.s);
    sol = ctx.build(uL, uR, r, false);
  } else {
    const RarefactionContext ctx = rarefaction_context(uL.c, uR.c);
    const RegionCase r = ctx.classify(uL.s, uR.s);
    sol = ctx.build(uL, uR, r, false);
  }
  sol.label = region_label(model_, uL.c, uR.c, sol.label.region);
  sol.kappa = kappa_;
  const auto bad = check_solution(sol);
  if (!bad.empty()) throw StructureError("assembled solution violates: " + bad.front());
  return sol;
}

RiemannSolution RiemannSolver::solve_as(State uL, State uR, RegionCase region) const {
  check_states(uL, uR);
  RiemannSolution sol;
  if (uL.c == uR.c) return solve(uL, uR);
  if (uL.c > uR.c)
    sol = shock_context(uL.c, uR.c).build(uL, uR, region, true);
  else
    sol = rarefaction_context(uL.c, uR.c).build(uL, uR, region, true);
  sol.label = region_label(model_, uL.c, uR.c, region);
  sol.kappa = kappa_;
  return sol;
}

RegionLabel region_label(const Model& model, double c_L, double c_R, RegionCase r) {
  RegionLabel label;
  label.structure = structure_of(r);
  if (c_L == c_R) {
    label.region = RegionCase::BL;
    label.structure = Structure::SingleS;
    return label;
  }
  const double cs = model.c_star();
  const bool split = c_L > c_R ? (c_L > cs && cs > c_R) : !monotone(model, c_L, c_R);
  label.region = split ? r : RegionCase::MonotoneJnW;
  return label;
}

RegionLabel classify_pair(const Model& model, State uL, State uR, double kappa) {
  return RiemannSolver(model, kappa).classify(uL, uR);
}

RiemannSolution solve(const Model& model, State uL, State uR, double kappa) {
  return RiemannSolver(model, kappa).solve(uL, uR);
}

// ---------------------------------------------------------------------------
// profiles

State evaluate_profile(const Model& model, const RiemannSolution& sol, double xi) {
  State cur = sol.u_L;
  for (const Wave& w : sol.waves) {
    if (xi < w.speed_lo) return cur;
    const bool fan = w.kind == WaveKind::SRarefaction || w.kind == WaveKind::CRarefaction;
    if (fan && xi < w.speed_hi) {
      if (w.kind == WaveKind::SRarefaction) {
        const double c = w.left.c;
        auto g = [&](double s) { return model.f_s(s, c) - xi; };
        const double lo = std::min(w.left.s, w.right.s), hi = std::max(w.left.s, w.right.s);
        const double s = roots::bisect(g, lo, hi, 1e-15);
        return {s, c};
      }
      auto g = [&](double c) {
        const State u = w.curve.at(c);
        return lambda_c(model, u.s, u.c) - xi;
      };
      const double ga = w.speed_lo - xi, gb = w.speed_hi - xi;
      if (ga >= 0.0) return w.left;
      if (gb <= 0.0) return w.right;
      const double c = roots::solve(g, w.left.c, w.right.c, 1e-14, ga, gb);
      return w.curve.at(c);
    }
    cur = w.right;
  }
  return sol.u_R;
}

std::vector<std::string> check_solution(const RiemannSolution& sol, double tol) {
  std::vector<std::string> bad;
  State prev = sol.u_L;
  double last = -kInf;
  const double dir = sol.u_R.c - sol.u_L.c;
  for (size_t i = 0; i < sol.waves.size(); ++i) {
    const Wave& w = sol.waves[i];
    std::ostringstream id;
    id << "wave " << i << " (" << to_string(w.kind) << ")";
    if (std::abs(w.left.s - prev.s) > 1e-9 || std::abs(w.left.c - prev.c) > 1e-12)
      bad.push_back(id.str() + " does not start at the preceding state");
    if (w.speed_lo > w.speed_hi + tol) bad.push_back(id.str() + " has speed_lo > speed_hi");
    if (w.speed_lo < last - tol * std::max(1.0, std::abs(last)))
      bad.push_back(id.str() + " is slower than the preceding wave");
    if ((w.right.c - w.left.c) * dir < 0.0) bad.push_back(id.str() + " reverses the c direction");
    if (dir > 0.0 && w.kind == WaveKind::CShock) bad.push_back(id.str() + " is a c-shock with c_L < c_R");
    if (dir < 0.0 && w.kind == WaveKind::CRarefaction)
      bad.push_back(id.str() + " is a c-rarefaction with c_L > c_R");
    last = std::max(last, w.speed_hi);
    prev = w.right;
  }
  if (std::abs(prev.s - sol.u_R.s) > 1e-9 || prev.c != sol.u_R.c)
    bad.push_back("last state differs from u_R");
  return bad;
}

double profile_l1(const Model& model, const RiemannSolution& a, const RiemannSolution& b,
                  double lo, double hi, int n) {
  const double dx = (hi - lo) / n;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double xi = lo + (k + 0.5) * dx;
    const State p = evaluate_profile(model, a, xi);
    const State q = evaluate_profile(model, b, xi);
    sum += (std::abs(p.s - q.s) + std::abs(p.c - q.c)) * dx;
  }
  return sum;
}

}  // namespace chemflood
