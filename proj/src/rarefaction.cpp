#include "chemflood/rarefaction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chemflood/errors.hpp"
#include "chemflood/roots.hpp"

namespace chemflood {

namespace {

constexpr double kSeparatrixOffset = 1e-6;
constexpr double kLocusOffset = 1e-5;
constexpr double kMaxArc = 10.0;

ode::Options curve_options() {
  ode::Options o;
  o.rtol = 1e-10;
  o.atol = 1e-12;
  o.h0 = 1e-4;
  o.hmax = 0.02;
  o.hmin = 1e-13;
  return o;
}

}  // namespace

const char* to_string(Terminus t) {
  switch (t) {
    case Terminus::ReachedC0: return "ReachedC0";
    case Terminus::ReachedC1: return "ReachedC1";
    case Terminus::ReachedTarget: return "ReachedTarget";
    case Terminus::HitLocus: return "HitLocus";
    case Terminus::HitBoundary: return "HitBoundary";
    case Terminus::Saddle: return "Saddle";
    case Terminus::Launch: return "Launch";
  }
  return "?";
}

const char* to_string(Side s) {
  switch (s) {
    case Side::OmegaL: return "OmegaL";
    case Side::OmegaR: return "OmegaR";
    case Side::Mixed: return "Mixed";
    case Side::Boundary: return "Boundary";
  }
  return "?";
}

RarefactionCurve RarefactionCurve::segment(State a, State b) {
  RarefactionCurve r;
  if (a.c > b.c) std::swap(a, b);
  Piece p;
  p.step = ode::DenseStep::segment({a.s, a.c}, {b.s, b.c});
  p.th_lo = 0.0;
  p.th_hi = 1.0;
  p.c_lo = a.c;
  p.c_hi = b.c;
  r.pieces_.push_back(p);
  return r;
}

RarefactionCurve RarefactionCurve::constant(double s, double c_lo, double c_hi) {
  RarefactionCurve r = segment({s, c_lo}, {s, c_hi});
  r.term_lo_ = c_lo == 0.0 ? Terminus::ReachedC0 : Terminus::ReachedTarget;
  r.term_hi_ = c_hi == 1.0 ? Terminus::ReachedC1 : Terminus::ReachedTarget;
  return r;
}

RarefactionCurve RarefactionCurve::point(State u) { return segment(u, u); }

RarefactionCurve RarefactionCurve::join(const RarefactionCurve& lower,
                                        const RarefactionCurve& upper) {
  if (lower.empty()) return upper;
  if (upper.empty()) return lower;
  const State a = lower.hi_state();
  const State b = upper.lo_state();
  if (std::abs(a.c - b.c) > 1e-12 || std::abs(a.s - b.s) > 1e-7) {
    std::ostringstream os;
    os.precision(17);
    os << "cannot join curves: (" << a.s << "," << a.c << ") vs (" << b.s << "," << b.c << ")";
    throw StructureError(os.str());
  }
  RarefactionCurve r = lower;
  r.pieces_.insert(r.pieces_.end(), upper.pieces_.begin(), upper.pieces_.end());
  r.term_hi_ = upper.term_hi_;
  if (lower.side_ == upper.side_ || upper.side_ == Side::Boundary)
    r.side_ = lower.side_;
  else if (lower.side_ == Side::Boundary)
    r.side_ = upper.side_;
  else
    r.side_ = Side::Mixed;
  return r;
}

double RarefactionCurve::c_lo() const {
  if (empty()) throw StructureError("empty rarefaction curve");
  return pieces_.front().c_lo;
}

double RarefactionCurve::c_hi() const {
  if (empty()) throw StructureError("empty rarefaction curve");
  return pieces_.back().c_hi;
}

bool RarefactionCurve::is_point() const { return !empty() && c_lo() == c_hi(); }

double RarefactionCurve::theta_for(const Piece& p, double c) const {
  if (c <= p.c_lo) return p.th_lo;
  if (c >= p.c_hi) return p.th_hi;
  auto g = [&](double th) { return p.step.at_theta(th)[1] - c; };
  const double ga = g(p.th_lo);
  const double gb = g(p.th_hi);
  if ((ga > 0.0) == (gb > 0.0)) return std::abs(ga) < std::abs(gb) ? p.th_lo : p.th_hi;
  double a = p.th_lo, b = p.th_hi, fa = ga, fb = gb;
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  return roots::solve(g, a, b, 1e-16, fa, fb);
}

double RarefactionCurve::s_at(double c) const {
  const double lo = c_lo(), hi = c_hi();
  if (c < lo - 1e-12 || c > hi + 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "c=" << c << " outside curve range [" << lo << "," << hi << "]";
    throw DomainError(os.str());
  }
  c = std::clamp(c, lo, hi);
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), c,
                             [](const Piece& p, double v) { return p.c_hi < v; });
  if (it == pieces_.end()) it = std::prev(pieces_.end());
  return it->step.at_theta(theta_for(*it, c))[0];
}

RarefactionCurve RarefactionCurve::restricted(double c0, double c1) const {
  c0 = std::max(c0, c_lo());
  c1 = std::min(c1, c_hi());
  if (c0 > c1) {
    if (c0 - c1 > 1e-12) throw DomainError("restriction outside the curve range");
    c1 = c0;
  }
  if (c0 == c1) {
    RarefactionCurve r = point(at(c0));
    r.side_ = side_;
    return r;
  }
  RarefactionCurve r;
  r.side_ = side_;
  r.term_lo_ = c0 == c_lo() ? term_lo_ : Terminus::ReachedTarget;
  r.term_hi_ = c1 == c_hi() ? term_hi_ : Terminus::ReachedTarget;
  for (const Piece& p : pieces_) {
    if (p.c_hi < c0 || p.c_lo > c1) continue;
    if (p.c_hi == c0 && p.c_lo < c0) continue;
    if (p.c_lo == c1 && p.c_hi > c1) continue;
    Piece q = p;
    if (q.c_lo < c0) {
      q.th_lo = theta_for(p, c0);
      q.c_lo = c0;
    }
    if (q.c_hi > c1) {
      q.th_hi = theta_for(p, c1);
      q.c_hi = c1;
    }
    r.pieces_.push_back(q);
  }
  return r;
}

std::vector<State> RarefactionCurve::knots() const {
  std::vector<State> out;
  for (const Piece& p : pieces_) {
    if (out.empty()) {
      const auto y = p.step.at_theta(p.th_lo);
      out.push_back({y[0], p.c_lo});
    }
    const auto y = p.step.at_theta(p.th_hi);
    out.push_back({y[0], p.c_hi});
  }
  return out;
}

std::vector<State> RarefactionCurve::sample(int n) const {
  std::vector<State> out;
  const double lo = c_lo(), hi = c_hi();
  for (int i = 0; i <= n; ++i) {
    const double c = i == n ? hi : lo + (hi - lo) * double(i) / n;
    out.push_back(at(c));
  }
  return out;
}

RarefactionCurve trace(const Model& model, State p, int c_dir, double c_target,
                       Terminus target_kind) {
  RarefactionCurve out;
  if ((p.c - c_target) * c_dir >= 0.0) return RarefactionCurve::point(p);
  const double gap0 = lambda_gap(model, p.s, p.c);
  if (gap0 == 0.0) throw StructureError("rarefaction curve launched on the coincidence locus");
  const bool left = gap0 > 0.0;
  const double sigma = c_dir * (left ? 1.0 : -1.0);
  auto gap = [&](const ode::Vec2& y) { return lambda_gap(model, y[0], y[1]); };
  ode::Field field = [&model, sigma](double, const ode::Vec2& y) -> ode::Vec2 {
    const FluxEval e = model.flux(y[0], y[1]);
    const double q = y[0] + model.adsorption(y[1]).a_c;
    const double r0 = -e.f_c, r1 = e.f_s - e.f / q;
    const double n = std::hypot(r0, r1);
    if (n == 0.0) return {0.0, 0.0};
    return {sigma * r0 / n, sigma * r1 / n};
  };

  std::vector<RarefactionCurve::Piece> pieces;
  ode::Dp5 dp(field, 0.0, {p.s, p.c}, curve_options());
  Terminus end_kind = target_kind;
  for (;;) {
    if (!dp.step(kMaxArc)) {
      end_kind = Terminus::HitLocus;
      break;
    }
    const ode::DenseStep& d = dp.last();
    const ode::Vec2 y1 = d.end();
    double th_end = 1.0;
    bool stop = false;
    Terminus kind = target_kind;
    if ((gap(y1) > 0.0) != left) {
      th_end = roots::bisect([&](double th) { return gap(d.at_theta(th)) * (left ? 1.0 : -1.0); },
                             0.0, 1.0, 1e-15);
      stop = true;
      kind = Terminus::HitLocus;
    }
    if ((y1[1] - c_target) * c_dir >= 0.0) {
      const double th_c = roots::solve([&](double th) { return d.at_theta(th)[1] - c_target; }, 0.0,
                                       1.0, 1e-16);
      if (!stop || th_c <= th_end) {
        th_end = th_c;
        kind = target_kind;
      }
      stop = true;
    }
    if (y1[0] < 0.0 || y1[0] > 1.0) {
      const double edge = y1[0] < 0.0 ? 0.0 : 1.0;
      const double th_b =
          roots::solve([&](double th) { return d.at_theta(th)[0] - edge; }, 0.0, 1.0, 1e-16);
      if (!stop || th_b < th_end) {
        th_end = th_b;
        kind = Terminus::HitBoundary;
      }
      stop = true;
    }
    RarefactionCurve::Piece pc;
    pc.step = d;
    const double ca = d.at_theta(0.0)[1];
    double cb = d.at_theta(th_end)[1];
    if (stop && kind == target_kind) cb = c_target;
    if (c_dir > 0) {
      pc.th_lo = 0.0;
      pc.th_hi = th_end;
      pc.c_lo = ca;
      pc.c_hi = cb;
    } else {
      pc.th_lo = th_end;
      pc.th_hi = 0.0;
      pc.c_lo = cb;
      pc.c_hi = ca;
    }
    if (pc.c_hi > pc.c_lo || pieces.empty()) pieces.push_back(pc);
    if (stop) {
      end_kind = kind;
      break;
    }
    if (dp.t() >= kMaxArc) throw NumericalError("rarefaction curve exceeded the arc-length budget");
  }
  if (c_dir < 0) std::reverse(pieces.begin(), pieces.end());
  out.pieces_ = std::move(pieces);
  out.side_ = left ? Side::OmegaL : Side::OmegaR;
  if (c_dir > 0) {
    out.term_lo_ = Terminus::Launch;
    out.term_hi_ = end_kind;
  } else {
    out.term_lo_ = end_kind;
    out.term_hi_ = Terminus::Launch;
  }
  return out;
}

RarefactionCurve integrate_curve(const Model& model, State u0, Direction dir,
                                 std::optional<double> c_target) {
  if (!(u0.s >= 0.0 && u0.s <= 1.0 && u0.c >= 0.0 && u0.c <= 1.0))
    throw DomainError("rarefaction start outside the unit square");
  const int c_dir = dir == Direction::TowardCHi ? 1 : -1;
  const double target = c_target.value_or(c_dir > 0 ? 1.0 : 0.0);
  if ((target - u0.c) * c_dir < 0.0) throw PreconditionError("target c lies behind the start");
  Terminus kind = Terminus::ReachedTarget;
  if (target == 0.0) kind = Terminus::ReachedC0;
  if (target == 1.0) kind = Terminus::ReachedC1;
  if (u0.s == 0.0 || u0.s == 1.0) {
    RarefactionCurve r = RarefactionCurve::constant(u0.s, std::min(u0.c, target), std::max(u0.c, target));
    return r;
  }
  const CharData cd = char_data(model, u0);
  if (cd.region == Region::Locus)
    throw PreconditionError("curves through locus points are launched by separatrices");
  return trace(model, u0, c_dir, target, kind);
}

Separatrices separatrices(const Model& model, const SaddlePoint& saddle) {
  Separatrices out;
  out.saddle = saddle;
  const State us = saddle.u_star;
  bool filled[4] = {false, false, false, false};
  for (const auto& base : {saddle.dir_plus, saddle.dir_minus}) {
    for (double sign : {1.0, -1.0}) {
      const double ws = sign * base[0], wc = sign * base[1];
      const State p{us.s + kSeparatrixOffset * ws, us.c + kSeparatrixOffset * wc};
      const int c_dir = wc > 0.0 ? 1 : -1;
      const bool left = lambda_gap(model, p.s, p.c) > 0.0;
      const double target = c_dir > 0 ? 1.0 : 0.0;
      RarefactionCurve curve =
          trace(model, p, c_dir, target, c_dir > 0 ? Terminus::ReachedC1 : Terminus::ReachedC0);
      const Terminus far = c_dir > 0 ? curve.terminus_hi() : curve.terminus_lo();
      if (far != Terminus::ReachedC0 && far != Terminus::ReachedC1)
        throw StructureError(std::string("separatrix ended with ") + to_string(far));
      RarefactionCurve bridge = RarefactionCurve::segment(us, p);
      RarefactionCurve full =
          c_dir > 0 ? RarefactionCurve::join(bridge, curve) : RarefactionCurve::join(curve, bridge);
      const int slot = (c_dir > 0 ? 2 : 0) + (left ? 0 : 1);
      if (filled[slot]) throw StructureError("separatrix side labels are ambiguous");
      filled[slot] = true;
      (slot == 0 ? out.g1 : slot == 1 ? out.g2 : slot == 2 ? out.g3 : out.g4) = std::move(full);
    }
  }
  return out;
}

Separatrices separatrices(const Model& model) { return separatrices(model, find_saddle(model)); }

std::optional<double> critical_rarefaction_value(const Model& model, State u) {
  if (!(u.s > 0.0)) return std::nullopt;
  const PivotFan fan(model, u.c, model.adsorption(u.c).a_c);
  if (std::abs(u.s - fan.s_peak()) <= 1e-12) return u.s;
  return fan.partner(u.s);
}

std::optional<double> CriticalCurve::s_at(double c) const {
  return critical_rarefaction_value(*model_, curve_->at(c));
}

std::vector<State> CriticalCurve::sample(int n) const {
  std::vector<State> out;
  for (const State& u : curve_->sample(n)) {
    const auto sk = critical_rarefaction_value(*model_, u);
    if (sk) out.push_back({*sk, u.c});
  }
  return out;
}

namespace {

// The two branches of the curve through a locus point P, traced away from P toward c_end.
std::pair<RarefactionCurve, RarefactionCurve> locus_branches(const Model& model, State P,
                                                             double c_end) {
  const FluxEval e = model.flux(P.s, P.c);
  const double k = e.f_ss / (-2.0 * e.f_c);
  const int c_dir = c_end > P.c ? 1 : -1;
  if (!((k > 0.0) == (c_dir > 0)))
    throw StructureError("curves through the locus point bend the wrong way");
  RarefactionCurve br[2];
  for (int i = 0; i < 2; ++i) {
    const double ds = i == 0 ? -kLocusOffset : kLocusOffset;
    const State p{P.s + ds, P.c + k * ds * ds};
    RarefactionCurve curve = trace(model, p, c_dir, c_end, Terminus::ReachedTarget);
    const Terminus far = c_dir > 0 ? curve.terminus_hi() : curve.terminus_lo();
    if (far != Terminus::ReachedTarget && !curve.is_point())
      throw StructureError(std::string("locus branch ended with ") + to_string(far));
    RarefactionCurve bridge = RarefactionCurve::segment(P, p);
    br[i] = c_dir > 0 ? RarefactionCurve::join(bridge, curve) : RarefactionCurve::join(curve, bridge);
  }
  return {br[0], br[1]};
}

}  // namespace

RarefactionFrame rarefaction_frame(const Model& model, const Separatrices& seps, double c_L,
                                   double c_R) {
  if (!(c_L < c_R)) throw PreconditionError("rarefaction frame needs c_L < c_R");
  RarefactionFrame fr;
  fr.c_L = c_L;
  fr.c_R = c_R;
  const double cs = seps.saddle.u_star.c;
  if (c_L <= cs && cs <= c_R) {
    fr.pivot = RarefactionFrame::Pivot::Saddle;
    fr.pivot_state = seps.saddle.u_star;
    fr.in_L = seps.g1.restricted(c_L, cs);
    fr.in_R = seps.g2.restricted(c_L, cs);
    fr.out_L = seps.g3.restricted(cs, c_R);
    fr.out_R = seps.g4.restricted(cs, c_R);
    return fr;
  }
  if (c_R < cs) {
    fr.pivot = RarefactionFrame::Pivot::LocusAtRight;
    const State P{coincidence_point(model, c_R), c_R};
    fr.pivot_state = P;
    auto [l, r] = locus_branches(model, P, c_L);
    fr.in_L = std::move(l);
    fr.in_R = std::move(r);
    fr.out_L = RarefactionCurve::point(P);
    fr.out_R = RarefactionCurve::point(P);
  } else {
    fr.pivot = RarefactionFrame::Pivot::LocusAtLeft;
    const State P{coincidence_point(model, c_L), c_L};
    fr.pivot_state = P;
    auto [l, r] = locus_branches(model, P, c_R);
    fr.in_L = RarefactionCurve::point(P);
    fr.in_R = RarefactionCurve::point(P);
    fr.out_L = std::move(l);
    fr.out_R = std::move(r);
  }
  return fr;
}

KeyPoints key_points(const Model& model, const RarefactionFrame& fr) {
  KeyPoints kp{};
  kp.s_1L = fr.in_L.s_at(fr.c_L);
  kp.s_2L = fr.in_R.s_at(fr.c_L);
  kp.s_3R = fr.out_L.s_at(fr.c_R);
  kp.s_4R = fr.out_R.s_at(fr.c_R);
  kp.s_1K = critical_rarefaction_value(model, {kp.s_1L, fr.c_L});
  const auto s2k = critical_rarefaction_value(model, {kp.s_2L, fr.c_L});
  const auto s3k = critical_rarefaction_value(model, {kp.s_3R, fr.c_R});
  const auto s0l = critical_rarefaction_value(model, {1.0, fr.c_L});
  const auto s0r = critical_rarefaction_value(model, {1.0, fr.c_R});
  if (!s2k || !s3k || !s0l || !s0r) throw StructureError("missing critical value at a key point");
  kp.s_2K = *s2k;
  kp.s_3K = *s3k;
  kp.s_0L = *s0l;
  kp.s_0R = *s0r;
  const RarefactionCurve g0k =
      integrate_curve(model, {kp.s_0R, fr.c_R}, Direction::TowardCLo, fr.c_L);
  if (g0k.terminus_lo() == Terminus::HitLocus || g0k.c_lo() > fr.c_L + 1e-12)
    throw StructureError("curve through s_0R does not reach c_L");
  kp.s_0K = g0k.s_at(fr.c_L);
  return kp;
}

KeyPoints key_points(const Model& model, double c_L, double c_R) {
  const Separatrices seps = separatrices(model);
  return key_points(model, rarefaction_frame(model, seps, c_L, c_R));
}

}  // namespace chemflood
