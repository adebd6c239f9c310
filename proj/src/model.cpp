#include "chemflood/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chemflood/errors.hpp"
#include "chemflood/roots.hpp"

namespace chemflood {

namespace {

constexpr double kStrictTol = 1e-12;
constexpr double kBoundaryTol = 1e-9;

struct Powers {
  double n, n1, n2;  // s^p and its first two derivatives
  double m, m1, m2;  // (1-s)^q and its first two derivatives
};

Powers powers(double s, double p, double q, bool integer2) {
  const double r = 1.0 - s;
  if (integer2) return {s * s, 2.0 * s, 2.0, r * r, -2.0 * r, 2.0};
  Powers w{};
  w.n = std::pow(s, p);
  w.n1 = p * std::pow(s, p - 1.0);
  w.n2 = p * (p - 1.0) * std::pow(s, p - 2.0);
  w.m = std::pow(r, q);
  w.m1 = -q * std::pow(r, q - 1.0);
  w.m2 = q * (q - 1.0) * std::pow(r, q - 2.0);
  return w;
}

struct Mob {
  double m, m1, m2;
};

Mob mobility(const MobilityConfig& mc, double c) {
  if (mc.family == MobilityConfig::Family::Quad)
    return {mc.base + mc.amp * c * (1.0 - c), mc.amp * (1.0 - 2.0 * c), -2.0 * mc.amp};
  return {mc.base + mc.slope * c, mc.slope, 0.0};
}

}  // namespace

Model::Model(ModelConfig cfg) : cfg_(cfg) {
  if (!(cfg_.flux.nw >= 2.0) || !(cfg_.flux.no >= 2.0))
    throw ValidationError("corey exponents must be >= 2");
  if (!(cfg_.adsorption.scale > 0.0) && cfg_.adsorption.family == AdsorptionConfig::Family::Langmuir)
    throw ValidationError("adsorption scale must be positive");
  if (cfg_.adsorption.family == AdsorptionConfig::Family::Langmuir && !(cfg_.adsorption.b > 0.0))
    throw ValidationError("langmuir b must be positive");
  for (double c : {0.0, 0.25, 0.5, 0.75, 1.0})
    if (!(m(c) > 0.0)) throw ValidationError("mobility profile must stay positive on [0,1]");
  integer_exponents_ = cfg_.flux.nw == 2.0 && cfg_.flux.no == 2.0;
}

Model Model::reference() { return Model(ModelConfig{}); }

double Model::m(double c) const { return mobility(cfg_.flux.m, c).m; }

double Model::f(double s, double c) const {
  const Powers w = powers(s, cfg_.flux.nw, cfg_.flux.no, integer_exponents_);
  return w.n / (w.n + m(c) * w.m);
}

double Model::f_s(double s, double c) const {
  const Powers w = powers(s, cfg_.flux.nw, cfg_.flux.no, integer_exponents_);
  const double mm = m(c);
  const double d = w.n + mm * w.m;
  return mm * (w.n1 * w.m - w.n * w.m1) / (d * d);
}

FluxEval Model::flux(double s, double c) const {
  const Powers w = powers(s, cfg_.flux.nw, cfg_.flux.no, integer_exponents_);
  const Mob mb = mobility(cfg_.flux.m, c);
  const double d = w.n + mb.m * w.m;
  const double d2 = d * d;
  const double d3 = d2 * d;
  const double ww = w.n1 * w.m - w.n * w.m1;
  const double ww1 = w.n2 * w.m - w.n * w.m2;
  const double ds = w.n1 + mb.m * w.m1;
  FluxEval r{};
  r.f = w.n / d;
  r.f_s = mb.m * ww / d2;
  r.f_ss = mb.m * (ww1 * d - 2.0 * ww * ds) / d3;
  r.f_c = -w.n * mb.m1 * w.m / d2;
  r.f_sc = mb.m1 * ww * (w.n - mb.m * w.m) / d3;
  r.f_cc = -w.n * w.m * (mb.m2 / d2 - 2.0 * mb.m1 * mb.m1 * w.m / d3);
  return r;
}

double Model::a(double c) const {
  const auto& ad = cfg_.adsorption;
  if (ad.family == AdsorptionConfig::Family::Langmuir) return ad.scale * c / (1.0 + ad.b * c);
  return ad.scale * c;
}

AdsorptionEval Model::adsorption(double c) const {
  const auto& ad = cfg_.adsorption;
  if (ad.family == AdsorptionConfig::Family::Langmuir) {
    const double q = 1.0 + ad.b * c;
    return {ad.scale * c / q, ad.scale / (q * q), -2.0 * ad.scale * ad.b / (q * q * q)};
  }
  return {ad.scale * c, ad.scale, 0.0};
}

Model Model::with_adsorption_scale(double k) const {
  ModelConfig cfg = cfg_;
  cfg.adsorption.scale *= k;
  Model out(cfg);
  if (validated_) return out.validated();
  return out;
}

Model Model::validated(int n_grid) const {
  const ValidationReport rep = validate_assumptions(*this, n_grid);
  if (!rep.passed) {
    std::ostringstream os;
    os << "model violates";
    for (const auto& v : rep.violations) os << ' ' << v.condition;
    throw ValidationError(os.str());
  }
  Model out = *this;
  out.validated_ = true;
  out.c_star_ = rep.c_star;
  double fmax = 0.0, fsmax = 0.0, fcmax = 0.0;
  const int n = 257;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const FluxEval e = flux(double(i) / (n - 1), double(j) / (n - 1));
      fmax = std::max(fmax, std::abs(e.f));
      fsmax = std::max(fsmax, std::abs(e.f_s));
      fcmax = std::max(fcmax, std::abs(e.f_c));
    }
  }
  out.c1_norm_ = fmax + fsmax + fcmax;
  return out;
}

FluxEval eval_flux(const Model& model, State u) {
  if (!(u.s >= 0.0 && u.s <= 1.0 && u.c >= 0.0 && u.c <= 1.0))
    throw DomainError("flux evaluated outside the unit square");
  return model.flux(u.s, u.c);
}

AdsorptionEval eval_adsorption(const Model& model, double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("adsorption evaluated outside [0,1]");
  return model.adsorption(c);
}

bool ValidationReport::violates(const std::string& condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.condition == condition; });
}

double inflection_point(const Model& model, double c) {
  const int n = 512;
  double prev_s = 1.0 / n;
  double prev = model.flux(prev_s, c).f_ss;
  for (int i = 2; i < n; ++i) {
    const double s = double(i) / n;
    const double v = model.flux(s, c).f_ss;
    if (prev > 0.0 && v <= 0.0) {
      return roots::bisect([&](double x) { return model.flux(x, c).f_ss; }, prev_s, s, 1e-14);
    }
    prev = v;
    prev_s = s;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

int sign_of(double v) {
  if (v > kStrictTol) return 1;
  if (v < -kStrictTol) return -1;
  return 0;
}

}  // namespace

ValidationReport validate_assumptions(const Model& model, int n_grid) {
  if (n_grid < 32) throw PreconditionError("n_grid must be at least 32");
  ValidationReport rep;
  const int n = n_grid;
  auto grid = [n](int i) { return double(i) / (n - 1); };
  auto add = [&rep](const char* cond, double s, double c, std::string detail) {
    rep.violations.push_back({cond, s, c, std::move(detail)});
  };

  rep.f3_prime = true;
  for (int j = 0; j < n; ++j) {
    const double c = grid(j);
    rep.c_samples.push_back(c);
    const FluxEval e0 = model.flux(0.0, c);
    const FluxEval e1 = model.flux(1.0, c);
    if (e0.f != 0.0) add("F1", 0.0, c, "f(0,c) != 0");
    if (std::abs(e1.f - 1.0) > kBoundaryTol) add("F1", 1.0, c, "f(1,c) != 1");
    if (std::abs(e0.f_s) > kBoundaryTol) add("F2", 0.0, c, "f_s(0,c) != 0");
    if (std::abs(e1.f_s) > kBoundaryTol) add("F2", 1.0, c, "f_s(1,c) != 0");

    // f_ss sign pattern along s must be + ... + - ... -
    int changes = 0;
    int last = 0;
    bool saw_pos = false, saw_neg = false;
    for (int i = 1; i < n - 1; ++i) {
      const double s = grid(i);
      const FluxEval e = model.flux(s, c);
      if (!(e.f_s > kStrictTol)) add("F2", s, c, "f_s not positive");
      const int sg = sign_of(e.f_ss);
      if (i == 1 && sg <= 0) rep.f3_prime = false;
      if (sg == 0) continue;
      if (sg > 0) saw_pos = true;
      if (sg < 0) saw_neg = true;
      if (last != 0 && sg != last) {
        ++changes;
        if (last < 0) add("F3", s, c, "f_ss changes sign from - to +");
      }
      last = sg;
    }
    if (changes != 1 || !saw_pos || !saw_neg) {
      add("F3", -1.0, c, "f_ss does not change sign exactly once");
      rep.s_inflection.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      rep.s_inflection.push_back(inflection_point(model, c));
    }

    if (j > 0 && j < n - 1) {
      const AdsorptionEval ad = model.adsorption(c);
      if (!(ad.a_c > kStrictTol)) add("A2", -1.0, c, "a_c not positive");
      if (!(ad.a_cc < -kStrictTol)) add("A3", -1.0, c, "a_cc not negative");
    }
  }
  if (std::abs(model.a(0.0)) != 0.0) add("A1", -1.0, 0.0, "a(0) != 0");

  // f_c sign pattern along c must be - ... - + ... + with a common switch
  int lo_cell = -1, hi_cell = n;
  bool f4_ok = true;
  for (int i = 1; i < n - 1 && f4_ok; ++i) {
    const double s = grid(i);
    int last = 0, changes = 0, cell = -1;
    int last_j = -1;
    for (int j = 0; j < n; ++j) {
      const int sg = sign_of(model.flux(s, grid(j)).f_c);
      if (sg == 0) continue;
      if (last != 0 && sg != last) {
        ++changes;
        if (last > 0) {
          add("F4", s, grid(j), "f_c changes sign from + to -");
          f4_ok = false;
        }
        cell = last_j;
      }
      last = sg;
      last_j = j;
    }
    if (changes != 1 || cell < 0) {
      add("F4", s, -1.0, "f_c does not change sign exactly once");
      f4_ok = false;
      break;
    }
    lo_cell = std::max(lo_cell, cell);
    hi_cell = std::min(hi_cell, cell);
  }
  if (f4_ok && lo_cell - hi_cell > 2) {
    add("F4", -1.0, -1.0, "sign change of f_c not at a common c*");
    f4_ok = false;
  }
  if (f4_ok) {
    const double s_mid = 0.5;
    auto g = [&](double c) { return model.flux(s_mid, c).f_c; };
    double a = grid(std::max(0, hi_cell - 1));
    double b = grid(std::min(n - 1, lo_cell + 2));
    if (g(a) < 0.0 && g(b) > 0.0) {
      rep.c_star = roots::bisect(g, a, b, 1e-15);
      rep.c_star_found = true;
    } else {
      add("F4", s_mid, -1.0, "could not bracket c*");
    }
  }
  rep.passed = rep.violations.empty();
  return rep;
}

}  // namespace chemflood
