#include "chemflood/characteristics.hpp"

#include <cmath>
#include <sstream>

#include "chemflood/errors.hpp"
#include "chemflood/roots.hpp"

namespace chemflood {

namespace {

constexpr double kRootTol = 1e-15;

void require_validated(const Model& model) {
  if (!model.is_validated()) throw PreconditionError("model has not been validated");
}

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::OmegaL: return "OmegaL";
    case Region::OmegaR: return "OmegaR";
    case Region::Locus: return "Locus";
  }
  return "?";
}

double lambda_c(const Model& model, double s, double c) {
  return model.f(s, c) / (s + model.adsorption(c).a_c);
}

double lambda_gap(const Model& model, double s, double c) {
  const FluxEval e = model.flux(s, c);
  return e.f_s - e.f / (s + model.adsorption(c).a_c);
}

CharData char_data(const Model& model, State u) {
  const FluxEval e = model.flux(u.s, u.c);
  const double ac = model.adsorption(u.c).a_c;
  CharData d;
  d.lambda_s = e.f_s;
  d.lambda_c = e.f / (u.s + ac);
  const double gap = d.lambda_s - d.lambda_c;
  d.r_c = {-e.f_c, gap};
  if (u.s > 0.0 && std::abs(gap) <= 1e-10 * std::max(1.0, std::abs(d.lambda_s)))
    d.region = Region::Locus;
  else
    d.region = gap > 0.0 ? Region::OmegaL : Region::OmegaR;
  return d;
}

std::array<std::array<double, 2>, 2> characteristic_matrix(const Model& model, State u) {
  const FluxEval e = model.flux(u.s, u.c);
  const double ac = model.adsorption(u.c).a_c;
  return {{{e.f_s, e.f_c}, {0.0, e.f / (u.s + ac)}}};
}

double coincidence_point(const Model& model, double c) {
  const int n = 256;
  auto gap = [&](double s) { return lambda_gap(model, s, c); };
  int changes = 0;
  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  double prev_s = 1.0 / n;
  double prev = gap(prev_s);
  for (int k = 2; k <= n; ++k) {
    const double s = double(k) / n;
    const double g = gap(s);
    if ((prev > 0.0) != (g > 0.0)) {
      ++changes;
      lo = prev_s;
      hi = s;
      flo = prev;
      fhi = g;
    }
    prev = g;
    prev_s = s;
  }
  if (changes != 1) {
    std::ostringstream os;
    os << "coincidence locus at c=" << c << " has " << changes << " roots";
    throw StructureError(os.str());
  }
  return roots::solve(gap, lo, hi, kRootTol, flo, fhi);
}

std::array<std::array<double, 2>, 2> rarefaction_linearization(const Model& model, State u) {
  const FluxEval e = model.flux(u.s, u.c);
  const AdsorptionEval ad = model.adsorption(u.c);
  const double q = u.s + ad.a_c;
  const double gap = e.f_s - e.f / q;
  return {{{-e.f_sc, -e.f_cc},
           {e.f_ss - gap / q, e.f_sc - e.f_c / q + e.f * ad.a_cc / (q * q)}}};
}

SaddlePoint find_saddle(const Model& model) {
  require_validated(model);
  const double cs = model.c_star();
  double s = coincidence_point(model, cs);
  double c = cs;
  auto residual = [&](double ss, double cc) {
    const FluxEval e = model.flux(ss, cc);
    const double q = ss + model.adsorption(cc).a_c;
    return std::array<double, 2>{e.f_c, e.f_s - e.f / q};
  };
  auto norm = [](const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); };

  SaddlePoint sp;
  std::array<double, 2> r = residual(s, c);
  int it = 0;
  for (; it < 100 && norm(r) > 1e-14; ++it) {
    const FluxEval e = model.flux(s, c);
    const AdsorptionEval ad = model.adsorption(c);
    const double q = s + ad.a_c;
    const double gap = e.f_s - e.f / q;
    const double j11 = e.f_sc, j12 = e.f_cc;
    const double j21 = e.f_ss - gap / q;
    const double j22 = e.f_sc - e.f_c / q + e.f * ad.a_cc / (q * q);
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double ds = -(j22 * r[0] - j12 * r[1]) / det;
    const double dc = -(-j21 * r[0] + j11 * r[1]) / det;
    double lam = 1.0;
    const double r0 = norm(r);
    for (int k = 0; k < 30; ++k) {
      const double sn = s + lam * ds, cn = c + lam * dc;
      if (sn > 0.0 && sn < 1.0 && cn > 0.0 && cn < 1.0 && norm(residual(sn, cn)) < r0) {
        s = sn;
        c = cn;
        break;
      }
      lam *= 0.5;
    }
    if (lam < 1e-8) break;
    r = residual(s, c);
  }
  if (norm(r) > 1e-10) {
    std::ostringstream os;
    os.precision(17);
    os << "saddle Newton did not converge; last iterate s=" << s << " c=" << c;
    throw NumericalError(os.str());
  }
  sp.u_star = {s, c};
  sp.residual_fc = std::abs(r[0]);
  sp.residual_locus = std::abs(r[1]);
  sp.newton_iterations = it;

  const FluxEval e = model.flux(s, c);
  if (!(e.f_cc > 0.0)) throw StructureError("f_cc at the saddle is not positive");
  if (!(e.f_ss < 0.0)) throw StructureError("f_ss at the saddle is not negative");

  sp.L = rarefaction_linearization(model, sp.u_star);
  const auto& L = sp.L;
  const double tr = L[0][0] + L[1][1];
  const double det = L[0][0] * L[1][1] - L[0][1] * L[1][0];
  const double disc = tr * tr - 4.0 * det;
  if (!(disc > 0.0) || !(det < 0.0)) throw StructureError("fixed point is not a saddle");
  const double root = std::sqrt(disc);
  sp.mu_plus = 0.5 * (tr + root);
  sp.mu_minus = 0.5 * (tr - root);

  auto eigvec = [&](double mu) {
    std::array<double, 2> v;
    if (std::abs(L[0][1]) >= std::abs(L[1][0]))
      v = {L[0][1], mu - L[0][0]};
    else
      v = {mu - L[1][1], L[1][0]};
    const double n = std::hypot(v[0], v[1]);
    v[0] /= n;
    v[1] /= n;
    if (v[1] < 0.0) {
      v[0] = -v[0];
      v[1] = -v[1];
    }
    return v;
  };
  sp.dir_plus = eigvec(sp.mu_plus);
  sp.dir_minus = eigvec(sp.mu_minus);
  return sp;
}

PivotFan::PivotFan(const Model& model, double c, double h) : model_(&model), c_(c), h_(h) {
  // slope condition f_s (s+h) - f = 0 separates the two monotone branches of phi
  auto g = [&](double s) {
    const FluxEval e = model.flux(s, c);
    return e.f_s * (s + h) - e.f;
  };
  const int n = 256;
  double prev_s = 1.0 / n;
  double prev = g(prev_s);
  double lo = -1.0, hi = -1.0, flo = 0.0, fhi = 0.0;
  for (int k = 2; k <= n; ++k) {
    const double s = double(k) / n;
    const double v = g(s);
    if (prev > 0.0 && v <= 0.0) {
      lo = prev_s;
      hi = s;
      flo = prev;
      fhi = v;
      break;
    }
    prev = v;
    prev_s = s;
  }
  if (lo < 0.0) throw StructureError("chord fan has no tangency point");
  s_peak_ = roots::solve(g, lo, hi, kRootTol, flo, fhi);
  peak_ = phi(s_peak_);
  end_ = 1.0 / (1.0 + h);
}

double PivotFan::phi(double s) const { return model_->f(s, c_) / (s + h_); }

std::optional<double> PivotFan::rising_root(double v) const {
  if (!(v > 0.0) || v > peak_) return std::nullopt;
  if (v == peak_) return s_peak_;
  return roots::solve([&](double s) { return phi(s) - v; }, 0.0, s_peak_, kRootTol, -v, peak_ - v);
}

std::optional<double> PivotFan::falling_root(double v) const {
  if (v > peak_) return std::nullopt;
  if (v < end_) {
    if (end_ - v <= 1e-13 * end_) return 1.0;
    return std::nullopt;
  }
  if (v == peak_) return s_peak_;
  return roots::solve([&](double s) { return phi(s) - v; }, s_peak_, 1.0, kRootTol, peak_ - v,
                      end_ - v);
}

std::optional<double> PivotFan::partner(double s) const {
  const double v = phi(s);
  if (s < s_peak_) return falling_root(v);
  if (s > s_peak_) return rising_root(v);
  return s;
}

}  // namespace chemflood
