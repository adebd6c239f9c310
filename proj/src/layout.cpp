#include "chemflood/layout.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chemflood/errors.hpp"
#include "chemflood/parallel.hpp"

namespace chemflood {

namespace {

constexpr double kTie = 1e-9;

std::vector<std::pair<double, double>> line(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y1}};
}

}  // namespace

std::vector<std::string> Layout::names() const {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    const std::string n = l.name();
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

int Layout::count(const std::string& name) const {
  return static_cast<int>(
      std::count_if(labels.begin(), labels.end(), [&](const RegionLabel& l) { return l.name() == name; }));
}

Layout region_layout(const RiemannSolver& solver, double c_L, double c_R, int n, int threads) {
  if (c_L == c_R) throw PreconditionError("layout needs c_L != c_R");
  if (n < 1) throw PreconditionError("grid size must be positive");
  const Model& m = solver.model();
  Layout out;
  out.c_L = c_L;
  out.c_R = c_R;
  out.kappa = solver.kappa();
  out.n = n;
  out.labels.resize(static_cast<size_t>(n) * n);
  if (c_L > c_R) {
    const ShockContext ctx = solver.shock_context(c_L, c_R);
    parallel_for(n, [&](int i) {
      for (int j = 0; j < n; ++j)
        out.labels[static_cast<size_t>(i) * n + j] =
            region_label(m, c_L, c_R, ctx.classify(out.s_L(i), out.s_R(j)));
    }, threads);
  } else {
    const RarefactionContext ctx = solver.rarefaction_context(c_L, c_R);
    std::vector<std::optional<double>> bcs(n), bsc(n);
    parallel_for(n, [&](int k) {
      if (out.s_L(k) < ctx.s_1L() - kTie) bcs[k] = ctx.b_cs(out.s_L(k));
      if (out.s_R(k) >= ctx.s_4R()) bsc[k] = ctx.b_sc(out.s_R(k));
    }, threads);
    parallel_for(n, [&](int i) {
      for (int j = 0; j < n; ++j) {
        auto fcs = [&] {
          if (!bcs[i]) return ctx.b_cs(out.s_L(i));
          return *bcs[i];
        };
        auto fsc = [&] {
          if (!bsc[j]) return ctx.b_sc(out.s_R(j));
          return *bsc[j];
        };
        out.labels[static_cast<size_t>(i) * n + j] =
            region_label(m, c_L, c_R, ctx.classify(out.s_L(i), out.s_R(j), fcs, fsc));
      }
    }, threads);
  }
  out.boundaries = boundary_polylines(solver, c_L, c_R, n);
  return out;
}

std::vector<Polyline> boundary_polylines(const RiemannSolver& solver, double c_L, double c_R,
                                         int n) {
  std::vector<Polyline> out;
  if (c_L > c_R) {
    const ShockContext ctx = solver.shock_context(c_L, c_R);
    out.push_back({"overcompressive", ctx.overcompressive_curve(n)});
    out.push_back({"sK_minus", line(ctx.sK_minus(), 0.0, ctx.sK_minus(), ctx.sK_plus())});
    out.push_back({"sK_plus", line(ctx.sK_minus(), ctx.sK_plus(), 1.0, ctx.sK_plus())});
    return out;
  }
  const RarefactionContext ctx = solver.rarefaction_context(c_L, c_R);
  Polyline bcs{"b_cs", {}}, bsc{"b_sc", {}};
  for (int k = 0; k <= n; ++k) {
    const double sl = ctx.s_1L() * double(k) / n;
    if (sl >= ctx.s_1L() - kTie) break;
    try {
      bcs.points.emplace_back(sl, ctx.b_cs(sl));
    } catch (const Error&) {
    }
  }
  for (int k = 0; k <= n; ++k) {
    const double sr = ctx.s_4R() + (1.0 - ctx.s_4R()) * double(k) / n;
    try {
      bsc.points.emplace_back(ctx.b_sc(sr), sr);
    } catch (const Error&) {
    }
  }
  out.push_back(bcs);
  out.push_back(bsc);
  out.push_back({"s_1L", line(ctx.s_1L(), 0.0, ctx.s_1L(), 1.0)});
  out.push_back({"s_2K", line(ctx.s_2K(), 0.0, ctx.s_2K(), ctx.s_4R())});
  out.push_back({"s_3K", line(ctx.s_1L(), ctx.s_3K(), 1.0, ctx.s_3K())});
  out.push_back({"s_4R", line(0.0, ctx.s_4R(), 1.0, ctx.s_4R())});
  return out;
}

RegionAreas region_areas(const Model& model, double c_L, double c_R) {
  if (!(c_L < c_R)) throw PreconditionError("region areas need c_L < c_R");
  const Model vm = model.is_validated() ? model : model.validated();
  const Separatrices seps = separatrices(vm);
  const RarefactionContext ctx(vm, seps, c_L, c_R);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  RegionAreas a;
  const double s1 = ctx.s_1L(), s2 = ctx.s_2K(), s3 = ctx.s_3K(), s4 = ctx.s_4R();
  a.scs = (1.0 - s2) * s3;
  a.cscs = (s2 - s1) * s3;
  a.scsc = (1.0 - s2) * (s4 - s3);
  a.cscsc = (s2 - s1) * (s4 - s3);
  auto bcs = [&](double sl) { return std::clamp(ctx.b_cs(sl), 0.0, 1.0); };
  auto sc_width = [&](double sr) { return 1.0 - std::clamp(std::min(ctx.b_sc(sr), s2), 0.0, 1.0); };
  a.cs = GK::integrate(bcs, 0.0, s1, 8, 1e-10);
  a.sc = GK::integrate(sc_width, s4, 1.0, 8, 1e-10);
  a.csc = 1.0 - (a.cs + a.sc + a.scs + a.cscs + a.scsc + a.cscsc);
  return a;
}

BoundaryCheck boundary_consistency(const RiemannSolver& solver, const Layout& layout,
                                   int threads) {
  const Model& m = solver.model();
  const double cL = layout.c_L, cR = layout.c_R;
  std::optional<ShockContext> sctx;
  std::optional<RarefactionContext> rctx;
  if (cL > cR)
    sctx.emplace(solver.shock_context(cL, cR));
  else
    rctx.emplace(solver.rarefaction_context(cL, cR));
  auto classify = [&](double sl, double sr) {
    return sctx ? sctx->classify(sl, sr) : rctx->classify(sl, sr);
  };

  struct Pair {
    double x0, y0, x1, y1;
  };
  std::vector<Pair> pairs;
  const int n = layout.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n && !(layout.at(i, j) == layout.at(i + 1, j)))
        pairs.push_back({layout.s_L(i), layout.s_R(j), layout.s_L(i + 1), layout.s_R(j)});
      if (j + 1 < n && !(layout.at(i, j) == layout.at(i, j + 1)))
        pairs.push_back({layout.s_L(i), layout.s_R(j), layout.s_L(i), layout.s_R(j + 1)});
    }

  struct Result {
    double l1 = 0.0;
    bool failed = false;
    std::string what;
  };
  std::vector<Result> res(pairs.size());
  parallel_for(static_cast<int>(pairs.size()), [&](int k) {
    const Pair& p = pairs[k];
    auto at = [&](double t) { return std::pair{p.x0 + t * (p.x1 - p.x0), p.y0 + t * (p.y1 - p.y0)}; };
    double lo = 0.0, hi = 1.0;
    const RegionCase llo = classify(p.x0, p.y0);
    RegionCase lhi = classify(p.x1, p.y1);
    for (int it = 0; it < 34; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto [x, y] = at(mid);
      const RegionCase lm = classify(x, y);
      if (lm == llo) {
        lo = mid;
      } else {
        hi = mid;
        lhi = lm;
      }
    }
    const auto [x, y] = at(0.5 * (lo + hi));
    const State uL{x, cL}, uR{y, cR};
    std::ostringstream id;
    id.precision(17);
    id << to_string(llo) << "|" << to_string(lhi) << " at (" << x << "," << y << ")";
    res[k].what = id.str();
    try {
      const RiemannSolution a = solver.solve_as(uL, uR, llo);
      const RiemannSolution b = solver.solve_as(uL, uR, lhi);
      double lo_xi = 0.0, hi_xi = 0.0;
      for (const auto* s : {&a, &b})
        for (const Wave& w : s->waves) {
          lo_xi = std::min(lo_xi, w.speed_lo);
          hi_xi = std::max(hi_xi, w.speed_hi);
        }
      res[k].l1 = profile_l1(m, a, b, lo_xi - 0.1, hi_xi + 0.1, 4000);
    } catch (const Error& e) {
      res[k].failed = true;
      res[k].what += std::string(": ") + e.what();
    }
  }, threads);

  BoundaryCheck out;
  out.pairs = static_cast<int>(pairs.size());
  for (const auto& r : res) {
    if (r.failed) {
      if (out.failures++ == 0 && out.worst.empty()) out.worst = r.what;
      continue;
    }
    if (r.l1 > out.max_l1) {
      out.max_l1 = r.l1;
      if (out.failures == 0) out.worst = r.what;
    }
  }
  return out;
}

}  // namespace chemflood
