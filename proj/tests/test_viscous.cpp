#include <doctest.h>

#include <cmath>

#include "chemflood/errors.hpp"
#include "chemflood/viscous.hpp"

using namespace chemflood;

namespace {
const Model& ref() {
  static const Model m = Model::reference().validated();
  return m;
}

double distance_to_path(State u, const std::vector<State>& path) {
  double best = 1e300;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    const State a = path[k], b = path[k + 1];
    const double ds = b.s - a.s, dc = b.c - a.c, len2 = ds * ds + dc * dc;
    double t = len2 > 0 ? ((u.s - a.s) * ds + (u.c - a.c) * dc) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(u.s - a.s - t * ds, u.c - a.c - t * dc));
  }
  return best;
}
}  // namespace

TEST_CASE("constant data stays constant") {
  ViscousParams p;
  p.N = 256;
  p.T = 0.2;
  const GridSolution g = simulate(ref(), {0.6, 0.4}, {0.6, 0.4}, p);
  for (size_t i = 0; i < g.s.size(); ++i) {
    CHECK(std::abs(g.s[i] - 0.6) < 1e-14);
    CHECK(std::abs(g.c[i] - 0.4) < 1e-14);
  }
  CHECK(g.drift_s < 1e-12);
}

TEST_CASE("preconditions") {
  ViscousParams p;
  p.N = 100;
  CHECK_THROWS_AS(simulate(ref(), {0.6, 0.4}, {0.2, 0.4}, p), PreconditionError);
  p.N = 256;
  CHECK_THROWS_AS(simulate(ref(), {0.0, 0.4}, {0.2, 0.4}, p), PreconditionError);
  p.eps_c = 0.0;
  CHECK_THROWS_AS(simulate(ref(), {0.6, 0.4}, {0.2, 0.4}, p), PreconditionError);
  GridSolution g;
  const RiemannSolution sol = solve(ref(), {0.6, 0.4}, {0.2, 0.4}, 1.0);
  CHECK_THROWS_AS(compare(ref(), g, sol), PreconditionError);
}

TEST_CASE("exact profile on the grid has no error") {
  const Model& m = ref();
  const RiemannSolution sol = solve(m, {0.9, 0.8}, {0.2, 0.2}, 1.0);
  GridSolution g;
  g.t = 1.0;
  const int N = 2000;
  g.dx = 3.0 / N;
  for (int i = 0; i < N; ++i) {
    const double x = -1.5 + (i + 0.5) * g.dx;
    const State u = evaluate_profile(m, sol, x);
    g.x.push_back(x);
    g.s.push_back(u.s);
    g.c.push_back(u.c);
  }
  const L1Error e = compare(m, g, sol, false);
  CHECK(e.total() < 1e-14);
  const L1Error a = compare(m, g, sol, true);
  CHECK(std::abs(a.shift) < 1e-3);
}

TEST_CASE("Buckley-Leverett viscous profiles converge") {
  const Model& m = ref();
  const RiemannSolution sol = solve(m, {1.0, 0.5}, {0.1, 0.5}, 1.0);
  ViscousParams p;
  p.N = 1024;
  p.X = domain_half_width(sol, p.T);
  const LadderResult r = convergence_ladder(m, sol, p, {1.6e-2, 8e-3, 4e-3});
  for (const LadderRung& k : r.rungs) {
    CHECK(k.drift < 1e-8);
    CHECK(k.error.c < 1e-12);
  }
  for (double q : r.ratios) CHECK(q > 1.0);
}

TEST_CASE("conservation and bounds on a shock-case run") {
  const Model& m = ref();
  ViscousParams p;
  p.N = 1024;
  p.eps_c = 4e-3;
  p.X = 1.3;
  const GridSolution g = simulate(m, {0.9, 0.8}, {0.2, 0.2}, p);
  CHECK(g.drift_s < 1e-8);
  CHECK(g.drift_m < 1e-8);
  CHECK(g.s_min >= -1e-12);
  CHECK(g.s_max <= 1.0 + 1e-12);
  CHECK(g.c_min >= -1e-12);
  CHECK(g.c_max <= 1.0 + 1e-12);
  CHECK(g.clipped_s + g.clipped_c == 0);
}

TEST_CASE("viscous crossing shock follows the travelling wave") {
  const Model& m = ref();
  const Connection con = connect_undercompressive(m, 0.8, 0.2, 1.0);
  const Shock& sh = con.shock;
  ViscousParams p;
  p.N = 2048;
  p.eps_c = 2e-3;
  p.X = 1.0;
  const GridSolution g = simulate(m, sh.u_minus, sh.u_plus, p);
  const ShockFrame fr(m, 0.8, 0.2, 1.0);
  std::vector<State> path = fr.saddle_trajectory(sh.v, true, 0.5);
  std::vector<State> lower = fr.saddle_trajectory(sh.v, false, 0.5);
  path.insert(path.end(), lower.rbegin(), lower.rend());
  double worst = 0.0;
  int used = 0;
  for (size_t i = 0; i < g.s.size(); ++i) {
    if (g.c[i] > 0.26 && g.c[i] < 0.74) {
      worst = std::max(worst, distance_to_path({g.s[i], g.c[i]}, path));
      ++used;
    }
  }
  CHECK(used > 5);
  CHECK(worst < 2e-2);
}
