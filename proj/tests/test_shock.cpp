#include <doctest.h>

#include <cmath>

#include "chemflood/errors.hpp"
#include "chemflood/riemann.hpp"
#include "chemflood/shock.hpp"
#include "oracles.hpp"

using namespace chemflood;

namespace {
const Model& ref() {
  static const Model m = Model::reference().validated();
  return m;
}

double collinearity(const Model& m, State um, State up) {
  const double h = (m.a(um.c) - m.a(up.c)) / (um.c - up.c);
  const double fm = m.f(um.s, um.c), fp = m.f(up.s, up.c);
  return (up.s + h) * fm - (um.s + h) * fp;
}
}  // namespace

TEST_CASE("s-shock speed is the chord slope") {
  const Model& m = ref();
  const double c = 0.5;
  const double v = rh_speed(m, {0.2, c}, {0.8, c});
  CHECK(v == doctest::Approx((m.f(0.8, c) - m.f(0.2, c)) / 0.6).epsilon(1e-14));
  CHECK_THROWS_AS(rh_speed(m, {0.4, 0.3}, {0.4, 0.3}), DegenerateError);
}

TEST_CASE("c-shock consistency is collinearity with the pivot") {
  const Model& m = ref();
  const State um{0.7, 0.8}, up{0.3, 0.2};
  REQUIRE(std::abs(collinearity(m, um, up)) > 1e-6);
  CHECK_THROWS_AS(rh_speed(m, um, up), RhError);
  // move u_minus onto the chord through (-h, 0) and u_plus
  const double h = (m.a(0.8) - m.a(0.2)) / 0.6;
  const double v = m.f(up.s, up.c) / (up.s + h);
  const auto r = oracle::fan_roots(m, 0.8, h, v);
  REQUIRE(!r.empty());
  const State um2{r.back(), 0.8};
  CHECK(std::abs(collinearity(m, um2, up)) < 1e-10);
  const double v2 = rh_speed(m, um2, up);
  CHECK(v2 == doctest::Approx(v).epsilon(1e-10));
  CHECK(rh_residual(m, um2, up, v2).max() < 1e-10);
}

TEST_CASE("critical shock value") {
  const Model& m = ref();
  const double c = 0.4, h = 0.3;
  const PivotFan fan(m, c, h);
  const CriticalShockValue t = critical_shock_value(m, {fan.s_peak(), c}, h);
  CHECK(t.tangent);
  REQUIRE(t.s.has_value());
  CHECK(*t.s == fan.s_peak());
  const Connection con = connect_undercompressive(m, 0.8, 0.2, 1.0);
  const State up = con.shock.u_plus;
  const CriticalShockValue k = critical_shock_value(m, up, con.shock.h);
  REQUIRE(k.s.has_value());
  CHECK(*k.s > up.s);
  const auto r = oracle::fan_roots(m, up.c, con.shock.h, m.f(up.s, up.c) / (up.s + con.shock.h));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(*k.s - r[1]) < 1e-9);
  // chord from the pivot through a low point clears the graph
  const State low{0.05, c};
  CHECK_FALSE(critical_shock_value(m, low, h).s.has_value());
  CHECK(oracle::fan_roots(m, c, h, m.f(low.s, c) / (low.s + h)).size() == 1);
}

TEST_CASE("travelling-wave field") {
  const Model& m = ref();
  const Shock sh = connect_undercompressive(m, 0.8, 0.2, 1.0).shock;
  const TwField F = tw_field(m, sh.v, sh.d1, sh.d2, 1.0);
  for (State u : {sh.u_minus, sh.u_plus}) {
    CHECK(std::abs(F(u)[0]) < 1e-10);
    CHECK(std::abs(F(u)[1]) < 1e-10);
  }
  for (double c = 0.21; c < 0.8; c += 0.05) CHECK(F({0.5, c})[1] < 0.0);
  const TwField F2 = tw_field(m, sh.v, sh.d1, sh.d2, 2.0);
  CHECK(F2.ds_dc(0.5, 0.5) == doctest::Approx(2.0 * F.ds_dc(0.5, 0.5)).epsilon(1e-14));
}

TEST_CASE("undercompressive connection against RK4 shooting") {
  const Model& m = ref();
  struct Frozen {
    double kappa, sm, sp, v;
  };
  for (Frozen fz : {Frozen{1.0, 0.864303, 0.788091, 0.729686}, Frozen{10.0, 0.873473, 0.780083, 0.728092}}) {
    const Connection con = connect_undercompressive(m, 0.8, 0.2, fz.kappa);
    const Shock& sh = con.shock;
    CHECK(sh.classification == ShockClass::Crossing);
    CHECK(con.residual < 1e-8);
    CHECK(con.rh.max() < 1e-10);
    const ShockFrame fr(m, 0.8, 0.2, fz.kappa);
    const oracle::Crossing o =
        oracle::shoot_crossing(m, 0.8, 0.2, fz.kappa, sh.v - 2e-3, std::min(sh.v + 2e-3, fr.v_max() - 1e-9));
    CHECK(std::abs(o.v - sh.v) < 1e-7);
    CHECK(std::abs(o.s_minus - sh.u_minus.s) < 1e-6);
    CHECK(std::abs(o.s_plus - sh.u_plus.s) < 1e-6);
    CHECK(sh.u_minus.s == doctest::Approx(fz.sm).epsilon(2e-6));
    CHECK(sh.u_plus.s == doctest::Approx(fz.sp).epsilon(2e-6));
    CHECK(sh.v == doctest::Approx(fz.v).epsilon(2e-6));
    // crossing: the c-family crosses, the s-family does not
    const CharData l = char_data(m, sh.u_minus), r = char_data(m, sh.u_plus);
    CHECK(std::min(l.lambda_s, l.lambda_c) < sh.v);
    CHECK(std::max(r.lambda_s, r.lambda_c) > sh.v);
    // trajectory c strictly decreasing
    const auto path = fr.saddle_trajectory(sh.v, true, 0.5);
    for (size_t k = 1; k < path.size(); ++k) CHECK(path[k].c < path[k - 1].c);
  }
  CHECK_THROWS_AS(connect_undercompressive(m, 0.3, 0.3, 1.0), PreconditionError);
}

TEST_CASE("Lax classification of the one-sided c-shocks") {
  const Model& m = ref();
  const RiemannSolver solver(m, 1.0);
  auto c_shock = [&](State uL, State uR) {
    const RiemannSolution sol = solver.solve(uL, uR);
    for (const Wave& w : sol.waves)
      if (w.kind == WaveKind::CShock) return std::make_pair(sol.label.region, *w.shock);
    FAIL("no c-shock");
    return std::make_pair(sol.label.region, Shock{});
  };
  const auto [r_sc, fast] = c_shock({0.95, 0.8}, {0.95, 0.2});
  CHECK(r_sc == RegionCase::U_sc);
  CHECK(fast.classification == ShockClass::Lax2);
  const auto [r_cs, slow] = c_shock({0.6, 0.8}, {0.9, 0.2});
  CHECK(r_cs == RegionCase::U_cs);
  CHECK(slow.classification == ShockClass::Lax1);
}

TEST_CASE("fast rejections and the chord condition") {
  const Model& m = ref();
  Shock zero;
  zero.u_minus = {0.0, 0.5};
  zero.u_plus = {0.6, 0.5};
  zero.v = m.f(0.6, 0.5) / 0.6;
  CHECK_FALSE(is_admissible(m, zero, 1.0).admissible);
  const Shock up = make_shock(m, {0.6, 0.2}, {0.4, 0.2});
  Shock rising = up;
  rising.u_minus.c = 0.2;
  rising.u_plus.c = 0.7;
  CHECK_FALSE(is_admissible(m, rising, 1.0).admissible);
  // s-shock from 0.1 to 0.9 crosses the graph; its hull decomposition is admissible
  const double c = 0.5;
  const Shock bad = make_shock(m, {0.1, c}, {0.9, c});
  CHECK_FALSE(is_admissible(m, bad, 1.0).admissible);
  const auto waves = s_wave_group(m, c, 0.1, 0.9, 0.0);
  bool any_shock = false;
  for (const Wave& w : waves)
    if (w.shock) {
      any_shock = true;
      CHECK(is_admissible(m, *w.shock, 1.0).admissible);
    }
  CHECK(any_shock);
}

TEST_CASE("small-s threshold and Lax behaviour") {
  const Model& m = ref();
  const double s_star = lax_small_s_threshold(m);
  CHECK(s_star > 0.0);
  CHECK(s_star < inflection_point(m, 0.5));
  // admissible s-shocks starting below the threshold are Lax in the s-family
  for (double c : {0.1, 0.5, 0.9})
    for (double sp : {0.3, 0.6, 0.95}) {
      const double sm = 0.5 * s_star;
      const Shock sh = make_shock(m, {sm, c}, {sp, c});
      if (is_admissible(m, sh, 1.0).admissible) CHECK(m.f_s(sm, c) > sh.v);
    }
}
