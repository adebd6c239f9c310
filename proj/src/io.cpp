#include "chemflood/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "chemflood/errors.hpp"

namespace chemflood::io {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(State u) { return json::array({u.s, u.c}); }

json to_json(const Shock& sh) {
  return {{"u_minus", to_json(sh.u_minus)},
          {"u_plus", to_json(sh.u_plus)},
          {"v", sh.v},
          {"family", to_string(sh.family)},
          {"classification", to_string(sh.classification)},
          {"h", sh.h},
          {"d1", sh.d1},
          {"d2", sh.d2}};
}

json to_json(const SaddlePoint& sp) {
  return {{"u_star", to_json(sp.u_star)},
          {"mu_plus", sp.mu_plus},
          {"mu_minus", sp.mu_minus},
          {"dir_plus", {sp.dir_plus[0], sp.dir_plus[1]}},
          {"dir_minus", {sp.dir_minus[0], sp.dir_minus[1]}},
          {"L", {{sp.L[0][0], sp.L[0][1]}, {sp.L[1][0], sp.L[1][1]}}},
          {"residual_fc", sp.residual_fc},
          {"residual_locus", sp.residual_locus},
          {"newton_iterations", sp.newton_iterations}};
}

json to_json(const ValidationReport& rep) {
  json v = json::array();
  for (const Violation& x : rep.violations)
    v.push_back({{"condition", x.condition}, {"s", x.s}, {"c", x.c}, {"detail", x.detail}});
  return {{"passed", rep.passed},
          {"f3_prime", rep.f3_prime},
          {"c_star_found", rep.c_star_found},
          {"c_star", rep.c_star_found ? json(rep.c_star) : json(nullptr)},
          {"violations", v}};
}

json to_json(const RiemannSolution& sol) {
  json waves = json::array();
  for (const Wave& w : sol.waves) {
    json j = {{"kind", to_string(w.kind)},
              {"left", to_json(w.left)},
              {"right", to_json(w.right)},
              {"speed_lo", w.speed_lo},
              {"speed_hi", w.speed_hi}};
    if (w.shock) j["shock"] = to_json(*w.shock);
    waves.push_back(j);
  }
  json states = json::array();
  for (State u : sol.states) states.push_back(to_json(u));
  return {{"u_L", to_json(sol.u_L)},
          {"u_R", to_json(sol.u_R)},
          {"kappa", sol.kappa},
          {"region", sol.label.name()},
          {"structure", to_string(sol.label.structure)},
          {"waves", waves},
          {"states", states}};
}

json to_json(const LagrangeReport& rep) {
  json shocks = json::array();
  for (const LagrangeShockReport& r : rep.shocks)
    shocks.push_back({{"wave", r.wave},
                      {"kind", r.kind},
                      {"U_minus", r.mapped.U_minus},
                      {"U_plus", r.mapped.U_plus},
                      {"zeta_minus", r.mapped.zeta_minus},
                      {"zeta_plus", r.mapped.zeta_plus},
                      {"v_star", r.mapped.v_star},
                      {"rh_U", r.mapped.rh_U},
                      {"rh_zeta", r.mapped.rh_zeta},
                      {"round_trip", r.round_trip},
                      {"loop", r.loop},
                      {"zeta_speed_positive", r.zeta_speed_positive}});
  return {{"shocks", shocks},
          {"max_rh", rep.max_rh},
          {"max_loop", rep.max_loop},
          {"max_round_trip", rep.max_round_trip},
          {"unit_flux", rep.unit_flux},
          {"path_difference", rep.path_difference},
          {"zeta_speeds_positive", rep.zeta_speeds_positive},
          {"min_U_ok", rep.min_U_ok}};
}

json to_json(const L1Error& e) {
  return {{"s", e.s}, {"c", e.c}, {"total", e.total()}, {"shift", e.shift}};
}

std::string profile_csv(const Model& model, const RiemannSolution& sol, double lo, double hi,
                        int n) {
  if (n < 1) throw PreconditionError("profile needs at least one interval");
  std::ostringstream os;
  os << "xi,s,c\n";
  for (int k = 0; k <= n; ++k) {
    const double xi = lo + (hi - lo) * k / n;
    const State u = evaluate_profile(model, sol, xi);
    os << num(xi) << ',' << num(u.s) << ',' << num(u.c) << '\n';
  }
  return os.str();
}

std::string snapshot_csv(const GridSolution& grid) {
  std::ostringstream os;
  os << "xi,s,c\n";
  for (size_t i = 0; i < grid.x.size(); ++i)
    os << num(grid.x[i] / grid.t) << ',' << num(grid.s[i]) << ',' << num(grid.c[i]) << '\n';
  return os.str();
}

std::string curve_csv(const Model& model, const RarefactionCurve& curve, int n) {
  std::ostringstream os;
  os << "c,s,lambda_c,side\n";
  if (curve.empty()) return os.str();
  for (State u : curve.sample(n))
    os << num(u.c) << ',' << num(u.s) << ',' << num(lambda_c(model, u.s, u.c)) << ','
       << to_string(curve.side()) << '\n';
  return os.str();
}

std::string layout_csv(const Layout& layout) {
  std::ostringstream os;
  os << "s_L,s_R,label\n";
  for (int i = 0; i < layout.n; ++i)
    for (int j = 0; j < layout.n; ++j)
      os << num(layout.s_L(i)) << ',' << num(layout.s_R(j)) << ',' << layout.at(i, j).name() << '\n';
  return os.str();
}

std::string polyline_csv(const Polyline& line) {
  std::ostringstream os;
  os << "s_L,s_R\n";
  for (const auto& [a, b] : line.points) os << num(a) << ',' << num(b) << '\n';
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << content;
  if (!out) throw NumericalError("write failed for " + path);
}

}  // namespace chemflood::io
