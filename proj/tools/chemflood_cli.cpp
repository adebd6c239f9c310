#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemflood/characteristics.hpp"
#include "chemflood/errors.hpp"
#include "chemflood/io.hpp"
#include "chemflood/lagrange.hpp"
#include "chemflood/layout.hpp"
#include "chemflood/model.hpp"
#include "chemflood/rarefaction.hpp"
#include "chemflood/riemann.hpp"
#include "chemflood/roots.hpp"
#include "chemflood/shock.hpp"
#include "chemflood/viscous.hpp"

namespace fs = std::filesystem;
using namespace chemflood;
using io::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int fail(int code, const std::string& kind, const std::string& message) {
  json j = {{"error", {{"kind", kind}, {"message", message}}}, {"exit", code}};
  std::cerr << j.dump() << "\n";
  return code;
}

State parse_state(const std::string& text, const char* flag) {
  std::istringstream is(text);
  double s = 0, c = 0;
  char comma = 0;
  if (!(is >> s >> comma >> c) || comma != ',' || !(is >> std::ws).eof())
    throw UsageError(std::string(flag) + " expects s,c");
  if (!(s >= 0.0 && s <= 1.0) || !(c >= 0.0 && c <= 1.0))
    throw UsageError(std::string(flag) + " must lie in the unit square");
  return {s, c};
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw UsageError(flag);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + " expects a comma separated list of numbers");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " is empty");
  return out;
}

void check_unit(double x, const char* flag) {
  if (!(x >= 0.0 && x <= 1.0)) throw UsageError(std::string(flag) + " must lie in [0, 1]");
}

struct Common {
  std::string model_path;
  std::string out_dir;
  long seed = 0;
};

Model load_model(const Common& opt) {
  if (opt.model_path.empty()) return Model::reference();
  std::ifstream in(opt.model_path);
  if (!in) throw UsageError("cannot read model file " + opt.model_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

Model load_validated(const Common& opt) { return load_model(opt).validated(); }

void emit(const std::string& dir, const std::string& name, const std::string& content) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  io::write_file((fs::path(dir) / name).string(), content);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

double lo_speed(const RiemannSolution& sol) {
  double v = 0.0;
  for (const Wave& w : sol.waves) v = std::min(v, w.speed_lo);
  return v;
}

double hi_speed(const RiemannSolution& sol) {
  double v = 1.0;
  for (const Wave& w : sol.waves) v = std::max(v, w.speed_hi);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Riemann solver for the chemical flood system"};
  app.require_subcommand(1);
  Common opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", opt.model_path, "model JSON (reference model when omitted)");
    sub->add_option("--out", opt.out_dir, "directory for CSV and JSON artifacts");
    sub->add_option("--seed", opt.seed, "seed for sampled diagnostics");
  };

  std::string left, right;
  double kappa = 1.0, c_left = 0.8, c_right = 0.2;
  int grid = 128, layout_grid = 200, samples = 400, cells = 4096;
  double time = 1.0, half_width = 0.0;
  std::string eps_text = "4e-3,2e-3,1e-3", through;
  std::optional<double> construct_kappa;
  bool check = false;

  auto* validate = app.add_subcommand("validate", "check the model assumptions");
  add_common(validate);
  validate->add_option("--grid", grid, "samples per axis")->check(CLI::Range(32, 100000));

  auto* saddle = app.add_subcommand("saddle", "saddle point of the c-rarefaction field");
  add_common(saddle);

  auto* curves = app.add_subcommand("curves", "separatrices and rarefaction curves as CSV");
  add_common(curves);
  curves->add_option("--through", through, "extra curve through s,c in both directions");
  curves->add_option("--samples", samples, "points per curve")->check(CLI::Range(1, 1000000));

  auto* locus = app.add_subcommand("locus", "coincidence locus as CSV");
  add_common(locus);
  locus->add_option("--samples", samples, "points along c")->check(CLI::Range(2, 1000000));

  auto* phase = app.add_subcommand("phase", "travelling-wave nullclines and connection");
  add_common(phase);
  phase->add_option("--c-left", c_left)->required();
  phase->add_option("--c-right", c_right)->required();
  phase->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  phase->add_option("--samples", samples, "rows for the nullclines")->check(CLI::Range(2, 1000000));

  auto* solve_cmd = app.add_subcommand("solve", "solve one Riemann problem");
  add_common(solve_cmd);
  solve_cmd->add_option("--left", left, "s,c")->required();
  solve_cmd->add_option("--right", right, "s,c")->required();
  solve_cmd->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--samples", samples, "profile intervals")->check(CLI::Range(1, 10000000));

  auto* layout_cmd = app.add_subcommand("layout", "region layout in the (s_L, s_R) square");
  add_common(layout_cmd);
  layout_cmd->add_option("--c-left", c_left)->required();
  layout_cmd->add_option("--c-right", c_right)->required();
  layout_cmd->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  layout_cmd->add_option("--grid", layout_grid, "cells per axis")->check(CLI::Range(2, 5000));
  layout_cmd->add_flag("--check", check, "run the boundary consistency check");

  auto* vlag = app.add_subcommand("verify-lagrange", "Lagrange coordinate residuals");
  add_common(vlag);
  vlag->add_option("--left", left, "s,c")->required();
  vlag->add_option("--right", right, "s,c")->required();
  vlag->add_option("--kappa", kappa)->check(CLI::PositiveNumber);

  auto* vvis = app.add_subcommand("verify-viscous", "viscous convergence ladder");
  add_common(vvis);
  vvis->add_option("--left", left, "s,c")->required();
  vvis->add_option("--right", right, "s,c")->required();
  vvis->add_option("--kappa", kappa, "eps_d / eps_c of the simulation")->check(CLI::PositiveNumber);
  vvis->add_option("--construct-kappa", construct_kappa, "kappa of the exact construction")
      ->check(CLI::PositiveNumber);
  vvis->add_option("--eps-ladder", eps_text, "eps_c values");
  vvis->add_option("--cells", cells)->check(CLI::Range(256, 1 << 24));
  vvis->add_option("--time", time)->check(CLI::PositiveNumber);
  vvis->add_option("--half-width", half_width, "domain half-width (automatic when 0)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail(kUsage, "usage", e.what());
  }

  try {
    if (validate->parsed()) {
      const Model m = load_model(opt);
      const ValidationReport rep = validate_assumptions(m, grid);
      const json j = io::to_json(rep);
      emit(opt.out_dir, "validate.json", j.dump(2) + "\n");
      print(j);
      if (!rep.passed) {
        std::string first = rep.violations.empty() ? "" : rep.violations.front().condition;
        return fail(kValidation, "validation", "model violates " + first);
      }
      return kOk;
    }

    if (saddle->parsed()) {
      const Model m = load_validated(opt);
      json j = io::to_json(find_saddle(m));
      j["c_star"] = m.c_star();
      emit(opt.out_dir, "saddle.json", j.dump(2) + "\n");
      print(j);
      return kOk;
    }

    if (curves->parsed()) {
      const Model m = load_validated(opt);
      std::optional<State> u0;
      if (!through.empty()) u0 = parse_state(through, "--through");
      const Separatrices seps = separatrices(m);
      std::vector<std::pair<std::string, RarefactionCurve>> list = {
          {"G1", seps.g1}, {"G2", seps.g2}, {"G3", seps.g3}, {"G4", seps.g4}};
      if (u0) {
        list.emplace_back("through_lo", integrate_curve(m, *u0, Direction::TowardCLo));
        list.emplace_back("through_hi", integrate_curve(m, *u0, Direction::TowardCHi));
      }
      json j = json::array();
      for (const auto& [name, cv] : list) {
        emit(opt.out_dir, name + ".csv", io::curve_csv(m, cv, samples));
        j.push_back({{"name", name},
                     {"c_lo", cv.empty() ? json(nullptr) : json(cv.c_lo())},
                     {"c_hi", cv.empty() ? json(nullptr) : json(cv.c_hi())},
                     {"lo", cv.empty() ? json(nullptr) : io::to_json(cv.lo_state())},
                     {"hi", cv.empty() ? json(nullptr) : io::to_json(cv.hi_state())},
                     {"terminus_lo", to_string(cv.terminus_lo())},
                     {"terminus_hi", to_string(cv.terminus_hi())},
                     {"side", to_string(cv.side())}});
      }
      print({{"curves", j}});
      return kOk;
    }

    if (locus->parsed()) {
      const Model m = load_validated(opt);
      std::ostringstream csv;
      csv << "c,s,lambda_c,side\n";
      for (int k = 0; k < samples; ++k) {
        const double c = double(k) / (samples - 1);
        const double s = coincidence_point(m, c);
        csv << io::num(c) << ',' << io::num(s) << ',' << io::num(lambda_c(m, s, c)) << ",Locus\n";
      }
      emit(opt.out_dir, "locus.csv", csv.str());
      const SaddlePoint sp = find_saddle(m);
      print({{"samples", samples}, {"saddle", io::to_json(sp.u_star)}, {"c_star", m.c_star()}});
      return kOk;
    }

    if (phase->parsed()) {
      check_unit(c_left, "--c-left");
      check_unit(c_right, "--c-right");
      const Model m = load_validated(opt);
      const Connection con = connect_undercompressive(m, c_left, c_right, kappa);
      const Shock& sh = con.shock;
      const ShockFrame frame(m, c_left, c_right, kappa);
      // s-nullcline f(s, c) = v (s + d1) row by row
      std::ostringstream nc;
      nc << "branch,c,s\n";
      for (int k = 0; k < samples; ++k) {
        const double c = c_right + (c_left - c_right) * k / (samples - 1);
        auto g = [&](double s) { return m.f(s, c) - sh.v * (s + sh.d1); };
        const int n = 1024;
        int root = 0;
        double a = 0.0, ga = g(0.0);
        for (int i = 1; i <= n; ++i) {
          const double b = double(i) / n, gb = g(b);
          if (ga == 0.0 || (ga < 0.0) != (gb < 0.0)) {
            const double s = ga == 0.0 ? a : roots::bisect(g, a, b, 1e-14);
            nc << "s_nullcline_" << root++ << ',' << io::num(c) << ',' << io::num(s) << '\n';
          }
          a = b;
          ga = gb;
        }
      }
      for (double c : {c_right, c_left})
        for (double s : {0.0, 1.0})
          nc << "c_nullcline," << io::num(c) << ',' << io::num(s) << '\n';
      std::ostringstream tr;
      tr << "branch,c,s\n";
      for (bool from_minus : {true, false}) {
        const double c_end = 0.5 * (c_left + c_right);
        for (State u : frame.saddle_trajectory(sh.v, from_minus, c_end))
          tr << (from_minus ? "from_minus" : "from_plus") << ',' << io::num(u.c) << ','
             << io::num(u.s) << '\n';
      }
      emit(opt.out_dir, "nullclines.csv", nc.str());
      emit(opt.out_dir, "trajectory.csv", tr.str());
      json j = {{"c_left", c_left},
                {"c_right", c_right},
                {"kappa", kappa},
                {"shock", io::to_json(sh)},
                {"shooting_residual", con.residual},
                {"rh_residual", con.rh.max()},
                {"v1", frame.v1()},
                {"v_max", frame.v_max()}};
      emit(opt.out_dir, "phase.json", j.dump(2) + "\n");
      print(j);
      return kOk;
    }

    if (solve_cmd->parsed()) {
      const State uL = parse_state(left, "--left"), uR = parse_state(right, "--right");
      const Model m = load_validated(opt);
      const RiemannSolution sol = solve(m, uL, uR, kappa);
      const json j = io::to_json(sol);
      emit(opt.out_dir, "solution.json", j.dump(2) + "\n");
      emit(opt.out_dir, "profile.csv",
           io::profile_csv(m, sol, lo_speed(sol) - 0.1, hi_speed(sol) + 0.1, samples));
      print(j);
      return kOk;
    }

    if (layout_cmd->parsed()) {
      check_unit(c_left, "--c-left");
      check_unit(c_right, "--c-right");
      if (c_left == c_right) throw UsageError("layout needs --c-left != --c-right");
      const Model m = load_validated(opt);
      const RiemannSolver solver(m, kappa);
      const Layout lay = region_layout(solver, c_left, c_right, layout_grid);
      json counts = json::object();
      for (const std::string& name : lay.names()) counts[name] = lay.count(name);
      json bounds = json::array();
      for (const Polyline& p : lay.boundaries) {
        emit(opt.out_dir, "boundary_" + p.name + ".csv", io::polyline_csv(p));
        bounds.push_back({{"name", p.name}, {"points", p.points.size()}});
      }
      emit(opt.out_dir, "layout.csv", io::layout_csv(lay));
      json j = {{"c_left", c_left}, {"c_right", c_right}, {"kappa", kappa},
                {"grid", layout_grid}, {"counts", counts}, {"boundaries", bounds}};
      if (c_left < c_right) {
        const RegionAreas a = region_areas(m, c_left, c_right);
        j["areas"] = {{"U_cs", a.cs},     {"U_sc", a.sc},     {"U_csc", a.csc},   {"U_scs", a.scs},
                      {"U_cscs", a.cscs}, {"U_scsc", a.scsc}, {"U_cscsc", a.cscsc}};
      }
      if (check) {
        const BoundaryCheck bc = boundary_consistency(solver, lay);
        j["boundary_check"] = {
            {"pairs", bc.pairs}, {"failures", bc.failures}, {"max_l1", bc.max_l1}, {"worst", bc.worst}};
      }
      emit(opt.out_dir, "layout.json", j.dump(2) + "\n");
      print(j);
      return kOk;
    }

    if (vlag->parsed()) {
      const State uL = parse_state(left, "--left"), uR = parse_state(right, "--right");
      const Model m = load_validated(opt);
      const RiemannSolution sol = solve(m, uL, uR, kappa);
      const LagrangeReport rep = verify_lagrange(m, sol);
      json j = io::to_json(rep);
      j["structure"] = to_string(sol.label.structure);
      j["passed"] = rep.max_rh < 1e-9 && rep.max_loop < 1e-8 && rep.path_difference < 1e-8 &&
                    rep.unit_flux <= 1e-12 && rep.zeta_speeds_positive && rep.min_U_ok;
      emit(opt.out_dir, "lagrange.json", j.dump(2) + "\n");
      print(j);
      return kOk;
    }

    if (vvis->parsed()) {
      const State uL = parse_state(left, "--left"), uR = parse_state(right, "--right");
      const std::vector<double> eps = parse_list(eps_text, "--eps-ladder");
      for (double e : eps)
        if (!(e > 0.0)) throw UsageError("--eps-ladder values must be positive");
      const Model m = load_validated(opt);
      const RiemannSolution exact = solve(m, uL, uR, construct_kappa.value_or(kappa));
      ViscousParams p;
      p.kappa = kappa;
      p.N = cells;
      p.T = time;
      p.X = half_width > 0.0 ? half_width : domain_half_width(exact, time);
      json rungs = json::array();
      std::vector<double> totals;
      for (size_t k = 0; k < eps.size(); ++k) {
        p.eps_c = eps[k];
        const GridSolution g = simulate(m, uL, uR, p);
        const L1Error e = compare(m, g, exact);
        totals.push_back(e.total());
        rungs.push_back({{"eps_c", eps[k]},
                         {"eps_d", p.eps_d()},
                         {"error", io::to_json(e)},
                         {"steps", g.steps},
                         {"drift_s", g.drift_s},
                         {"drift_m", g.drift_m},
                         {"clipped_s", g.clipped_s},
                         {"clipped_c", g.clipped_c},
                         {"range_s", {g.s_min, g.s_max}},
                         {"range_c", {g.c_min, g.c_max}}});
        emit(opt.out_dir, "snapshot_" + std::to_string(k) + ".csv", io::snapshot_csv(g));
      }
      json ratios = json::array();
      for (size_t k = 0; k + 1 < totals.size(); ++k) ratios.push_back(totals[k] / totals[k + 1]);
      emit(opt.out_dir, "exact.csv", io::profile_csv(m, exact, -p.X / time, p.X / time, 4000));
      json j = {{"structure", to_string(exact.label.structure)},
                {"region", exact.label.name()},
                {"kappa", kappa},
                {"construct_kappa", exact.kappa},
                {"cells", cells},
                {"time", time},
                {"half_width", p.X},
                {"rungs", rungs},
                {"ratios", ratios}};
      emit(opt.out_dir, "viscous.json", j.dump(2) + "\n");
      print(j);
      return kOk;
    }
  } catch (const UsageError& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const ValidationError& e) {
    return fail(kValidation, e.kind(), e.what());
  } catch (const Error& e) {
    return fail(kNumerical, e.kind(), e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(kUsage, "io", e.what());
  } catch (const std::exception& e) {
    return fail(kNumerical, "internal", e.what());
  }
  return fail(kUsage, "usage", "no command");
}
