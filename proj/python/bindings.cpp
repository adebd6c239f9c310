#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chemflood/characteristics.hpp"
#include "chemflood/errors.hpp"
#include "chemflood/io.hpp"
#include "chemflood/lagrange.hpp"
#include "chemflood/model.hpp"
#include "chemflood/rarefaction.hpp"
#include "chemflood/riemann.hpp"
#include "chemflood/shock.hpp"
#include "chemflood/viscous.hpp"

namespace py = pybind11;
using namespace chemflood;
using io::json;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_py(x));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default: return py::none();
  }
}

State st(std::pair<double, double> u) { return {u.first, u.second}; }

const Model& ready(const Model& m) {
  if (!m.is_validated()) throw PreconditionError("model is not validated; call validated() first");
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Riemann solutions for two-phase flow with an adsorbing chemical";

  auto base = py::register_exception<Error>(mod, "Error");
  py::register_exception<DomainError>(mod, "DomainError", base.ptr());
  py::register_exception<PreconditionError>(mod, "PreconditionError", base.ptr());
  py::register_exception<ValidationError>(mod, "ValidationError", base.ptr());
  py::register_exception<StructureError>(mod, "StructureError", base.ptr());
  py::register_exception<NumericalError>(mod, "NumericalError", base.ptr());
  py::register_exception<RhError>(mod, "RhError", base.ptr());
  py::register_exception<DegenerateError>(mod, "DegenerateError", base.ptr());
  py::register_exception<ConnectionNotFound>(mod, "ConnectionNotFound", base.ptr());
  py::register_exception<UnsupportedCase>(mod, "UnsupportedCase", base.ptr());
  py::register_exception<CompatibilityError>(mod, "CompatibilityError", base.ptr());
  py::register_exception<ZeroFlowError>(mod, "ZeroFlowError", base.ptr());

  py::class_<Model>(mod, "Model")
      .def_static("reference", &Model::reference)
      .def_static("from_json", &model_from_json)
      .def("to_json", &model_to_json)
      .def("validated", &Model::validated, py::arg("n_grid") = 128)
      .def("with_adsorption_scale", &Model::with_adsorption_scale)
      .def("f", &Model::f)
      .def("f_s", &Model::f_s)
      .def("a", &Model::a)
      .def("lambda_c", [](const Model& m, double s, double c) { return lambda_c(m, s, c); })
      .def_property_readonly("is_validated", &Model::is_validated)
      .def_property_readonly("c_star", &Model::c_star);

  py::class_<RiemannSolution>(mod, "Solution")
      .def("to_dict", [](const RiemannSolution& s) { return to_py(io::to_json(s)); })
      .def_property_readonly("region", [](const RiemannSolution& s) { return s.label.name(); })
      .def_property_readonly("structure",
                             [](const RiemannSolution& s) { return std::string(to_string(s.label.structure)); })
      .def_property_readonly("states", [](const RiemannSolution& s) {
        std::vector<std::pair<double, double>> out;
        for (State u : s.states) out.emplace_back(u.s, u.c);
        return out;
      });

  mod.def(
      "validate_assumptions",
      [](const Model& m, int n) { return to_py(io::to_json(validate_assumptions(m, n))); },
      py::arg("model"), py::arg("n_grid") = 128);
  mod.def("find_saddle", [](const Model& m) { return to_py(io::to_json(find_saddle(ready(m)))); });
  mod.def("key_points", [](const Model& m, double c_L, double c_R) {
    const KeyPoints k = key_points(ready(m), c_L, c_R);
    json j = {{"s_1L", k.s_1L}, {"s_2L", k.s_2L}, {"s_3R", k.s_3R}, {"s_4R", k.s_4R},
              {"s_2K", k.s_2K}, {"s_3K", k.s_3K}, {"s_0L", k.s_0L}, {"s_0R", k.s_0R},
              {"s_0K", k.s_0K}, {"s_1K", k.s_1K ? json(*k.s_1K) : json(nullptr)}};
    return to_py(j);
  });
  mod.def("connect_undercompressive", [](const Model& m, double c_L, double c_R, double kappa) {
    const Connection c = connect_undercompressive(ready(m), c_L, c_R, kappa);
    json j = io::to_json(c.shock);
    j["residual"] = c.residual;
    return to_py(j);
  });
  mod.def(
      "solve",
      [](const Model& m, std::pair<double, double> uL, std::pair<double, double> uR, double kappa) {
        return solve(ready(m), st(uL), st(uR), kappa);
      },
      py::arg("model"), py::arg("u_L"), py::arg("u_R"), py::arg("kappa") = 1.0);
  mod.def(
      "classify",
      [](const Model& m, std::pair<double, double> uL, std::pair<double, double> uR, double kappa) {
        return classify_pair(ready(m), st(uL), st(uR), kappa).name();
      },
      py::arg("model"), py::arg("u_L"), py::arg("u_R"), py::arg("kappa") = 1.0);
  mod.def("evaluate", [](const Model& m, const RiemannSolution& sol, const std::vector<double>& xi) {
    std::vector<std::pair<double, double>> out;
    out.reserve(xi.size());
    for (double x : xi) {
      const State u = evaluate_profile(m, sol, x);
      out.emplace_back(u.s, u.c);
    }
    return out;
  });
  mod.def("check_solution", [](const RiemannSolution& sol) { return check_solution(sol); });
  mod.def("verify_lagrange", [](const Model& m, const RiemannSolution& sol) {
    return to_py(io::to_json(verify_lagrange(ready(m), sol)));
  });
  mod.def(
      "simulate",
      [](const Model& m, std::pair<double, double> uL, std::pair<double, double> uR, double eps_c,
         double kappa, int N, double T, double X) {
        ViscousParams p;
        p.eps_c = eps_c;
        p.kappa = kappa;
        p.N = N;
        p.T = T;
        p.X = X;
        GridSolution g;
        {
          py::gil_scoped_release release;
          g = simulate(ready(m), st(uL), st(uR), p);
        }
        py::dict out;
        out["x"] = g.x;
        out["s"] = g.s;
        out["c"] = g.c;
        out["t"] = g.t;
        out["steps"] = g.steps;
        out["drift_s"] = g.drift_s;
        out["drift_m"] = g.drift_m;
        return out;
      },
      py::arg("model"), py::arg("u_L"), py::arg("u_R"), py::arg("eps_c") = 1e-3, py::arg("kappa") = 1.0,
      py::arg("N") = 4096, py::arg("T") = 1.0, py::arg("X") = 1.5);
  mod.def(
      "viscous_l1",
      [](const Model& m, const RiemannSolution& exact, double eps_c, int N, double T) {
        ViscousParams p;
        p.eps_c = eps_c;
        p.kappa = exact.kappa;
        p.N = N;
        p.T = T;
        p.X = domain_half_width(exact, T);
        L1Error e;
        {
          py::gil_scoped_release release;
          const GridSolution g = simulate(ready(m), exact.u_L, exact.u_R, p);
          e = compare(m, g, exact);
        }
        return to_py(io::to_json(e));
      },
      py::arg("model"), py::arg("exact"), py::arg("eps_c"), py::arg("N") = 4096, py::arg("T") = 1.0);
}
