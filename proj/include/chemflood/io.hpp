#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chemflood/characteristics.hpp"
#include "chemflood/lagrange.hpp"
#include "chemflood/layout.hpp"
#include "chemflood/rarefaction.hpp"
#include "chemflood/riemann.hpp"
#include "chemflood/shock.hpp"
#include "chemflood/viscous.hpp"

namespace chemflood::io {

using nlohmann::json;

/// 17 significant digits.
std::string num(double x);

json to_json(State u);
json to_json(const Shock& sh);
json to_json(const SaddlePoint& sp);
json to_json(const ValidationReport& rep);
json to_json(const RiemannSolution& sol);
json to_json(const LagrangeReport& rep);
json to_json(const L1Error& e);

/// Profile samples on n+1 points of [lo, hi]: xi,s,c
std::string profile_csv(const Model& model, const RiemannSolution& sol, double lo, double hi,
                        int n);
/// Grid snapshot at time t in similarity coordinates: xi,s,c
std::string snapshot_csv(const GridSolution& grid);
/// c,s,lambda_c,side
std::string curve_csv(const Model& model, const RarefactionCurve& curve, int n);
/// s_L,s_R,label
std::string layout_csv(const Layout& layout);
/// s_L,s_R
std::string polyline_csv(const Polyline& line);

void write_file(const std::string& path, const std::string& content);

}  // namespace chemflood::io
