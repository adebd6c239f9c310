#include <json.hpp>

#include "chemflood/errors.hpp"
#include "chemflood/model.hpp"

namespace chemflood {

using nlohmann::json;

namespace {

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ValidationError(std::string("config field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::string family_of(const json& j, const char* where) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ValidationError(std::string("config: missing family in ") + where);
  return j.at("family").get<std::string>();
}

}  // namespace

Model model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  ModelConfig cfg;
  if (!doc.contains("flux") || !doc.contains("adsorption"))
    throw ValidationError("config needs 'flux' and 'adsorption' objects");

  const json& fx = doc.at("flux");
  if (family_of(fx, "flux") != "corey") throw ValidationError("unsupported flux family");
  cfg.flux.nw = number_or(fx, "nw", 2.0);
  cfg.flux.no = number_or(fx, "no", 2.0);
  if (fx.contains("m")) {
    const json& mj = fx.at("m");
    const std::string fam = family_of(mj, "flux.m");
    if (fam == "quad") {
      cfg.flux.m.family = MobilityConfig::Family::Quad;
      cfg.flux.m.base = number_or(mj, "base", 1.0);
      cfg.flux.m.amp = number_or(mj, "amp", 2.0);
    } else if (fam == "linear") {
      cfg.flux.m.family = MobilityConfig::Family::Linear;
      cfg.flux.m.base = number_or(mj, "base", 1.0);
      cfg.flux.m.slope = number_or(mj, "slope", 1.0);
    } else {
      throw ValidationError("unsupported mobility family '" + fam + "'");
    }
  }

  const json& aj = doc.at("adsorption");
  const std::string afam = family_of(aj, "adsorption");
  if (afam == "langmuir") {
    cfg.adsorption.family = AdsorptionConfig::Family::Langmuir;
    cfg.adsorption.b = number_or(aj, "b", 1.0);
    cfg.adsorption.scale = number_or(aj, "scale", 1.0);
  } else if (afam == "linear") {
    cfg.adsorption.family = AdsorptionConfig::Family::Linear;
    cfg.adsorption.scale = number_or(aj, "scale", 1.0);
  } else {
    throw ValidationError("unsupported adsorption family '" + afam + "'");
  }
  return Model(cfg);
}

std::string model_to_json(const Model& model) {
  const ModelConfig& cfg = model.config();
  json m;
  if (cfg.flux.m.family == MobilityConfig::Family::Quad)
    m = {{"family", "quad"}, {"base", cfg.flux.m.base}, {"amp", cfg.flux.m.amp}};
  else
    m = {{"family", "linear"}, {"base", cfg.flux.m.base}, {"slope", cfg.flux.m.slope}};
  json a;
  if (cfg.adsorption.family == AdsorptionConfig::Family::Langmuir)
    a = {{"family", "langmuir"}, {"b", cfg.adsorption.b}, {"scale", cfg.adsorption.scale}};
  else
    a = {{"family", "linear"}, {"scale", cfg.adsorption.scale}};
  json doc = {{"flux", {{"family", "corey"}, {"nw", cfg.flux.nw}, {"no", cfg.flux.no}, {"m", m}}},
              {"adsorption", a}};
  return doc.dump();
}

}  // namespace chemflood
