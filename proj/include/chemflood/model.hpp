#pragma once

#include <string>
#include <vector>

namespace chemflood {

struct State {
  double s = 0.0;
  double c = 0.0;
};

inline bool operator==(const State& a, const State& b) { return a.s == b.s && a.c == b.c; }

struct FluxEval {
  double f, f_s, f_c, f_ss, f_sc, f_cc;
};

struct AdsorptionEval {
  double a, a_c, a_cc;
};

/// Mobility ratio profile m(c) entering the Corey flux.
struct MobilityConfig {
  enum class Family { Quad, Linear };
  Family family = Family::Quad;
  double base = 1.0;
  double amp = 2.0;    // quad: m = base + amp*c*(1-c)
  double slope = 0.0;  // linear: m = base + slope*c
};

/// f = s^nw / (s^nw + m(c) (1-s)^no)
struct FluxConfig {
  double nw = 2.0;
  double no = 2.0;
  MobilityConfig m;
};

struct AdsorptionConfig {
  enum class Family { Langmuir, Linear };
  Family family = Family::Langmuir;
  double b = 1.0;      // langmuir: a = scale*c/(1+b c)
  double scale = 1.0;  // overall amplitude (also the slope of the linear family)
};

struct ModelConfig {
  FluxConfig flux;
  AdsorptionConfig adsorption;
};

/// Flux and adsorption families with analytic derivatives.
/// Values are immutable; `validated()` returns a checked copy carrying c*.
class Model {
 public:
  explicit Model(ModelConfig cfg);
  static Model reference();

  const ModelConfig& config() const { return cfg_; }

  // Unchecked evaluators for inner loops.
  double f(double s, double c) const;
  double f_s(double s, double c) const;
  FluxEval flux(double s, double c) const;
  double a(double c) const;
  AdsorptionEval adsorption(double c) const;

  double m(double c) const;

  bool is_validated() const { return validated_; }
  double c_star() const { return c_star_; }
  /// sup|f| + sup|f_s| + sup|f_c| over the unit square (set by validation).
  double c1_norm() const { return c1_norm_; }

  /// Returns a validated copy; throws ValidationError listing the violations.
  Model validated(int n_grid = 128) const;

  /// Copy with the adsorption amplitude multiplied by k.
  Model with_adsorption_scale(double k) const;

 private:
  ModelConfig cfg_;
  bool validated_ = false;
  double c_star_ = 0.5;
  double c1_norm_ = 0.0;
  bool integer_exponents_ = true;
};

FluxEval eval_flux(const Model& model, State u);
AdsorptionEval eval_adsorption(const Model& model, double c);

struct Violation {
  std::string condition;
  double s = 0.0;
  double c = 0.0;
  std::string detail;
};

struct ValidationReport {
  bool passed = false;
  bool f3_prime = false;  // uniform convexity near s = 0 only
  double c_star = 0.0;
  bool c_star_found = false;
  std::vector<double> c_samples;
  std::vector<double> s_inflection;  // s^I(c) per sampled c, NaN if not located
  std::vector<Violation> violations;

  bool violates(const std::string& condition) const;
};

ValidationReport validate_assumptions(const Model& model, int n_grid);

/// Inflection point s^I(c) located by bisection on f_ss.
double inflection_point(const Model& model, double c);

Model model_from_json(const std::string& text);
std::string model_to_json(const Model& model);

}  // namespace chemflood
