#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "nled/error.hpp"

namespace nled::app {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      throw ConfigError(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
    }
  }
}

const json& require_object(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.contains(key)) throw ConfigError(path, "missing required field");
  const json& v = doc.at(key);
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

Vector3d vector3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(path, "expected an array of 3 numbers");
  Vector3d out;
  for (int i = 0; i < 3; ++i) out(i) = number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

ModelConfig parse_model(const json& m) {
  reject_unknown(m, "model", {"name", "b", "terms"});
  ModelConfig out;
  if (!m.contains("name")) throw ConfigError("model.name", "missing required field");
  out.name = string(m.at("name"), "model.name");
  if (m.contains("b")) out.b = number(m.at("b"), "model.b");
  if (!(out.b > 0.0)) throw ConfigError("model.b", "must be positive");

  const bool custom = out.name == "plebanski_custom";
  if (!custom) {
    try {
      (void)builtin_model(out.name);
    } catch (const ArgumentError&) {
      throw ConfigError("model.name",
                        "unknown model '" + out.name +
                            "' (expected maxwell, born, born_infeld or plebanski_custom)");
    }
    if (m.contains("terms")) throw ConfigError("model.terms", "only valid for plebanski_custom");
    return out;
  }
  if (!m.contains("terms")) throw ConfigError("model.terms", "required for plebanski_custom");
  const json& terms = m.at("terms");
  if (!terms.is_array() || terms.empty()) {
    throw ConfigError("model.terms", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = "model.terms[" + std::to_string(i) + "]";
    const json& t = terms[i];
    if (!t.is_object()) throw ConfigError(path, "expected an object {f, g, c}");
    reject_unknown(t, path, {"f", "g", "c"});
    for (const char* key : {"f", "g", "c"}) {
      if (!t.contains(key)) throw ConfigError(path + "." + key, "missing required field");
    }
    PolynomialTerm term{integer(t.at("f"), path + ".f"), integer(t.at("g"), path + ".g"),
                        number(t.at("c"), path + ".c")};
    if (term.f_power < 0) throw ConfigError(path + ".f", "must be non-negative");
    if (term.g_power < 0) throw ConfigError(path + ".g", "must be non-negative");
    out.terms.push_back(term);
  }
  return out;
}

void parse_solver(const json& s, SolverSettings& out) {
  reject_unknown(s, "solver",
                 {"s_range", "grid_points", "bisection_tol", "rank_tol", "free_tol", "gauge_angle"});
  if (s.contains("s_range")) {
    const json& r = s.at("s_range");
    if (!r.is_array() || r.size() != 2) {
      throw ConfigError("solver.s_range", "expected [s_min, s_max]");
    }
    out.s_min = number(r[0], "solver.s_range[0]");
    out.s_max = number(r[1], "solver.s_range[1]");
    if (!(out.s_min > 0.0) || !(out.s_max > out.s_min)) {
      throw ConfigError("solver.s_range", "must satisfy 0 < s_min < s_max");
    }
  }
  if (s.contains("grid_points")) {
    out.grid_points = integer(s.at("grid_points"), "solver.grid_points");
    if (out.grid_points < 2) throw ConfigError("solver.grid_points", "must be >= 2");
  }
  auto positive = [&](const char* key, double& field) {
    if (!s.contains(key)) return;
    const std::string path = std::string("solver.") + key;
    field = number(s.at(key), path);
    if (!(field > 0.0)) throw ConfigError(path, "must be positive");
  };
  positive("bisection_tol", out.bisection_tol);
  positive("rank_tol", out.rank_tol);
  positive("free_tol", out.free_tol);
  if (s.contains("gauge_angle")) out.gauge_angle = number(s.at("gauge_angle"), "solver.gauge_angle");
}

}  // namespace

FieldTensor3P ScenarioConfig::background() const {
  if (units == Units::Natural) return background_input;
  UnitSystem u = constants;
  u.b = model.b;
  return si_to_natural(background_input, u);
}

LagrangianModel ScenarioConfig::build_model() const {
  if (model.name == "plebanski_custom") return LagrangianModel::polynomial(model.terms);
  return builtin_model(model.name);
}

ScenarioConfig parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  reject_unknown(doc, "",
                 {"model", "background", "constants", "direction", "solver", "output", "verify"});
  ScenarioConfig c;
  c.model = parse_model(require_object(doc, "model", "model"));

  const json& bg = require_object(doc, "background", "background");
  reject_unknown(bg, "background", {"units", "E", "B"});
  if (bg.contains("units")) {
    const std::string u = string(bg.at("units"), "background.units");
    if (u == "natural") {
      c.units = Units::Natural;
    } else if (u == "si") {
      c.units = Units::SI;
    } else {
      throw ConfigError("background.units", "expected 'natural' or 'si'");
    }
  }
  for (const char* key : {"E", "B"}) {
    if (!bg.contains(key)) throw ConfigError(std::string("background.") + key, "missing required field");
  }
  c.background_input.E = vector3(bg.at("E"), "background.E");
  c.background_input.B = vector3(bg.at("B"), "background.B");

  if (doc.contains("constants")) {
    const json& k = doc.at("constants");
    if (!k.is_object()) throw ConfigError("constants", "expected an object");
    reject_unknown(k, "constants", {"c", "mu0"});
    if (k.contains("c")) c.constants.c = number(k.at("c"), "constants.c");
    if (k.contains("mu0")) c.constants.mu0 = number(k.at("mu0"), "constants.mu0");
  }
  if (c.units == Units::SI) {
    if (!doc.contains("constants") || !doc.at("constants").contains("c") ||
        !doc.at("constants").contains("mu0")) {
      throw ConfigError("constants", "SI backgrounds need explicit c and mu0");
    }
  }
  if (!(c.constants.c > 0.0)) throw ConfigError("constants.c", "must be positive");
  if (!(c.constants.mu0 > 0.0)) throw ConfigError("constants.mu0", "must be positive");

  if (!doc.contains("direction")) throw ConfigError("direction", "missing required field");
  c.direction = vector3(doc.at("direction"), "direction");
  if (!(c.direction.norm() > 0.0)) throw ConfigError("direction", "must be nonzero");

  if (doc.contains("solver")) {
    if (!doc.at("solver").is_object()) throw ConfigError("solver", "expected an object");
    parse_solver(doc.at("solver"), c.solver);
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) throw ConfigError("output", "expected an object");
    reject_unknown(o, "output", {"format", "path"});
    if (o.contains("format")) {
      const std::string f = string(o.at("format"), "output.format");
      if (f == "human") {
        c.format = OutputFormat::Human;
      } else if (f == "json") {
        c.format = OutputFormat::Json;
      } else if (f == "csv") {
        c.format = OutputFormat::Csv;
      } else {
        throw ConfigError("output.format", "expected human, json or csv");
      }
    }
    if (o.contains("path") && !o.at("path").is_null()) c.output_path = string(o.at("path"), "output.path");
  }

  if (doc.contains("verify")) {
    const json& v = doc.at("verify");
    if (!v.is_object()) throw ConfigError("verify", "expected an object");
    reject_unknown(v, "verify", {"seed", "samples"});
    if (v.contains("seed")) {
      if (!v.at("seed").is_number_unsigned()) {
        throw ConfigError("verify.seed", "expected a non-negative integer");
      }
      c.seed = v.at("seed").get<std::uint64_t>();
    }
    if (v.contains("samples")) {
      c.verify_samples = integer(v.at("samples"), "verify.samples");
      if (c.verify_samples < 0) throw ConfigError("verify.samples", "must be non-negative");
    }
  }

  const FieldTensor3P f = c.background();
  if (!c.build_model().in_domain(invariant_F(f), invariant_G(f))) {
    throw ConfigError("background", "field lies outside the domain of model '" + c.model.name + "'");
  }
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("parse error: ") + e.what());
  }
}

ScenarioConfig load_scenario(const std::string& path) { return parse_scenario(read_json_file(path)); }

nlohmann::ordered_json to_json(const ScenarioConfig& c) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  doc["model"] = {{"name", c.model.name}, {"b", c.model.b}};
  if (!c.model.terms.empty()) {
    ojson terms = ojson::array();
    for (const auto& t : c.model.terms) terms.push_back({{"f", t.f_power}, {"g", t.g_power}, {"c", t.coefficient}});
    doc["model"]["terms"] = terms;
  }
  const auto vec = [](const Vector3d& v) { return ojson::array({v.x(), v.y(), v.z()}); };
  doc["background"] = {{"units", c.units == Units::SI ? "si" : "natural"},
                       {"E", vec(c.background_input.E)},
                       {"B", vec(c.background_input.B)}};
  doc["constants"] = {{"c", c.constants.c}, {"mu0", c.constants.mu0}};
  doc["direction"] = vec(c.direction);
  doc["solver"] = {{"s_range", {c.solver.s_min, c.solver.s_max}},
                   {"grid_points", c.solver.grid_points},
                   {"bisection_tol", c.solver.bisection_tol},
                   {"rank_tol", c.solver.rank_tol},
                   {"free_tol", c.solver.free_tol},
                   {"gauge_angle", c.solver.gauge_angle}};
  doc["verify"] = {{"seed", c.seed}, {"samples", c.verify_samples}};
  return doc;
}

const std::vector<std::string>& sweep_quantities() {
  static const std::vector<std::string> q = {
      "s_plus",      "s_minus",     "p_plus",      "p_minus",        "kappa_plus",
      "kappa_minus", "lambda_plus", "lambda_minus", "rank_plus",     "rank_minus",
      "birefringence_gap"};
  return q;
}

namespace {

bool valid_parameter(const std::string& p) {
  static const std::regex pattern(R"((background\.[EB]|direction)\[[0-2]\]|direction\.(azimuth|polar))");
  return std::regex_match(p, pattern);
}

}  // namespace

SweepSpec parse_sweep(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  reject_unknown(doc, "", {"parameter", "range", "quantities"});
  SweepSpec s;
  if (!doc.contains("parameter")) throw ConfigError("parameter", "missing required field");
  s.parameter = string(doc.at("parameter"), "parameter");
  if (!valid_parameter(s.parameter)) {
    throw ConfigError("parameter",
                      "expected background.E[i], background.B[i], direction[i], "
                      "direction.azimuth or direction.polar");
  }
  const json& r = require_object(doc, "range", "range");
  reject_unknown(r, "range", {"start", "stop", "steps"});
  for (const char* key : {"start", "stop", "steps"}) {
    if (!r.contains(key)) throw ConfigError(std::string("range.") + key, "missing required field");
  }
  s.start = number(r.at("start"), "range.start");
  s.stop = number(r.at("stop"), "range.stop");
  s.steps = integer(r.at("steps"), "range.steps");
  if (s.steps < 2) throw ConfigError("range.steps", "must be >= 2");

  const auto& known = sweep_quantities();
  if (doc.contains("quantities")) {
    const json& q = doc.at("quantities");
    if (!q.is_array() || q.empty()) throw ConfigError("quantities", "expected a non-empty array");
    for (std::size_t i = 0; i < q.size(); ++i) {
      const std::string path = "quantities[" + std::to_string(i) + "]";
      const std::string name = string(q[i], path);
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ConfigError(path, "unknown quantity '" + name + "'");
      }
      s.quantities.push_back(name);
    }
  } else {
    s.quantities = known;
  }
  return s;
}

SweepSpec load_sweep(const std::string& path) { return parse_sweep(read_json_file(path)); }

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& parameter,
                                 double value) {
  ScenarioConfig c = base;
  if (parameter == "direction.azimuth" || parameter == "direction.polar") {
    const Vector3d n = c.direction.normalized();
    double polar = std::acos(std::clamp(n.z(), -1.0, 1.0));
    double azimuth = std::atan2(n.y(), n.x());
    (parameter == "direction.azimuth" ? azimuth : polar) = value;
    c.direction = Vector3d(std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
                           std::cos(polar));
    return c;
  }
  const int index = parameter[parameter.size() - 2] - '0';
  if (parameter.rfind("background.E", 0) == 0) {
    c.background_input.E(index) = value;
  } else if (parameter.rfind("background.B", 0) == 0) {
    c.background_input.B(index) = value;
  } else {
    c.direction(index) = value;
  }
  return c;
}

}  // namespace nled::app
