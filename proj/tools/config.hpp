#pragma once

// Scenario and sweep configuration documents (JSON).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nled/lagrangian.hpp"
#include "nled/optics.hpp"

namespace nled::app {

// A malformed or inconsistent configuration; `path` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Units { Natural, SI };
enum class OutputFormat { Human, Json, Csv };

struct ModelConfig {
  std::string name = "maxwell";
  double b = 1.0;  // Born field strength in tesla; natural units have b = 1
  std::vector<PolynomialTerm> terms;  // plebanski_custom only
};

struct ScenarioConfig {
  ModelConfig model;
  Units units = Units::Natural;
  FieldTensor3P background_input;  // as written in the file
  UnitSystem constants;            // c and mu0 from the file when units = si
  Vector3d direction = Vector3d::UnitX();
  SolverSettings solver;
  OutputFormat format = OutputFormat::Human;
  std::optional<std::string> output_path;
  std::uint64_t seed = 20240517;
  int verify_samples = 12;

  /// Background converted to natural units.
  FieldTensor3P background() const;
  LagrangianModel build_model() const;
};

ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::string& path);

/// The same scenario written back as a document (natural and SI fields as given).
nlohmann::ordered_json to_json(const ScenarioConfig& config);

struct SweepSpec {
  std::string parameter;  // background.E[i], background.B[i], direction[i],
                          // direction.azimuth, direction.polar
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  std::vector<std::string> quantities;
};

/// Quantity columns understood by the sweep command.
const std::vector<std::string>& sweep_quantities();

SweepSpec parse_sweep(const nlohmann::json& doc);
SweepSpec load_sweep(const std::string& path);

/// Copy of `base` with the swept parameter set to `value` (natural/SI as in the file).
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& parameter,
                                 double value);

nlohmann::json read_json_file(const std::string& path);

}  // namespace nled::app
