#pragma once

// Subcommands of the nled command-line tool. Each returns a process exit code.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace nled::app {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kSolverError = 3 };

inline constexpr int kSchemaVersion = 1;

// Squared-ratio polarization law evaluated next to the pipeline angle (Born only).
struct SquaredRatioReport {
  BornPolarization covariant;             // contraction on the solver's tetrad
  std::optional<BornPolarization> x_axis; // written-out form, direction along +x only
};

struct Analysis {
  std::string model_name;
  FieldTensor3P background;  // natural units
  double F = 0.0;
  double G = 0.0;
  Vector3d direction = Vector3d::UnitX();  // normalized
  std::array<WaveSolution, 2> branches;
  std::array<std::optional<SquaredRatioReport>, 2> squared_ratio;
  std::optional<double> birefringence_gap;
  bool solved = false;  // both branches found
};

Analysis analyze(const ScenarioConfig& config);

nlohmann::ordered_json analysis_json(const ScenarioConfig& config, const Analysis& a);
void print_analysis(std::ostream& out, const ScenarioConfig& config, const Analysis& a);

int cmd_analyze(const ScenarioConfig& config, OutputFormat format, std::ostream& out);
int cmd_sweep(const ScenarioConfig& config, const SweepSpec& spec, std::ostream& out);
int cmd_verify(const ScenarioConfig& config, OutputFormat format, std::ostream& out);
int cmd_models(std::ostream& out);

enum class CheckStatus { Pass, Fail, NotApplicable };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;
  double tolerance = 0.0;
  bool numeric = true;  // false for yes/no checks without a residual
  std::string detail;
};

std::vector<CheckResult> run_checks(const ScenarioConfig& config);

/// Full command line (argv[0] included). Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nled::app
