#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "topophase/evolution.hpp"
#include "topophase/interference.hpp"
#include "topophase/schedule.hpp"

namespace topophase {

enum class ScenarioName { Fig2, Fig3, Fig4, Fig5, Custom };

std::string_view to_string(ScenarioName name);
ScenarioName scenario_by_name(std::string_view name);

enum class InputKind { MaximallyEntangled, UniformProduct, Explicit };

struct InputSpec {
  InputKind kind = InputKind::MaximallyEntangled;
  CMatrix matrix;  // used when kind == Explicit; normalized on load
  std::string label;
};

/// Declarative schedule: a built-in name, or "custom" with phase tables.
struct ScheduleSpec {
  std::string kind;
  std::vector<double> knots;
  std::vector<std::vector<double>> signal;
  std::vector<std::vector<double>> idler;
  bool su_constrained = true;

  PhaseSchedule build() const;
};

struct ScenarioConfig {
  ScenarioName scenario = ScenarioName::Fig2;
  int dim = 3;
  std::vector<InputSpec> inputs;
  ScheduleSpec schedule;
  std::vector<double> t_values{0.0, 0.5, 1.0};
  double tau = 0.0;
  int n_theta = 256;
  int n_steps = 1000;
  bool write_csv = true;
  bool write_svg = true;
  bool write_report = true;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;
};

/// Flag-level settings; each one present overrides the config file.
struct ScenarioOverrides {
  std::optional<std::string> scenario;
  std::optional<std::string> state;
  std::optional<int> dim;
  std::optional<std::vector<double>> t_values;
  std::optional<double> tau;
  std::optional<int> n_theta;
  std::optional<int> n_steps;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
};

/// Merges a parsed config document (may be null) with flag overrides and
/// applies the fixed settings of named scenarios. Throws InvalidConfig on
/// contradictions or malformed input.
ScenarioConfig resolve_config(const nlohmann::json& file, const ScenarioOverrides& flags);

nlohmann::json load_config_file(const std::filesystem::path& path);

struct ScenarioResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  nlohmann::json report;
  std::vector<std::string> failures;  // cyclicity expectations that did not hold
};

/// Computes every (input, t) fringe pattern and phase report and writes the
/// requested outputs under config.out_dir.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// "theta,coincidence" rows with 12 significant digits.
std::string fringe_csv(const FringePattern& pattern);

}  // namespace topophase
