#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heintze/serialization.hpp"
#include "heintze/spectral_basis.hpp"

namespace heintze {

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string to_string(CheckStatus status);
CheckStatus parse_status(const std::string& text);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Inconclusive;
  double value = 0.0;
  /// Canonical JSON of the offending input, empty when there is none.
  std::string witness;
  double seconds = 0.0;
  Json measurements = Json::object();
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool failed() const;
  /// 1 if any check failed, else 0.
  int exit_code() const;
};

/// A user-supplied map run through the listed verifiers ("foliation",
/// "nonbilip", "bilip"). A foliation or nonbilip witness fails the check.
struct InjectedMap {
  std::string name;
  Json descriptor;
  std::vector<std::string> checks;
  std::optional<Level> level;  // all levels when empty
};

struct TrialCounts {
  int oracle = 500;
  int scalar = 1000;
  int similarity = 1000;
  int trichotomy = 4;
  int foliation_maps = 200;
  int cocycle = 100;
  int euclid = 100;
  std::uint64_t audit = 10000;
  int injected = 100;
};

struct ExperimentConfig {
  JordanSpec spec = JordanSpec::make({{1.0, {2}}, {2.0, {1}}});
  std::uint64_t seed = 0;
  double radius = 10.0;
  std::vector<double> schedule;  // empty: default schedule
  double tol = 1e-9;
  /// Checks to run in registration order; empty runs every built-in check.
  std::vector<std::string> checks;
  std::vector<InjectedMap> maps;
  /// Levels the config refers to; each must exist in the spec.
  std::vector<Level> levels;
  TrialCounts trials;
  /// Record wall-clock seconds. Off by default so that reports are byte-identical.
  bool timing = false;
};

/// Names of the built-in checks in registration order.
const std::vector<std::string>& builtin_checks();

/// Parses and validates. Throws SpecError (invalid config) on unknown keys,
/// checks or levels absent from the spec.
ExperimentConfig parse_config(const Json& j);
void validate(const ExperimentConfig& config);

/// Runs the checks sequentially. Check i of the registry draws its randomness
/// from derive_seed(seed, i); injected map m uses derive_seed(seed, 1000 + m).
SuiteReport run_suite(const ExperimentConfig& config);

enum class OutputFormat { Csv, Json };

/// CSV with header check,status,value,witness,seconds or canonical JSON.
std::string emit(const SuiteReport& report, OutputFormat format);
Json to_json(const SuiteReport& report);
SuiteReport parse_report(const Json& j);

}  // namespace heintze
