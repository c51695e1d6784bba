#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "colorent/sweep.hpp"

namespace colorent {

/// Malformed or physically invalid configuration. The message carries the
/// source name, the line and the key where available.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectrumSettings {
  double min = 0.0;  ///< offset from each mode's heralded frequency, rad/s
  double max = 0.0;
  int points = 801;

  bool operator==(const SpectrumSettings&) const = default;
};

/// Everything a CLI run needs, in SI units.
struct RunConfig {
  OperatingPoint point;
  std::optional<AxisRange> axis1;
  std::optional<AxisRange> axis2;
  Thresholds region;
  Objective objective = Objective::NptLossy;
  int budget = 8;
  SpectrumSettings spectrum;
  bool si_units = false;  ///< output frequencies in rad/s instead of Gamma

  /// Defaults: cold 85Rb medium, Omega_p = Omega_c = 6 Gamma,
  /// Delta_p = -Gamma, Delta_c = Gamma, resonant herald, spectrum +-20 Gamma.
  static RunConfig defaults();

  SweepSpec sweep_spec() const;
  OptimizeSpec optimize_spec() const;
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the flat `key = value unit` format. Lines starting with '#' and
/// trailing '# ...' comments are ignored. Unknown keys are rejected.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Writes every key with explicit SI units; parse_config() of the result
/// reproduces the same RunConfig.
std::string serialize_config(const RunConfig& config);

}  // namespace colorent
