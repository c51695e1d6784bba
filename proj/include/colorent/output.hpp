#pragma once

#include <ostream>
#include <vector>

#include <json.hpp>

#include "colorent/config.hpp"
#include "colorent/sweep.hpp"

namespace colorent {

/// Frequencies are reported in units of Gamma unless si is set (rad/s).
struct UnitPolicy {
  double gamma = 1.0;
  bool si = false;

  double frequency(double rad_per_s) const { return si ? rad_per_s : rad_per_s / gamma; }
  const char* frequency_unit() const { return si ? "rad/s" : "Gamma"; }
  double axis(SweepParameter p, double v) const { return is_frequency(p) ? frequency(v) : v; }
};

UnitPolicy unit_policy(const RunConfig& config);

nlohmann::json point_json(const OperatingPoint& point, const MeritRecord& record,
                          const UnitPolicy& units);

/// One row per grid cell; '#' metadata lines precede the column header.
void write_sweep_csv(std::ostream& out, const MeritMap& map, const OperatingPoint& baseline,
                     const UnitPolicy& units);

nlohmann::json sweep_json(const MeritMap& map, const UnitPolicy& units);

/// Maximum NPT and its location, region statistics, NPT ridge.
nlohmann::json sweep_summary_json(const MeritMap& map, const RegionMask& region,
                                  const UnitPolicy& units);

nlohmann::json optimize_json(const OptimizeSpec& spec, const OptimizeResult& result,
                             const UnitPolicy& units);

struct SpectrumRow {
  double offset = 0.0;  ///< from each mode's heralded frequency, rad/s
  double delta_as = 0.0;  ///< w - w_31 for the as sample
  complex chi_as;
  double t_as = 0.0;
  double delta_as_prime = 0.0;
  complex chi_as_prime;
  double t_as_prime = 0.0;
};

/// chi1 and transmission of both anti-Stokes modes on a uniform grid of
/// offsets around their heralded frequencies.
std::vector<SpectrumRow> compute_spectrum(const OperatingPoint& point,
                                          const SpectrumSettings& settings,
                                          const MediumResponse& response = default_response());

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows,
                        const OperatingPoint& point, const UnitPolicy& units);

nlohmann::json spectrum_json(const std::vector<SpectrumRow>& rows, const UnitPolicy& units);

}  // namespace colorent
