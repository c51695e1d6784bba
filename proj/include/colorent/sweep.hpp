#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colorent/medium.hpp"

namespace colorent {

struct DriveSettings {
  double rabi_p = 0.0;
  double rabi_c = 0.0;
  double det_p = 0.0;
  double det_c = 0.0;

  bool operator==(const DriveSettings&) const = default;
};

/// Where the Stokes detector sits.
///   TwoPhotonResonant: w_s = w_p - w_21 + stokes_offset (follows the pump)
///   Fixed:             w_s = w_32 + stokes_offset
struct HeraldPolicy {
  enum class Kind { TwoPhotonResonant, Fixed };
  Kind kind = Kind::TwoPhotonResonant;
  double stokes_offset = 0.0;

  double stokes_frequency(const MediumParams& medium, const DriveFields& drives) const;
  bool operator==(const HeraldPolicy&) const = default;
};

struct OperatingPoint {
  MediumParams medium = MediumParams::rb85_d1();
  DriveSettings drive;
  HeraldPolicy herald;

  DriveFields drives() const;
  bool operator==(const OperatingPoint&) const = default;
};

enum class SweepParameter { RabiP, RabiC, DetuningP, DetuningC, Pop11, HeraldOffset };
enum class AxisScale { Linear, Log };

std::string_view to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);
bool is_frequency(SweepParameter p);

/// Returns `point` with one parameter replaced. Pop11 also sets pop_22 = 1 - pop_11.
OperatingPoint with_parameter(OperatingPoint point, SweepParameter p, double value);
double parameter_value(const OperatingPoint& point, SweepParameter p);

struct AxisRange {
  SweepParameter parameter = SweepParameter::RabiC;
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  AxisScale scale = AxisScale::Linear;

  void validate() const;
  /// Value at a fractional grid coordinate u in [0, points - 1].
  double value_at(double u) const;
  std::vector<double> values() const;

  bool operator==(const AxisRange&) const = default;
};

/// Default scale for an axis: logarithmic for Rabi frequencies, linear otherwise.
AxisScale default_scale(SweepParameter p);

struct MeritRecord {
  double npt_pure = 0.0;
  double npt_lossy = 0.0;
  double gen_prob = 0.0;
  double t_as = 1.0;
  double t_as_prime = 1.0;
  double prob_c = 0.0;  ///< |f_C|^2 at the mirror herald
  double prob_d = 0.0;  ///< |f_D|^2 at the mirror herald
  double omega_stokes = 0.0;
  double omega_as = 0.0;
  double omega_as_prime = 0.0;
  complex alpha;
  complex beta;
  bool dark = false;
  // Diagnostics of the lossy density matrix.
  double rho_hermiticity_error = 0.0;
  double rho_trace_error = 0.0;
  double rho_min_eigenvalue = 0.0;
};

/// Full figures of merit at one operating point. Dark points (both heralded
/// channels zero) return npt = gen_prob = 0 with dark = true.
MeritRecord evaluate_point(const OperatingPoint& point,
                           const MediumResponse& response = default_response());

struct SweepSpec {
  OperatingPoint baseline;
  AxisRange axis1;
  std::optional<AxisRange> axis2;  ///< absent: one-dimensional section

  void validate() const;
};

struct SweepOptions {
  unsigned threads = 1;
};

/// Grid of merit records, row-major over (axis1, axis2).
struct MeritMap {
  AxisRange axis1;
  std::optional<AxisRange> axis2;
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;  ///< single 0.0 placeholder for 1-D maps
  std::vector<MeritRecord> records;

  std::size_t rows() const { return axis1_values.size(); }
  std::size_t cols() const { return axis2_values.size(); }
  std::size_t flat(std::size_t i, std::size_t j) const { return i * cols() + j; }
  const MeritRecord& at(std::size_t i, std::size_t j) const { return records[flat(i, j)]; }
};

MeritMap grid_sweep(const SweepSpec& spec, const SweepOptions& options = {},
                    const MediumResponse& response = default_response());

/// Conjunction of optional lower/upper bounds on a merit record.
struct Thresholds {
  std::optional<double> npt_lossy_min;
  std::optional<double> npt_pure_min;
  std::optional<double> t_as_min;
  std::optional<double> t_as_prime_min;
  std::optional<double> gen_prob_min;
  std::optional<double> gen_prob_max;

  bool admits(const MeritRecord& r) const;
  bool empty() const;
  std::string describe() const;

  bool operator==(const Thresholds&) const = default;
};

struct RegionMask {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> cells;
  Thresholds thresholds;

  bool at(std::size_t i, std::size_t j) const { return cells[i * cols + j] != 0; }
  std::size_t count() const;
  double fraction() const;
};

RegionMask extract_region(const MeritMap& map, const Thresholds& thresholds);

enum class Objective { NptLossy, NptPure, GenProb };
std::string_view to_string(Objective o);
std::optional<Objective> parse_objective(std::string_view name);
double objective_value(const MeritRecord& r, Objective o);

/// Per-column maximum of the objective along axis1; one entry per axis2 value.
std::vector<std::size_t> ridge(const MeritMap& map, Objective objective);

struct OptimizeSpec {
  OperatingPoint baseline;
  AxisRange axis1;  ///< bounds and coarse resolution
  std::optional<AxisRange> axis2;
  Objective objective = Objective::NptLossy;
  Thresholds constraints;
  int budget = 8;  ///< number of bisection rounds after the coarse grid
};

struct OptimizeTraceEntry {
  int stage = 0;  ///< 0 = coarse grid
  double x1 = 0.0;
  double x2 = 0.0;
  double objective = 0.0;
  bool feasible = false;
  std::size_t evaluations = 0;
};

struct OptimizeResult {
  bool feasible = false;
  double x1 = 0.0;
  double x2 = 0.0;
  MeritRecord best;
  std::vector<OptimizeTraceEntry> trace;
  std::size_t evaluations = 0;
};

/// Coarse grid, then repeated halving of a pattern step around the incumbent.
/// Dark points are never feasible. An empty feasible set is reported through
/// OptimizeResult::feasible, not an exception.
OptimizeResult optimize(const OptimizeSpec& spec, const SweepOptions& options = {},
                        const MediumResponse& response = default_response());

}  // namespace colorent
