#include "colorent/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "colorent/amplitudes.hpp"
#include "colorent/errors.hpp"
#include "colorent/herald.hpp"
#include "colorent/loss_channel.hpp"

namespace colorent {

double HeraldPolicy::stokes_frequency(const MediumParams& medium, const DriveFields& drives) const {
  if (kind == Kind::TwoPhotonResonant) return resonant_stokes(medium, drives) + stokes_offset;
  return medium.omega_32() + stokes_offset;
}

DriveFields OperatingPoint::drives() const {
  return make_drives(medium, drive.rabi_p, drive.rabi_c, drive.det_p, drive.det_c);
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::RabiP: return "Omega_p";
    case SweepParameter::RabiC: return "Omega_c";
    case SweepParameter::DetuningP: return "Delta_p";
    case SweepParameter::DetuningC: return "Delta_c";
    case SweepParameter::Pop11: return "pop_11";
    case SweepParameter::HeraldOffset: return "herald_offset";
  }
  return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (auto p : {SweepParameter::RabiP, SweepParameter::RabiC, SweepParameter::DetuningP,
                 SweepParameter::DetuningC, SweepParameter::Pop11, SweepParameter::HeraldOffset})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

bool is_frequency(SweepParameter p) { return p != SweepParameter::Pop11; }

AxisScale default_scale(SweepParameter p) {
  return (p == SweepParameter::RabiP || p == SweepParameter::RabiC) ? AxisScale::Log
                                                                    : AxisScale::Linear;
}

OperatingPoint with_parameter(OperatingPoint point, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::RabiP: point.drive.rabi_p = value; break;
    case SweepParameter::RabiC: point.drive.rabi_c = value; break;
    case SweepParameter::DetuningP: point.drive.det_p = value; break;
    case SweepParameter::DetuningC: point.drive.det_c = value; break;
    case SweepParameter::Pop11:
      point.medium.pop_11 = value;
      point.medium.pop_22 = 1.0 - value;
      break;
    case SweepParameter::HeraldOffset: point.herald.stokes_offset = value; break;
  }
  return point;
}

double parameter_value(const OperatingPoint& point, SweepParameter p) {
  switch (p) {
    case SweepParameter::RabiP: return point.drive.rabi_p;
    case SweepParameter::RabiC: return point.drive.rabi_c;
    case SweepParameter::DetuningP: return point.drive.det_p;
    case SweepParameter::DetuningC: return point.drive.det_c;
    case SweepParameter::Pop11: return point.medium.pop_11;
    case SweepParameter::HeraldOffset: return point.herald.stokes_offset;
  }
  return 0.0;
}

void AxisRange::validate() const {
  const std::string name(to_string(parameter));
  if (points < 2) throw ParameterError("axis " + name + ": points must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw ParameterError("axis " + name + ": require finite min < max");
  if (scale == AxisScale::Log && !(min > 0.0))
    throw ParameterError("axis " + name + ": logarithmic axis requires min > 0");
  if ((parameter == SweepParameter::RabiP || parameter == SweepParameter::RabiC) && min < 0.0)
    throw ParameterError("axis " + name + ": Rabi frequencies must be >= 0");
  if (parameter == SweepParameter::Pop11 && (min < 0.0 || max > 1.0))
    throw ParameterError("axis pop_11: range must lie within [0, 1]");
}

double AxisRange::value_at(double u) const {
  const double last = static_cast<double>(points - 1);
  if (u <= 0.0) return min;
  if (u >= last) return max;
  const double t = u / last;
  if (scale == AxisScale::Log) return std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  return min + t * (max - min);
}

std::vector<double> AxisRange::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = value_at(i);
  return out;
}

MeritRecord evaluate_point(const OperatingPoint& point, const MediumResponse& response) {
  point.medium.validate();
  const DriveFields drives = point.drives();
  const double omega_s = point.herald.stokes_frequency(point.medium, drives);

  MeritRecord r;
  r.omega_stokes = omega_s;
  const ChannelDiagnostics diag = channel_diagnostics(point.medium, drives, omega_s, response);
  r.omega_as = diag.a.quad.omega_anti;
  r.omega_as_prime = diag.b.quad.omega_anti;
  r.prob_c = diag.prob_c();
  r.prob_d = diag.prob_d();
  r.t_as = transmission(point.medium, drives, AntiStokesMode::AntiStokes, r.omega_as, response);
  r.t_as_prime =
      transmission(point.medium, drives, AntiStokesMode::AntiStokesPrime, r.omega_as_prime, response);

  HeraldedState state;
  try {
    state = herald_from_amplitudes(diag.a.value, diag.b.value, r.omega_as, r.omega_as_prime);
  } catch (const NoHeraldError&) {
    r.dark = true;
    return r;
  }
  const TwoModeDensityMatrix rho = apply_loss(state, r.t_as, r.t_as_prime);
  r.alpha = state.alpha;
  r.beta = state.beta;
  r.gen_prob = state.gen_prob;
  r.npt_pure = pure_npt(state);
  r.npt_lossy = lossy_npt(rho);
  r.rho_hermiticity_error = rho.hermiticity_error();
  r.rho_trace_error = rho.trace_error();
  r.rho_min_eigenvalue = rho.min_eigenvalue();
  return r;
}

void SweepSpec::validate() const {
  baseline.medium.validate();
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->parameter == axis1.parameter)
      throw ParameterError("sweep axes must select different parameters");
  }
}

namespace {

// Evaluates task(k) for k in [0, n) on up to `threads` workers. Each index is
// written by exactly one worker; the first failing index (lowest k) decides
// which exception is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
  const unsigned workers =
      static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, n)));
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) task(k);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> error_index(workers, std::numeric_limits<std::size_t>::max());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < n; k += workers) {
        try {
          task(k);
        } catch (...) {
          errors[w] = std::current_exception();
          error_index[w] = k;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t first = std::numeric_limits<std::size_t>::max();
  std::exception_ptr err;
  for (unsigned w = 0; w < workers; ++w)
    if (errors[w] && error_index[w] < first) {
      first = error_index[w];
      err = errors[w];
    }
  if (err) std::rethrow_exception(err);
}

}  // namespace

MeritMap grid_sweep(const SweepSpec& spec, const SweepOptions& options,
                    const MediumResponse& response) {
  spec.validate();
  MeritMap map;
  map.axis1 = spec.axis1;
  map.axis2 = spec.axis2;
  map.axis1_values = spec.axis1.values();
  map.axis2_values = spec.axis2 ? spec.axis2->values() : std::vector<double>{0.0};
  map.records.resize(map.rows() * map.cols());

  parallel_for(map.records.size(), options.threads, [&](std::size_t k) {
    const std::size_t i = k / map.cols();
    const std::size_t j = k % map.cols();
    OperatingPoint p = with_parameter(spec.baseline, spec.axis1.parameter, map.axis1_values[i]);
    if (spec.axis2) p = with_parameter(p, spec.axis2->parameter, map.axis2_values[j]);
    map.records[k] = evaluate_point(p, response);
  });
  return map;
}

bool Thresholds::admits(const MeritRecord& r) const {
  if (npt_lossy_min && !(r.npt_lossy >= *npt_lossy_min)) return false;
  if (npt_pure_min && !(r.npt_pure >= *npt_pure_min)) return false;
  if (t_as_min && !(r.t_as >= *t_as_min)) return false;
  if (t_as_prime_min && !(r.t_as_prime >= *t_as_prime_min)) return false;
  if (gen_prob_min && !(r.gen_prob >= *gen_prob_min)) return false;
  if (gen_prob_max && !(r.gen_prob <= *gen_prob_max)) return false;
  return true;
}

bool Thresholds::empty() const {
  return !npt_lossy_min && !npt_pure_min && !t_as_min && !t_as_prime_min && !gen_prob_min &&
         !gen_prob_max;
}

std::string Thresholds::describe() const {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  bool first = true;
  auto term = [&](const char* name, const char* op, const std::optional<double>& v) {
    if (!v) return;
    if (!first) out << " && ";
    out << name << op << *v;
    first = false;
  };
  term("npt_lossy", ">=", npt_lossy_min);
  term("npt_pure", ">=", npt_pure_min);
  term("t_as", ">=", t_as_min);
  term("t_as_prime", ">=", t_as_prime_min);
  term("gen_prob", ">=", gen_prob_min);
  term("gen_prob", "<=", gen_prob_max);
  return first ? "true" : out.str();
}

std::size_t RegionMask::count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

double RegionMask::fraction() const {
  return cells.empty() ? 0.0 : static_cast<double>(count()) / static_cast<double>(cells.size());
}

RegionMask extract_region(const MeritMap& map, const Thresholds& thresholds) {
  RegionMask mask;
  mask.rows = map.rows();
  mask.cols = map.cols();
  mask.thresholds = thresholds;
  mask.cells.resize(map.records.size());
  for (std::size_t k = 0; k < map.records.size(); ++k)
    mask.cells[k] = thresholds.admits(map.records[k]) ? 1 : 0;
  return mask;
}

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::NptLossy: return "npt_lossy";
    case Objective::NptPure: return "npt_pure";
    case Objective::GenProb: return "gen_prob";
  }
  return "?";
}

std::optional<Objective> parse_objective(std::string_view name) {
  for (auto o : {Objective::NptLossy, Objective::NptPure, Objective::GenProb})
    if (to_string(o) == name) return o;
  return std::nullopt;
}

double objective_value(const MeritRecord& r, Objective o) {
  switch (o) {
    case Objective::NptLossy: return r.npt_lossy;
    case Objective::NptPure: return r.npt_pure;
    case Objective::GenProb: return r.gen_prob;
  }
  return 0.0;
}

std::vector<std::size_t> ridge(const MeritMap& map, Objective objective) {
  std::vector<std::size_t> out(map.cols(), 0);
  for (std::size_t j = 0; j < map.cols(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < map.rows(); ++i) {
      const double v = objective_value(map.at(i, j), objective);
      if (v > best) {
        best = v;
        out[j] = i;
      }
    }
  }
  return out;
}

namespace {

struct Candidate {
  double u1 = 0.0;
  double u2 = 0.0;
  MeritRecord record;
  bool feasible = false;
  double value = -std::numeric_limits<double>::infinity();
};

}  // namespace

OptimizeResult optimize(const OptimizeSpec& spec, const SweepOptions& options,
                        const MediumResponse& response) {
  if (spec.budget < 1) throw ParameterError("optimize: budget must be >= 1");
  SweepSpec coarse_spec{spec.baseline, spec.axis1, spec.axis2};
  const MeritMap coarse = grid_sweep(coarse_spec, options, response);

  auto judge = [&](Candidate& c) {
    c.feasible = !c.record.dark && spec.constraints.admits(c.record);
    c.value = objective_value(c.record, spec.objective);
  };
  auto point_at = [&](double u1, double u2) {
    OperatingPoint p = with_parameter(spec.baseline, spec.axis1.parameter, spec.axis1.value_at(u1));
    if (spec.axis2) p = with_parameter(p, spec.axis2->parameter, spec.axis2->value_at(u2));
    return p;
  };

  OptimizeResult result;
  result.evaluations = coarse.records.size();

  Candidate best;
  for (std::size_t i = 0; i < coarse.rows(); ++i)
    for (std::size_t j = 0; j < coarse.cols(); ++j) {
      Candidate c{static_cast<double>(i), static_cast<double>(j), coarse.at(i, j)};
      judge(c);
      if (c.feasible && (!best.feasible || c.value > best.value)) best = c;
    }

  auto record_stage = [&](int stage) {
    OptimizeTraceEntry e;
    e.stage = stage;
    e.x1 = spec.axis1.value_at(best.u1);
    e.x2 = spec.axis2 ? spec.axis2->value_at(best.u2) : 0.0;
    e.objective = best.value;
    e.feasible = best.feasible;
    e.evaluations = result.evaluations;
    result.trace.push_back(e);
  };
  record_stage(0);

  if (!best.feasible) return result;

  const double last1 = spec.axis1.points - 1;
  const double last2 = spec.axis2 ? spec.axis2->points - 1 : 0.0;
  double step = 1.0;
  for (int stage = 1; stage <= spec.budget; ++stage) {
    step *= 0.5;
    std::vector<Candidate> trial;
    const int span2 = spec.axis2 ? 1 : 0;
    for (int d1 = -1; d1 <= 1; ++d1)
      for (int d2 = -span2; d2 <= span2; ++d2) {
        if (d1 == 0 && d2 == 0) continue;
        const double u1 = std::clamp(best.u1 + d1 * step, 0.0, last1);
        const double u2 = std::clamp(best.u2 + d2 * step, 0.0, last2);
        if (u1 == best.u1 && u2 == best.u2) continue;
        trial.push_back(Candidate{u1, u2, {}});
      }
    parallel_for(trial.size(), options.threads,
                 [&](std::size_t k) { trial[k].record = evaluate_point(point_at(trial[k].u1, trial[k].u2), response); });
    result.evaluations += trial.size();
    for (auto& c : trial) {
      judge(c);
      if (c.feasible && c.value > best.value) best = c;
    }
    record_stage(stage);
  }

  result.feasible = true;
  result.x1 = spec.axis1.value_at(best.u1);
  result.x2 = spec.axis2 ? spec.axis2->value_at(best.u2) : 0.0;
  result.best = best.record;
  return result;
}

}  // namespace colorent
