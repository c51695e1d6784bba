#include "colorent/output.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "colorent/amplitudes.hpp"
#include "colorent/format.hpp"

namespace colorent {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

json parameters_json(const OperatingPoint& p, const UnitPolicy& u) {
  json j;
  j["Omega_p"] = u.frequency(p.drive.rabi_p);
  j["Omega_c"] = u.frequency(p.drive.rabi_c);
  j["Delta_p"] = u.frequency(p.drive.det_p);
  j["Delta_c"] = u.frequency(p.drive.det_c);
  j["pop_11"] = p.medium.pop_11;
  j["pop_22"] = p.medium.pop_22;
  j["herald"] = p.herald.kind == HeraldPolicy::Kind::Fixed ? "fixed" : "resonant";
  j["herald_offset"] = u.frequency(p.herald.stokes_offset);
  return j;
}

json record_json(const MeritRecord& r, const MediumParams& m, const UnitPolicy& u) {
  json j;
  j["npt_pure"] = r.npt_pure;
  j["npt_lossy"] = r.npt_lossy;
  j["gen_prob"] = r.gen_prob;
  j["t_as"] = r.t_as;
  j["t_as_prime"] = r.t_as_prime;
  j["prob_c"] = r.prob_c;
  j["prob_d"] = r.prob_d;
  j["dark"] = r.dark;
  j["alpha"] = complex_json(r.alpha);
  j["beta"] = complex_json(r.beta);
  // Mode frequencies relative to the |1> -> |3> transition.
  const double w31 = m.omega_31();
  j["delta_stokes_vs_omega_32"] = u.frequency(r.omega_stokes - m.omega_32());
  j["delta_as"] = u.frequency(r.omega_as - w31);
  j["delta_as_prime"] = u.frequency(r.omega_as_prime - w31);
  return j;
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_double(v);
    first = false;
  }
  out << '\n';
}

std::string axis_description(const AxisRange& a, const UnitPolicy& u) {
  const bool freq = is_frequency(a.parameter);
  std::string s(to_string(a.parameter));
  s += " ";
  s += a.scale == AxisScale::Log ? "log" : "linear";
  s += " from " + format_double(u.axis(a.parameter, a.min));
  s += " to " + format_double(u.axis(a.parameter, a.max));
  s += freq ? std::string(" ") + u.frequency_unit() : std::string();
  s += ", " + std::to_string(a.points) + " points";
  return s;
}

}  // namespace

UnitPolicy unit_policy(const RunConfig& config) {
  return UnitPolicy{config.point.medium.gamma_e, config.si_units};
}

json point_json(const OperatingPoint& point, const MeritRecord& record, const UnitPolicy& units) {
  json j;
  j["frequency_unit"] = units.frequency_unit();
  j["Gamma_rad_per_s"] = point.medium.gamma_e;
  j["parameters"] = parameters_json(point, units);
  j["merit"] = record_json(record, point.medium, units);
  return j;
}

void write_sweep_csv(std::ostream& out, const MeritMap& map, const OperatingPoint& baseline,
                     const UnitPolicy& u) {
  out << "# colorent sweep\n";
  out << "# frequency unit: " << u.frequency_unit() << " (Gamma = "
      << format_double(baseline.medium.gamma_e) << " rad/s)\n";
  out << "# axis1: " << axis_description(map.axis1, u) << "\n";
  if (map.axis2) out << "# axis2: " << axis_description(*map.axis2, u) << "\n";
  out << "# baseline: Omega_p=" << format_double(u.frequency(baseline.drive.rabi_p))
      << " Omega_c=" << format_double(u.frequency(baseline.drive.rabi_c))
      << " Delta_p=" << format_double(u.frequency(baseline.drive.det_p))
      << " Delta_c=" << format_double(u.frequency(baseline.drive.det_c))
      << " pop_11=" << format_double(baseline.medium.pop_11) << "\n";
  out << "# npt_pure = 2|alpha||beta|; npt_lossy = NPT after beam-splitter loss;"
         " gen_prob = |f_A|^2+|f_B|^2; t_as, t_as_prime = anti-Stokes transmissions;"
         " prob_c, prob_d = |f_C|^2, |f_D|^2 at the mirror herald; dark = 1 if no herald\n";
  out << to_string(map.axis1.parameter);
  if (map.axis2) out << ',' << to_string(map.axis2->parameter);
  out << ",npt_pure,npt_lossy,gen_prob,t_as,t_as_prime,prob_c,prob_d,dark\n";
  for (std::size_t i = 0; i < map.rows(); ++i)
    for (std::size_t j = 0; j < map.cols(); ++j) {
      const MeritRecord& r = map.at(i, j);
      out << format_double(u.axis(map.axis1.parameter, map.axis1_values[i])) << ',';
      if (map.axis2) out << format_double(u.axis(map.axis2->parameter, map.axis2_values[j])) << ',';
      write_row(out, {r.npt_pure, r.npt_lossy, r.gen_prob, r.t_as, r.t_as_prime, r.prob_c, r.prob_d,
                      r.dark ? 1.0 : 0.0});
    }
}

json sweep_json(const MeritMap& map, const UnitPolicy& u) {
  json j;
  j["frequency_unit"] = u.frequency_unit();
  j["axis1"] = {{"parameter", to_string(map.axis1.parameter)}, {"values", json::array()}};
  for (double v : map.axis1_values) j["axis1"]["values"].push_back(u.axis(map.axis1.parameter, v));
  if (map.axis2) {
    j["axis2"] = {{"parameter", to_string(map.axis2->parameter)}, {"values", json::array()}};
    for (double v : map.axis2_values) j["axis2"]["values"].push_back(u.axis(map.axis2->parameter, v));
  }
  json cells = json::array();
  for (std::size_t i = 0; i < map.rows(); ++i)
    for (std::size_t k = 0; k < map.cols(); ++k) {
      const MeritRecord& r = map.at(i, k);
      cells.push_back({{"i", i}, {"j", k}, {"npt_pure", r.npt_pure}, {"npt_lossy", r.npt_lossy},
                       {"gen_prob", r.gen_prob}, {"t_as", r.t_as}, {"t_as_prime", r.t_as_prime},
                       {"prob_c", r.prob_c}, {"prob_d", r.prob_d}, {"dark", r.dark}});
    }
  j["cells"] = std::move(cells);
  return j;
}

json sweep_summary_json(const MeritMap& map, const RegionMask& region, const UnitPolicy& u) {
  json j;
  j["frequency_unit"] = u.frequency_unit();
  j["cells"] = map.records.size();
  for (Objective o : {Objective::NptLossy, Objective::NptPure}) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < map.records.size(); ++k)
      if (objective_value(map.records[k], o) > objective_value(map.records[best], o)) best = k;
    const std::size_t i = best / map.cols();
    const std::size_t c = best % map.cols();
    json loc;
    loc["value"] = objective_value(map.records[best], o);
    loc[std::string(to_string(map.axis1.parameter))] = u.axis(map.axis1.parameter, map.axis1_values[i]);
    if (map.axis2)
      loc[std::string(to_string(map.axis2->parameter))] = u.axis(map.axis2->parameter, map.axis2_values[c]);
    loc["gen_prob"] = map.records[best].gen_prob;
    loc["t_as"] = map.records[best].t_as;
    loc["t_as_prime"] = map.records[best].t_as_prime;
    j["max_" + std::string(to_string(o))] = std::move(loc);
  }
  j["region"] = {{"thresholds", region.thresholds.describe()},
                 {"cells", region.count()},
                 {"fraction", region.fraction()}};
  json ridge_json = json::array();
  const auto ridge_rows = ridge(map, Objective::NptLossy);
  for (std::size_t c = 0; c < ridge_rows.size(); ++c) {
    json entry;
    if (map.axis2) entry[std::string(to_string(map.axis2->parameter))] = u.axis(map.axis2->parameter, map.axis2_values[c]);
    entry[std::string(to_string(map.axis1.parameter))] =
        u.axis(map.axis1.parameter, map.axis1_values[ridge_rows[c]]);
    entry["npt_lossy"] = map.at(ridge_rows[c], c).npt_lossy;
    ridge_json.push_back(std::move(entry));
  }
  j["npt_lossy_ridge"] = std::move(ridge_json);
  return j;
}

json optimize_json(const OptimizeSpec& spec, const OptimizeResult& result, const UnitPolicy& u) {
  json j;
  j["frequency_unit"] = u.frequency_unit();
  j["objective"] = to_string(spec.objective);
  j["constraints"] = spec.constraints.describe();
  j["feasible"] = result.feasible;
  j["evaluations"] = result.evaluations;
  if (result.feasible) {
    json arg;
    arg[std::string(to_string(spec.axis1.parameter))] = u.axis(spec.axis1.parameter, result.x1);
    if (spec.axis2) arg[std::string(to_string(spec.axis2->parameter))] = u.axis(spec.axis2->parameter, result.x2);
    j["argument"] = std::move(arg);
    OperatingPoint p = with_parameter(spec.baseline, spec.axis1.parameter, result.x1);
    if (spec.axis2) p = with_parameter(p, spec.axis2->parameter, result.x2);
    j["best"] = point_json(p, result.best, u);
  }
  json trace = json::array();
  for (const auto& t : result.trace) {
    json e;
    e["stage"] = t.stage;
    e[std::string(to_string(spec.axis1.parameter))] = u.axis(spec.axis1.parameter, t.x1);
    if (spec.axis2) e[std::string(to_string(spec.axis2->parameter))] = u.axis(spec.axis2->parameter, t.x2);
    e["objective"] = finite_or_null(t.objective);
    e["feasible"] = t.feasible;
    e["evaluations"] = t.evaluations;
    trace.push_back(std::move(e));
  }
  j["trace"] = std::move(trace);
  return j;
}

std::vector<SpectrumRow> compute_spectrum(const OperatingPoint& point,
                                          const SpectrumSettings& settings,
                                          const MediumResponse& response) {
  point.medium.validate();
  const DriveFields drives = point.drives();
  const double w_s = point.herald.stokes_frequency(point.medium, drives);
  const double w_as = conserved_quad(drives, Process::A, w_s).omega_anti;
  const double w_asp = conserved_quad(drives, Process::B, w_s).omega_anti;
  const double w31 = point.medium.omega_31();

  std::vector<SpectrumRow> rows(static_cast<std::size_t>(settings.points));
  for (int k = 0; k < settings.points; ++k) {
    SpectrumRow& r = rows[static_cast<std::size_t>(k)];
    const double t = static_cast<double>(k) / (settings.points - 1);
    r.offset = settings.min + t * (settings.max - settings.min);
    const double wa = w_as + r.offset;
    const double wb = w_asp + r.offset;
    r.delta_as = wa - w31;
    r.delta_as_prime = wb - w31;
    r.chi_as = response.chi1(point.medium, drives, AntiStokesMode::AntiStokes, wa);
    r.chi_as_prime = response.chi1(point.medium, drives, AntiStokesMode::AntiStokesPrime, wb);
    r.t_as = transmission_from_chi1(r.chi_as, wa, point.medium.length);
    r.t_as_prime = transmission_from_chi1(r.chi_as_prime, wb, point.medium.length);
  }
  return rows;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows,
                        const OperatingPoint& point, const UnitPolicy& u) {
  out << "# colorent spectrum\n";
  out << "# frequency unit: " << u.frequency_unit() << " (Gamma = "
      << format_double(point.medium.gamma_e) << " rad/s)\n";
  out << "# offset = detuning from each mode's heralded frequency; delta_* = omega - omega_31\n";
  out << "offset,delta_as,re_chi_as,im_chi_as,t_as,delta_as_prime,re_chi_as_prime,"
         "im_chi_as_prime,t_as_prime\n";
  for (const auto& r : rows)
    write_row(out, {u.frequency(r.offset), u.frequency(r.delta_as), r.chi_as.real(), r.chi_as.imag(),
                    r.t_as, u.frequency(r.delta_as_prime), r.chi_as_prime.real(),
                    r.chi_as_prime.imag(), r.t_as_prime});
}

json spectrum_json(const std::vector<SpectrumRow>& rows, const UnitPolicy& u) {
  json j;
  j["frequency_unit"] = u.frequency_unit();
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"offset", u.frequency(r.offset)},
                   {"delta_as", u.frequency(r.delta_as)},
                   {"chi_as", complex_json(r.chi_as)},
                   {"t_as", r.t_as},
                   {"delta_as_prime", u.frequency(r.delta_as_prime)},
                   {"chi_as_prime", complex_json(r.chi_as_prime)},
                   {"t_as_prime", r.t_as_prime}});
  j["samples"] = std::move(arr);
  return j;
}

}  // namespace colorent
