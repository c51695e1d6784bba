#include "colorent/medium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "colorent/constants.hpp"
#include "colorent/errors.hpp"

namespace colorent {

namespace {

using constants::epsilon0;
using constants::hbar;
using constants::speed_of_light;
using constants::two_pi;

constexpr complex I{0.0, 1.0};

void require(bool ok, const std::string& rule) {
  if (!ok) throw ParameterError("invariant violated: " + rule);
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// N mu_eff^2 / (eps0 hbar), rad/s.
double linear_prefactor(const MediumParams& m) {
  const double mu = coupling_dipole(m);
  return m.density * mu * mu / (epsilon0 * hbar);
}

}  // namespace

MediumParams MediumParams::rb85_d1() {
  MediumParams m;
  m.gamma_e = two_pi * 5.75e6;
  m.gamma_g = two_pi * 10.0e3;
  m.omega_21 = two_pi * 3.0e9;
  m.lambda_31 = 795.0e-9;
  m.density = 5.0e12 * 1.0e6;
  m.length = 100.0e-6;
  m.cross_section = 1.0e-8;
  m.pop_11 = 1.0;
  m.pop_22 = 0.0;
  m.polarization_factor = 1.0 / 3.0;
  return m;
}

double MediumParams::omega_31() const { return two_pi * speed_of_light / lambda_31; }

void MediumParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(gamma_e) && gamma_e > 0.0, "gamma_e > 0");
  require(finite(gamma_g) && gamma_g > 0.0, "gamma_g > 0");
  require(gamma_g < gamma_e, "gamma_g < gamma_e");
  require(finite(omega_21) && omega_21 > 0.0, "omega_21 > 0");
  require(finite(lambda_31) && lambda_31 > 0.0, "lambda_31 > 0");
  require(omega_21 < omega_31(), "omega_21 < omega_31");
  require(finite(density) && density >= 0.0, "density >= 0");
  require(finite(length) && length >= 0.0, "length >= 0");
  require(finite(cross_section) && cross_section > 0.0, "cross_section > 0");
  require(finite(pop_11) && pop_11 >= 0.0, "pop_11 >= 0");
  require(finite(pop_22) && pop_22 >= 0.0, "pop_22 >= 0");
  require(std::abs(pop_11 + pop_22 - 1.0) <= 1e-12, "pop_11 + pop_22 = 1");
  require(finite(polarization_factor) && polarization_factor > 0.0 && polarization_factor <= 1.0,
          "0 < polarization_factor <= 1");
}

double dipole_moment(const MediumParams& medium) {
  if (!(medium.gamma_e > 0.0)) throw ParameterError("dipole_moment: gamma_e must be positive");
  if (!(medium.lambda_31 > 0.0)) throw ParameterError("dipole_moment: lambda_31 must be positive");
  const double w = medium.omega_31();
  const double c3 = speed_of_light * speed_of_light * speed_of_light;
  return std::sqrt(3.0 * constants::pi * epsilon0 * hbar * c3 * medium.gamma_e / (w * w * w));
}

double coupling_dipole(const MediumParams& medium) {
  return std::sqrt(medium.polarization_factor) * dipole_moment(medium);
}

DriveFields make_drives(const MediumParams& medium, double rabi_p, double rabi_c, double det_p,
                        double det_c) {
  if (!(rabi_p >= 0.0) || !(rabi_c >= 0.0))
    throw ParameterError("invariant violated: Rabi frequencies >= 0");
  if (!std::isfinite(det_p) || !std::isfinite(det_c))
    throw ParameterError("invariant violated: finite detunings");
  const double mu = coupling_dipole(medium);
  DriveFields d;
  d.rabi_p = rabi_p;
  d.rabi_c = rabi_c;
  d.det_p = det_p;
  d.det_c = det_c;
  d.omega_p = medium.omega_31() + det_p;
  d.omega_c = medium.omega_32() + det_c;
  d.field_p = hbar * rabi_p / mu;
  d.field_c = hbar * rabi_c / mu;
  return d;
}

void validate_drives(const MediumParams& medium, const DriveFields& d) {
  require(d.rabi_p >= 0.0 && d.rabi_c >= 0.0, "rabi_p, rabi_c >= 0");
  require(d.omega_p > 0.0 && d.omega_c > 0.0, "positive carrier frequencies");
  require(close_rel(d.omega_p, medium.omega_31() + d.det_p, 1e-12),
          "omega_p = omega_31 + det_p");
  require(close_rel(d.omega_c, medium.omega_32() + d.det_c, 1e-12),
          "omega_c = omega_32 + det_c");
  const double mu = coupling_dipole(medium);
  require(close_rel(d.field_p, hbar * d.rabi_p / mu, 1e-12), "field_p = hbar rabi_p / mu");
  require(close_rel(d.field_c, hbar * d.rabi_c / mu, 1e-12), "field_c = hbar rabi_c / mu");
}

ChannelLegs channel_legs(Process process) {
  switch (process) {
    case Process::A:
      return {Drive::Pump, Drive::Coupling, AntiStokesMode::AntiStokes, false};
    case Process::B:
      return {Drive::Pump, Drive::Pump, AntiStokesMode::AntiStokesPrime, false};
    case Process::C:
      return {Drive::Coupling, Drive::Pump, AntiStokesMode::AntiStokesPrime, true};
    case Process::D:
      return {Drive::Coupling, Drive::Coupling, AntiStokesMode::AntiStokes, true};
  }
  throw std::invalid_argument("unknown process tag");
}

Drive dressing_drive(AntiStokesMode mode) {
  return mode == AntiStokesMode::AntiStokes ? Drive::Coupling : Drive::Pump;
}

double carrier(const DriveFields& d, Drive which) {
  return which == Drive::Pump ? d.omega_p : d.omega_c;
}
double rabi(const DriveFields& d, Drive which) {
  return which == Drive::Pump ? d.rabi_p : d.rabi_c;
}
double field(const DriveFields& d, Drive which) {
  return which == Drive::Pump ? d.field_p : d.field_c;
}

std::string_view to_string(Process process) {
  switch (process) {
    case Process::A: return "A";
    case Process::B: return "B";
    case Process::C: return "C";
    case Process::D: return "D";
  }
  return "?";
}

std::string_view to_string(AntiStokesMode mode) {
  return mode == AntiStokesMode::AntiStokes ? "as" : "as_prime";
}

complex lambda_probe_lineshape(double delta_e, double delta_r, double rabi_dressing,
                               double gamma_e, double gamma_g) {
  const complex raman = delta_r + I * gamma_g;
  const complex denom =
      (delta_e + I * (0.5 * gamma_e)) * raman - 0.25 * rabi_dressing * rabi_dressing;
  return -raman / denom;
}

complex LambdaSystemResponse::chi1(const MediumParams& m, const DriveFields& d,
                                   AntiStokesMode mode, double omega) const {
  const Drive dress = dressing_drive(mode);
  const double delta_e = omega - m.omega_31();
  const double delta_r = (omega - carrier(d, dress)) - m.omega_21;
  return linear_prefactor(m) * m.pop_11 *
         lambda_probe_lineshape(delta_e, delta_r, rabi(d, dress), m.gamma_e, m.gamma_g);
}

complex LambdaSystemResponse::chi3(const MediumParams& m, const DriveFields& d, Process process,
                                   double omega_anti, double omega_stokes) const {
  const ChannelLegs legs = channel_legs(process);
  const double w_first = carrier(d, legs.first);
  const double w_dress = carrier(d, legs.dressing);
  const double w_in_sum = w_first + w_dress;
  if (std::abs(omega_anti + omega_stokes - w_in_sum) > 1e-12 * w_in_sum)
    throw ParameterError("chi3: frequency pair violates energy conservation for process " +
                         std::string(to_string(process)));

  const double mu = coupling_dipole(m);
  const double mu2 = mu * mu;
  const double pref = m.density * mu2 * mu2 / (epsilon0 * hbar * hbar * hbar) * m.pop_11;

  const complex first = (w_first - m.omega_31()) + I * (0.5 * m.gamma_e);
  const double delta_anti = omega_anti - m.omega_31();
  const double delta_r = (omega_anti - w_dress) - m.omega_21;
  const double omega_d = rabi(d, legs.dressing);
  const complex eit = (delta_r + I * m.gamma_g) * (delta_anti + I * (0.5 * m.gamma_e)) -
                      0.25 * omega_d * omega_d;
  return -pref / (first * eit);
}

const MediumResponse& default_response() {
  static const LambdaSystemResponse response;
  return response;
}

complex chi1(const MediumParams& medium, const DriveFields& drives, AntiStokesMode mode,
             double omega, const MediumResponse& response) {
  return response.chi1(medium, drives, mode, omega);
}

complex chi3(const MediumParams& medium, const DriveFields& drives, Process process,
             double omega_anti, double omega_stokes, const MediumResponse& response) {
  return response.chi3(medium, drives, process, omega_anti, omega_stokes);
}

SusceptibilitySample sample_chi1(const MediumParams& medium, const DriveFields& drives,
                                 AntiStokesMode mode, double omega,
                                 const MediumResponse& response) {
  return {response.chi1(medium, drives, mode, omega), omega,
          mode == AntiStokesMode::AntiStokes ? SusceptibilityKind::Chi1AntiStokes
                                             : SusceptibilityKind::Chi1AntiStokesPrime};
}

complex wavevector(const MediumParams& medium, const DriveFields& drives, AntiStokesMode mode,
                   double omega, const MediumResponse& response) {
  const complex x = response.chi1(medium, drives, mode, omega);
  return (omega / speed_of_light) * std::sqrt(1.0 + x);
}

double transmission_from_chi1(complex chi1_value, double omega, double length) {
  const double od = chi1_value.imag() * omega * length / speed_of_light;
  return std::clamp(std::exp(-od), 0.0, 1.0);
}

double transmission(const MediumParams& medium, const DriveFields& drives, AntiStokesMode mode,
                    double omega, const MediumResponse& response) {
  return transmission_from_chi1(response.chi1(medium, drives, mode, omega), omega, medium.length);
}

}  // namespace colorent
