#include "colorent/amplitudes.hpp"

#include <cmath>
#include <string>

#include "colorent/constants.hpp"
#include "colorent/errors.hpp"

namespace colorent {

namespace {

double anti_frequency(double in1, double in2, double stokes) { return (in1 + in2) - stokes; }

}  // namespace

bool FrequencyQuad::conserves_energy() const {
  return omega_anti == anti_frequency(omega_in1, omega_in2, omega_stokes);
}

FrequencyQuad conserved_quad(const DriveFields& drives, Process process, double omega_stokes) {
  if (!(omega_stokes > 0.0)) throw DomainError("conserved_quad: Stokes frequency must be positive");
  const ChannelLegs legs = channel_legs(process);
  FrequencyQuad q;
  q.process = process;
  q.omega_stokes = omega_stokes;
  q.omega_in1 = carrier(drives, legs.first);
  q.omega_in2 = carrier(drives, legs.dressing);
  q.omega_anti = anti_frequency(q.omega_in1, q.omega_in2, omega_stokes);
  if (!(q.omega_anti > 0.0))
    throw DomainError("conserved_quad: anti-Stokes frequency for process " +
                      std::string(to_string(process)) + " is not positive");
  return q;
}

double delta_k(const MediumParams& medium, const DriveFields& drives, const FrequencyQuad& quad,
               const MediumResponse& response) {
  const AntiStokesMode mode = channel_legs(quad.process).anti;
  const complex x = response.chi1(medium, drives, mode, quad.omega_anti);
  // sqrt(1 + x) - 1 without cancellation for |x| << 1.
  const complex excess = x / (std::sqrt(1.0 + x) + 1.0);
  return quad.omega_anti / constants::speed_of_light * excess.real();
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

PairAmplitude pair_amplitude(const MediumParams& medium, const DriveFields& drives,
                             Process process, double omega_stokes,
                             const MediumResponse& response) {
  PairAmplitude out;
  out.process = process;
  out.quad = conserved_quad(drives, process, omega_stokes);
  out.phase.delta_k = delta_k(medium, drives, out.quad, response);
  out.phase.sinc_factor = sinc(0.5 * out.phase.delta_k * medium.length);
  out.chi3 = response.chi3(medium, drives, process, out.quad.omega_anti, omega_stokes);

  const ChannelLegs legs = channel_legs(process);
  const double e1 = field(drives, legs.first);
  const double e2 = field(drives, legs.dressing);
  const double pref = std::sqrt(out.quad.omega_anti * omega_stokes) /
                      (4.0 * constants::pi * constants::speed_of_light);
  out.value = complex{0.0, -1.0} * pref * out.chi3 * (e1 * e2) * out.phase.sinc_factor *
              medium.length;
  return out;
}

double resonant_stokes(const MediumParams& medium, const DriveFields& drives) {
  return drives.omega_p - medium.omega_21;
}

double mirror_stokes(const DriveFields& drives, double omega_stokes) {
  return omega_stokes + (drives.omega_c - drives.omega_p);
}

}  // namespace colorent
