#include "colorent/herald.hpp"

#include <cmath>

#include "colorent/errors.hpp"

namespace colorent {

HeraldedState herald_from_amplitudes(complex f_a, complex f_b, double omega_as,
                                     double omega_as_prime) {
  const double scale = std::hypot(std::abs(f_a), std::abs(f_b));
  if (!(scale > 0.0)) throw NoHeraldError("herald: both heralded channels are dark");
  if (!std::isfinite(scale)) throw NoHeraldError("herald: non-finite pair amplitude");
  HeraldedState s;
  s.alpha = f_a / scale;
  s.beta = f_b / scale;
  s.norm = std::norm(f_a) + std::norm(f_b);
  s.gen_prob = s.norm;
  s.omega_as = omega_as;
  s.omega_as_prime = omega_as_prime;
  return s;
}

HeraldedState herald(const MediumParams& medium, const DriveFields& drives, double omega_stokes,
                     const MediumResponse& response) {
  const PairAmplitude a = pair_amplitude(medium, drives, Process::A, omega_stokes, response);
  const PairAmplitude b = pair_amplitude(medium, drives, Process::B, omega_stokes, response);
  return herald_from_amplitudes(a.value, b.value, a.quad.omega_anti, b.quad.omega_anti);
}

double pure_npt(const HeraldedState& state) {
  return 2.0 * std::abs(state.alpha) * std::abs(state.beta);
}

double generation_probability(const MediumParams& medium, const DriveFields& drives,
                              double omega_stokes, const MediumResponse& response) {
  const PairAmplitude a = pair_amplitude(medium, drives, Process::A, omega_stokes, response);
  const PairAmplitude b = pair_amplitude(medium, drives, Process::B, omega_stokes, response);
  return std::norm(a.value) + std::norm(b.value);
}

ChannelDiagnostics channel_diagnostics(const MediumParams& medium, const DriveFields& drives,
                                       double omega_stokes, const MediumResponse& response) {
  ChannelDiagnostics diag;
  diag.omega_stokes = omega_stokes;
  diag.omega_stokes_prime = mirror_stokes(drives, omega_stokes);
  diag.a = pair_amplitude(medium, drives, Process::A, omega_stokes, response);
  diag.b = pair_amplitude(medium, drives, Process::B, omega_stokes, response);
  diag.c = pair_amplitude(medium, drives, Process::C, diag.omega_stokes_prime, response);
  diag.d = pair_amplitude(medium, drives, Process::D, diag.omega_stokes_prime, response);
  return diag;
}

}  // namespace colorent
