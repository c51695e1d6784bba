#pragma once

#include "colorent/amplitudes.hpp"
#include "colorent/medium.hpp"

namespace colorent {

/// alpha |1>_as |0>_as' + beta |0>_as |1>_as' after a Stokes detection.
struct HeraldedState {
  complex alpha;
  complex beta;
  double norm = 0.0;      ///< |f_A|^2 + |f_B|^2
  double gen_prob = 0.0;  ///< same quantity, read as the generation probability
  double omega_as = 0.0;
  double omega_as_prime = 0.0;
};

/// Normalizes (f_A, f_B). The coefficients are scaled by hypot(|f_A|, |f_B|)
/// so tiny amplitudes whose squares underflow still herald correctly.
/// Throws NoHeraldError when both amplitudes vanish.
HeraldedState herald_from_amplitudes(complex f_a, complex f_b, double omega_as,
                                     double omega_as_prime);

/// Projects the four-channel output onto a Stokes detection at omega_stokes.
/// Only A and B contribute; C and D emit into the s' mode.
HeraldedState herald(const MediumParams& medium, const DriveFields& drives, double omega_stokes,
                     const MediumResponse& response = default_response());

/// 2 |alpha| |beta|.
double pure_npt(const HeraldedState& state);

/// |f_A|^2 + |f_B|^2 at omega_stokes; zero when both channels are dark.
double generation_probability(const MediumParams& medium, const DriveFields& drives,
                              double omega_stokes,
                              const MediumResponse& response = default_response());

/// All four amplitudes. A and B at omega_stokes; C and D at the mirror
/// herald, where they emit into the same anti-Stokes pair.
struct ChannelDiagnostics {
  PairAmplitude a, b, c, d;
  double omega_stokes = 0.0;
  double omega_stokes_prime = 0.0;

  double prob_c() const { return std::norm(c.value); }
  double prob_d() const { return std::norm(d.value); }
};

ChannelDiagnostics channel_diagnostics(const MediumParams& medium, const DriveFields& drives,
                                       double omega_stokes,
                                       const MediumResponse& response = default_response());

}  // namespace colorent
