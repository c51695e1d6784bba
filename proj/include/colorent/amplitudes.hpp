#pragma once

#include "colorent/medium.hpp"

namespace colorent {

/// Energy-conserving frequency set of one channel. The anti-Stokes
/// frequency is always computed from the other three, never supplied.
struct FrequencyQuad {
  Process process = Process::A;
  double omega_stokes = 0.0;
  double omega_anti = 0.0;
  double omega_in1 = 0.0;
  double omega_in2 = 0.0;

  /// True when omega_anti is bitwise the value conserved_quad() would assign.
  bool conserves_energy() const;
};

struct PhaseMatch {
  double delta_k = 0.0;      ///< rad/m
  double sinc_factor = 1.0;  ///< sinc(delta_k L / 2)
};

struct PairAmplitude {
  Process process = Process::A;
  FrequencyQuad quad;
  PhaseMatch phase;
  complex chi3;
  complex value;  ///< dimensionless pair amplitude f_l
};

/// Anti-Stokes frequency by energy conservation: A: w_c + w_p - w_s,
/// B: 2 w_p - w_s, C: w_p + w_c - w_s', D: 2 w_c - w_s'.
/// Throws DomainError if the result is not positive.
FrequencyQuad conserved_quad(const DriveFields& drives, Process process, double omega_stokes);

/// Longitudinal mismatch Re k_anti + k_stokes - k_in1 - k_in2 for collinear
/// beams. Stokes and driving beams propagate as in vacuum, so with exact
/// energy conservation only the anti-Stokes index excess survives.
double delta_k(const MediumParams& medium, const DriveFields& drives, const FrequencyQuad& quad,
               const MediumResponse& response = default_response());

/// sin(x)/x with sinc(0) = 1; series for |x| < 1e-4.
double sinc(double x);

/// f_l = -i sqrt(w_as w_s) / (4 pi c) chi3_l E_1 E_2 sinc(dk L / 2) L.
PairAmplitude pair_amplitude(const MediumParams& medium, const DriveFields& drives,
                             Process process, double omega_stokes,
                             const MediumResponse& response = default_response());

/// Two-photon-resonant herald of channels A/B: w_p - w_21.
double resonant_stokes(const MediumParams& medium, const DriveFields& drives);

/// Stokes' frequency at which C and D emit into the same anti-Stokes pair as
/// A and B do for omega_stokes: w_s + (w_c - w_p).
double mirror_stokes(const DriveFields& drives, double omega_stokes);

}  // namespace colorent
