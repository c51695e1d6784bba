#pragma once

#include <complex>
#include <string_view>

namespace colorent {

using complex = std::complex<double>;

/// Three-level Lambda medium: ground states |1>, |2> split by omega_21 and a
/// common excited state |3>. All quantities are SI; frequencies in rad/s.
struct MediumParams {
  double gamma_e = 0.0;        ///< excited-state decay rate Gamma
  double gamma_g = 0.0;        ///< ground-coherence decay rate gamma
  double omega_21 = 0.0;       ///< ground splitting
  double lambda_31 = 0.0;      ///< |1> -> |3> wavelength (m)
  double density = 0.0;        ///< atoms per m^3
  double length = 0.0;         ///< interaction length (m)
  double cross_section = 0.0;  ///< transverse mode area (m^2); cancels in the 1D amplitudes
  double pop_11 = 1.0;         ///< background population of |1>
  double pop_22 = 0.0;         ///< background population of |2>

  /// Fraction of the reduced |mu|^2 that couples to a given field
  /// polarization. 1/3 is the isotropic average for an unpolarized sample.
  double polarization_factor = 1.0 / 3.0;

  /// Cold 85Rb D1 line: N/V = 5e12 cm^-3, L = 100 um, lambda = 795 nm,
  /// omega_21 = 2pi x 3 GHz, Gamma = 2pi x 5.75 MHz, gamma = 2pi x 10 kHz.
  static MediumParams rb85_d1();

  double omega_31() const;
  double omega_32() const { return omega_31() - omega_21; }

  /// Throws ParameterError naming the first violated invariant.
  void validate() const;

  bool operator==(const MediumParams&) const = default;
};

/// Classical pump (|1> -> |3>) and coupling (|2> -> |3>) beams.
///
/// Detunings follow det_p = omega_p - omega_31 and det_c = omega_c - omega_32.
/// Field amplitudes follow E = hbar * Omega / mu_eff. Only the carriers, Rabi
/// frequencies and fields enter the response; the detunings are kept for
/// reporting and for validate_drives().
struct DriveFields {
  double rabi_p = 0.0;
  double rabi_c = 0.0;
  double det_p = 0.0;
  double det_c = 0.0;
  double omega_p = 0.0;
  double omega_c = 0.0;
  double field_p = 0.0;
  double field_c = 0.0;
};

DriveFields make_drives(const MediumParams& medium, double rabi_p, double rabi_c,
                        double det_p, double det_c);

/// Checks Rabi signs, carrier/detuning consistency and field/Rabi consistency
/// to a relative tolerance of 1e-12.
void validate_drives(const MediumParams& medium, const DriveFields& drives);

/// Reduced dipole moment of the optical transitions from
/// Gamma = mu^2 omega_31^3 / (3 pi eps0 hbar c^3).
double dipole_moment(const MediumParams& medium);

/// Dipole moment seen by a polarized driving or probe field:
/// sqrt(polarization_factor) * dipole_moment().
double coupling_dipole(const MediumParams& medium);

enum class AntiStokesMode { AntiStokes, AntiStokesPrime };

/// The four spontaneous four-wave-mixing channels.
///   A: pump + coupling -> s  + as
///   B: pump + pump     -> s  + as'
///   C: coupling + pump -> s' + as'
///   D: coupling + coupling -> s' + as
enum class Process { A, B, C, D };

enum class Drive { Pump, Coupling };

/// Which beam makes the first (|1> -> |3>) excitation, which beam dresses the
/// |2> -> |3> leg, and which anti-Stokes mode is emitted. B, C and D follow
/// from A by the substitutions c->p / as->as' (B), c<->p, s->s', as->as' (C)
/// and p->c, s->s' (D).
struct ChannelLegs {
  Drive first;
  Drive dressing;
  AntiStokesMode anti;
  bool primed_stokes;
};

ChannelLegs channel_legs(Process process);

/// Dressing beam of an anti-Stokes mode: coupling for as, pump for as'.
Drive dressing_drive(AntiStokesMode mode);

double carrier(const DriveFields& drives, Drive which);
double rabi(const DriveFields& drives, Drive which);
double field(const DriveFields& drives, Drive which);

std::string_view to_string(Process process);
std::string_view to_string(AntiStokesMode mode);

enum class SusceptibilityKind { Chi1AntiStokes, Chi1AntiStokesPrime, Chi3A, Chi3B, Chi3C, Chi3D };

struct SusceptibilitySample {
  complex value;
  double omega = 0.0;
  SusceptibilityKind kind = SusceptibilityKind::Chi1AntiStokes;
};

/// Source of the medium's linear and third-order response. Implementations
/// must be pure: no mutable state, safe to call concurrently.
class MediumResponse {
 public:
  virtual ~MediumResponse() = default;

  /// Linear susceptibility of an anti-Stokes mode at omega (dimensionless).
  virtual complex chi1(const MediumParams& medium, const DriveFields& drives,
                       AntiStokesMode mode, double omega) const = 0;

  /// Third-order susceptibility (m^2/V^2) of a channel for an
  /// energy-conserving anti-Stokes/Stokes pair.
  virtual complex chi3(const MediumParams& medium, const DriveFields& drives,
                       Process process, double omega_anti,
                       double omega_stokes) const = 0;
};

/// Steady-state perturbative Lambda-system response with fixed background
/// populations.
///
///   chi1(w) = -(N mu^2 / eps0 hbar) rho11 (dR + i g) / D(w)
///   chi3    = -(N mu^4 / eps0 hbar^3) rho11 / [(d1 + i G/2) D(w_as)]
///   D(w)    = (de + i G/2)(dR + i g) - Omega_d^2 / 4
///
/// with de = w - w31, dR = w - w_d - w21 the two-photon detuning against the
/// dressing beam d, and d1 = w_first - w31 the one-photon detuning of the
/// first excitation.
class LambdaSystemResponse final : public MediumResponse {
 public:
  complex chi1(const MediumParams& medium, const DriveFields& drives,
               AntiStokesMode mode, double omega) const override;
  complex chi3(const MediumParams& medium, const DriveFields& drives,
               Process process, double omega_anti,
               double omega_stokes) const override;
};

const MediumResponse& default_response();

/// Lineshape of the dressed |1> -> |3> probe, in s:
/// -(dR + i g) / [(de + i G/2)(dR + i g) - Omega^2/4].
complex lambda_probe_lineshape(double delta_e, double delta_r, double rabi_dressing,
                               double gamma_e, double gamma_g);

complex chi1(const MediumParams& medium, const DriveFields& drives, AntiStokesMode mode,
             double omega, const MediumResponse& response = default_response());

complex chi3(const MediumParams& medium, const DriveFields& drives, Process process,
             double omega_anti, double omega_stokes,
             const MediumResponse& response = default_response());

SusceptibilitySample sample_chi1(const MediumParams& medium, const DriveFields& drives,
                                 AntiStokesMode mode, double omega,
                                 const MediumResponse& response = default_response());

/// Complex wavevector k = (w/c) sqrt(1 + chi1), principal branch.
complex wavevector(const MediumParams& medium, const DriveFields& drives, AntiStokesMode mode,
                   double omega, const MediumResponse& response = default_response());

/// Intensity transmission exp(-Im[chi1] w L / c), clamped to [0, 1].
double transmission(const MediumParams& medium, const DriveFields& drives, AntiStokesMode mode,
                    double omega, const MediumResponse& response = default_response());

/// transmission() for an already evaluated susceptibility.
double transmission_from_chi1(complex chi1_value, double omega, double length);

}  // namespace colorent
