#pragma once

#include <Eigen/Dense>

#include "colorent/herald.hpp"
#include "colorent/medium.hpp"

namespace colorent {

using Matrix4c = Eigen::Matrix4cd;

/// Density matrix of the (as, as') pair truncated at one photon per mode.
/// Basis order |n_as, n_as'>: |0,0>, |0,1>, |1,0>, |1,1>.
class TwoModeDensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kPsdTolerance = 1e-10;

  TwoModeDensityMatrix() : rho_(Matrix4c::Zero()) { rho_(0, 0) = 1.0; }
  explicit TwoModeDensityMatrix(const Matrix4c& rho) : rho_(rho) {}

  static constexpr int index(int n_as, int n_as_prime) { return 2 * n_as + n_as_prime; }

  const Matrix4c& matrix() const { return rho_; }
  complex operator()(int row, int col) const { return rho_(row, col); }

  double hermiticity_error() const;
  double trace_error() const;
  double min_eigenvalue() const;

  /// Throws ParameterError if the matrix is not Hermitian or not normalized.
  void validate() const;

  /// Transpose on the as' mode: <a,b|rho|a',b'> -> <a,b'|rho|a',b>.
  Matrix4c partial_transpose() const;

 private:
  Matrix4c rho_;
};

/// Independent beam-splitter losses (intensity transmissions t_as, t_as_prime)
/// on the two anti-Stokes modes of a heralded state, loss ports traced out.
/// The vacuum component is kept.
TwoModeDensityMatrix apply_loss(const HeraldedState& state, double t_as, double t_as_prime);

/// 2 * sum of |negative eigenvalues| of the partial transpose. Equals
/// 2|alpha||beta| for a lossless heralded state.
double lossy_npt(const TwoModeDensityMatrix& rho);

/// Closed form of lossy_npt(apply_loss(...)):
/// sqrt(p00^2 + 4 T T' |alpha|^2 |beta|^2) - p00.
double lossy_npt_closed_form(const HeraldedState& state, double t_as, double t_as_prime);

struct LossyMerit {
  double npt = 0.0;
  double npt_pure = 0.0;
  double gen_prob = 0.0;
  double t_as = 1.0;
  double t_as_prime = 1.0;
  complex alpha;
  complex beta;
  double omega_as = 0.0;
  double omega_as_prime = 0.0;
  TwoModeDensityMatrix rho;
};

/// herald -> transmissions at omega_as, omega_as' -> apply_loss -> lossy_npt.
LossyMerit heralded_lossy_npt(const MediumParams& medium, const DriveFields& drives,
                              double omega_stokes,
                              const MediumResponse& response = default_response());

}  // namespace colorent
