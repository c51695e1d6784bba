#include "colorent/loss_channel.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "colorent/errors.hpp"

namespace colorent {

double TwoModeDensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double TwoModeDensityMatrix::trace_error() const { return std::abs(rho_.trace() - 1.0); }

double TwoModeDensityMatrix::min_eigenvalue() const {
  const Matrix4c h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void TwoModeDensityMatrix::validate() const {
  if (!rho_.allFinite()) throw ParameterError("density matrix has non-finite entries");
  const double herm = hermiticity_error();
  if (herm > kHermitianTolerance)
    throw ParameterError("density matrix is not Hermitian (max deviation " +
                         std::to_string(herm) + ")");
  const double tr = trace_error();
  if (tr > kTraceTolerance)
    throw ParameterError("density matrix trace differs from 1 by " + std::to_string(tr));
}

Matrix4c TwoModeDensityMatrix::partial_transpose() const {
  Matrix4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          out(index(a, b), index(ap, bp)) = rho_(index(a, bp), index(ap, b));
  return out;
}

TwoModeDensityMatrix apply_loss(const HeraldedState& state, double t_as, double t_as_prime) {
  if (!(t_as >= 0.0 && t_as <= 1.0) || !(t_as_prime >= 0.0 && t_as_prime <= 1.0))
    throw ParameterError("apply_loss: transmissions must lie in [0, 1]");
  const double pa = std::norm(state.alpha);
  const double pb = std::norm(state.beta);
  if (std::abs(pa + pb - 1.0) > 1e-12)
    throw ParameterError("apply_loss: heralded state is not normalized");

  constexpr int vac = TwoModeDensityMatrix::index(0, 0);
  constexpr int one_as = TwoModeDensityMatrix::index(1, 0);
  constexpr int one_asp = TwoModeDensityMatrix::index(0, 1);

  Matrix4c rho = Matrix4c::Zero();
  rho(one_as, one_as) = pa * t_as;
  rho(one_asp, one_asp) = pb * t_as_prime;
  rho(vac, vac) = (1.0 - t_as) * pa + (1.0 - t_as_prime) * pb;
  const complex coh = std::sqrt(t_as * t_as_prime) * state.alpha * std::conj(state.beta);
  rho(one_as, one_asp) = coh;
  rho(one_asp, one_as) = std::conj(coh);
  return TwoModeDensityMatrix(rho);
}

double lossy_npt(const TwoModeDensityMatrix& rho) {
  rho.validate();
  Matrix4c pt = rho.partial_transpose();
  pt = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(pt, Eigen::EigenvaluesOnly);
  double negative = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev < 0.0) negative -= ev;
  }
  return 2.0 * negative;
}

double lossy_npt_closed_form(const HeraldedState& state, double t_as, double t_as_prime) {
  const double pa = std::norm(state.alpha);
  const double pb = std::norm(state.beta);
  const double p00 = (1.0 - t_as) * pa + (1.0 - t_as_prime) * pb;
  return std::sqrt(p00 * p00 + 4.0 * t_as * t_as_prime * pa * pb) - p00;
}

LossyMerit heralded_lossy_npt(const MediumParams& medium, const DriveFields& drives,
                              double omega_stokes, const MediumResponse& response) {
  const HeraldedState s = herald(medium, drives, omega_stokes, response);
  LossyMerit m;
  m.alpha = s.alpha;
  m.beta = s.beta;
  m.gen_prob = s.gen_prob;
  m.omega_as = s.omega_as;
  m.omega_as_prime = s.omega_as_prime;
  m.npt_pure = pure_npt(s);
  m.t_as = transmission(medium, drives, AntiStokesMode::AntiStokes, s.omega_as, response);
  m.t_as_prime =
      transmission(medium, drives, AntiStokesMode::AntiStokesPrime, s.omega_as_prime, response);
  m.rho = apply_loss(s, m.t_as, m.t_as_prime);
  m.npt = lossy_npt(m.rho);
  return m;
}

}  // namespace colorent
