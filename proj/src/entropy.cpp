#include "ehl/entropy.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace ehl {

double binary_entropy(double nu, double tol) {
  if (nu < -tol || nu > 1.0 + tol)
    throw numeric_error("binary_entropy: occupation " + std::to_string(nu) + " outside [0,1] band");
  if (nu <= tol || nu >= 1.0 - tol) return 0.0;
  return -nu * std::log(nu) - (1.0 - nu) * std::log(1.0 - nu);
}

double spectrum_entropy(const Spectrum& spectrum) {
  const double tol = spectrum.tolerance;
  const auto dim = spectrum.values.size();
  double sum = 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double p = spectrum.values[i];
    if (p < -tol || p > 1.0 + tol)
      throw numeric_error("spectrum_entropy: eigenvalue " + std::to_string(p) + " outside [0,1] band");
    sum += p;
    if (p > tol) s -= p * std::log(p);
  }
  if (std::abs(sum - 1.0) > tol * static_cast<double>(dim > 0 ? dim : 1))
    throw numeric_error("spectrum_entropy: normalization off by " + std::to_string(sum - 1.0));
  return s < 0.0 ? 0.0 : s;
}

namespace {

template <typename Matrix>
void require_self_adjoint(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) throw input_error(std::string(who) + ": matrix not square");
  if (m.rows() > kMaxEigenDim)
    throw input_error(std::string(who) + ": dimension exceeds " + std::to_string(kMaxEigenDim));
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw input_error(std::string(who) + ": matrix not self-adjoint, max deviation " + std::to_string(asym));
}

}  // namespace

Spectrum sym_eigenvalues(const Eigen::MatrixXd& m) {
  require_self_adjoint(m, "sym_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw numeric_error("sym_eigenvalues: solver did not converge");
  return Spectrum{solver.eigenvalues(), kOccupationTol};
}

Spectrum sym_eigenvalues(const Eigen::MatrixXcd& m) {
  require_self_adjoint(m, "sym_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw numeric_error("sym_eigenvalues: solver did not converge");
  return Spectrum{solver.eigenvalues(), kOccupationTol};
}

EigenSystem sym_eigensystem(const Eigen::MatrixXd& m) {
  require_self_adjoint(m, "sym_eigensystem");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw numeric_error("sym_eigensystem: solver did not converge");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace ehl
