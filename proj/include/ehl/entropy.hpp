#pragma once

#include <Eigen/Core>

#include "ehl/errors.hpp"

namespace ehl {

// Clamp band for probabilities and mode occupations.
inline constexpr double kOccupationTol = 1e-12;
inline constexpr int kMaxEigenDim = 1024;

// Eigenvalues together with the tolerance band they are validated against.
struct Spectrum {
  Eigen::VectorXd values;
  double tolerance = kOccupationTol;
};

// -nu ln nu - (1-nu) ln(1-nu), exactly 0 within tol of the endpoints.
// nu outside [-tol, 1+tol] is a numeric-domain error.
double binary_entropy(double nu, double tol = kOccupationTol);

// -sum p ln p over eigenvalues p > tol, clamped to be >= 0. The spectrum must
// be a probability distribution: each value in [-tol, 1+tol] and the sum within
// tol*dim of one.
double spectrum_entropy(const Spectrum& spectrum);

// Eigenvalues (ascending) of a symmetric / Hermitian matrix. The input must be
// self-adjoint within 1e-10 and no larger than kMaxEigenDim.
Spectrum sym_eigenvalues(const Eigen::MatrixXd& m);
Spectrum sym_eigenvalues(const Eigen::MatrixXcd& m);

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values[k]
};

EigenSystem sym_eigensystem(const Eigen::MatrixXd& m);

}  // namespace ehl
