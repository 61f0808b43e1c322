#include <doctest.h>

#include <Eigen/Core>

#include <cmath>

#include "ehl/entropy.hpp"
#include "oracles.hpp"

using namespace ehl;

TEST_CASE("binary entropy endpoints and peak") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(-5e-13) == 0.0);   // inside the clamp band
  CHECK(binary_entropy(1 + 5e-13) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(binary_entropy(0.1) == doctest::Approx(-0.1 * std::log(0.1) - 0.9 * std::log(0.9)));
  CHECK_THROWS_AS(binary_entropy(-1e-6), numeric_error);
  CHECK_THROWS_AS(binary_entropy(1.1), numeric_error);
}

TEST_CASE("spectrum entropy validates a probability distribution") {
  Spectrum s;
  s.values = Eigen::Vector3d(0.5, 0.25, 0.25);
  CHECK(spectrum_entropy(s) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-14));

  Spectrum unnormalized;
  unnormalized.values = Eigen::Vector2d(0.6, 0.6);
  CHECK_THROWS_AS(spectrum_entropy(unnormalized), numeric_error);

  Spectrum negative;
  negative.values = Eigen::Vector2d(-0.1, 1.1);
  CHECK_THROWS_AS(spectrum_entropy(negative), numeric_error);

  Spectrum pure;
  pure.values = Eigen::Vector2d(1.0 + 5e-13, -5e-13);  // clamp band on both ends
  CHECK(spectrum_entropy(pure) == 0.0);
}

TEST_CASE("symmetric eigenvalues match the bisection oracle") {
  for (int n : {1, 2, 5, 16, 33}) {
    const Eigen::MatrixXd a = oracle::random_symmetric(n, 900 + static_cast<std::uint64_t>(n));
    const Spectrum s = sym_eigenvalues(a);
    const std::vector<double> ref = oracle::bisection_eigenvalues(a);
    REQUIRE(s.values.size() == n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(s.values[i] - ref[static_cast<std::size_t>(i)]));
    CAPTURE(n);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("hermitian eigenvalues match the doubled-embedding oracle") {
  Eigen::MatrixXcd h(3, 3);
  h << std::complex<double>(1.0, 0.0), std::complex<double>(0.2, 0.7), std::complex<double>(0.0, -0.3),
       std::complex<double>(0.2, -0.7), std::complex<double>(-0.5, 0.0), std::complex<double>(0.1, 0.0),
       std::complex<double>(0.0, 0.3), std::complex<double>(0.1, 0.0), std::complex<double>(2.0, 0.0);
  const Spectrum s = sym_eigenvalues(h);
  const std::vector<double> ref = oracle::bisection_eigenvalues_hermitian(h);
  for (int i = 0; i < 3; ++i)
    CHECK(s.values[i] == doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-10));
}

TEST_CASE("eigenvalue trace and ordering invariants") {
  const Eigen::MatrixXd a = oracle::random_symmetric(12, 4242);
  const Spectrum s = sym_eigenvalues(a);
  double trace = 0.0;
  for (int i = 0; i < 12; ++i) trace += a(i, i);
  CHECK(s.values.sum() == doctest::Approx(trace).epsilon(1e-12));
  for (int i = 1; i < s.values.size(); ++i) CHECK(s.values[i - 1] <= s.values[i]);
}

TEST_CASE("eigensystem reconstructs the matrix") {
  const Eigen::MatrixXd a = oracle::random_symmetric(9, 77);
  const EigenSystem es = sym_eigensystem(a);
  const Eigen::MatrixXd back = es.vectors * es.values.asDiagonal() * es.vectors.transpose();
  CHECK((back - a).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()));
}

TEST_CASE("non-self-adjoint input is rejected") {
  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(sym_eigenvalues(a), input_error);
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(sym_eigenvalues(rect), input_error);
}
