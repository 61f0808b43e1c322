#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ehl/errors.hpp"

namespace ehl {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Nearest rational with denominator <= max_den; ties prefer the smaller
// denominator. The result is returned in lowest terms.
Rational snap_to_rational(double x, std::int64_t max_den);

// Coefficients Lambda_{2l,p} of the even-rank entropy reconstruction
//   S_A = sum over even-rank links I crossing the A cut of Lambda_{|I|,|I into A|} J_I,
// keyed by (rank 2l, legs inside p). p = 0 and p = 2l never contribute
// (those links do not cross the cut), so they are implicitly zero.
class LegFactorTable {
 public:
  using Key = std::pair<int, int>;

  void set(int rank, int inside, Rational v);
  bool contains(int rank, int inside) const;
  Rational rational(int rank, int inside) const;  // input_error when missing
  double value(int rank, int inside) const { return rational(rank, inside).value(); }
  int max_rank() const;
  const std::map<Key, Rational>& entries() const { return entries_; }

 private:
  std::map<Key, Rational> entries_;
};

struct StageDiagnostics {
  int n_sites = 0;
  bool solved = false;  // false: verification-only stage (odd n)
  std::int64_t rows = 0;
  double least_squares_residual = 0.0;  // max |row residual| before snapping
  double snapped_residual = 0.0;        // max |row residual| with snapped values
};

struct LegFactorSolution {
  LegFactorTable table;
  std::vector<StageDiagnostics> diagnostics;
};

// Induction over system sizes n = 2..max_n on random dense states. Even n
// solves for the new rank-n coefficients (complement symmetry folded into the
// unknowns) by least squares over all blocks of `states_per_n` states, then
// snaps to small rationals; odd n only re-verifies the reconstruction.
// Stages above n = 9 are allowed but land in conjecture territory: their
// residuals are reported in the diagnostics rather than guaranteed.
LegFactorSolution solve_leg_factors(int max_n = 9, int states_per_n = 3, std::uint64_t seed = 1);

// Number of even-rank links >= 2 on n sites equals 2^(n-1) - 1.
bool verify_count_identity(int n_sites);

}  // namespace ehl
