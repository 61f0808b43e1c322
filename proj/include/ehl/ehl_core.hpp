#pragma once

#include <vector>

#include "ehl/leg_factors.hpp"
#include "ehl/subset_lattice.hpp"

namespace ehl {

// Tolerance ladder: kernel clamps sit at kOccupationTol (1e-12), single
// identities at 1e-10, end-to-end reconstructions that sum 2^N terms at 1e-9.
inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;
// An EHL counts as nonzero for sign statistics above this magnitude.
inline constexpr double kNonzeroEhlTol = 1e-9;

// Pairwise-disjoint site blocks A_1..A_K, K >= 2.
class CoarseGraining {
 public:
  explicit CoarseGraining(std::vector<mask_t> blocks);
  const std::vector<mask_t>& blocks() const { return blocks_; }
  mask_t union_mask() const { return union_; }

 private:
  std::vector<mask_t> blocks_;
  mask_t union_ = 0;
};

// J_I = sum_{A subset I} (-1)^(|I|-|A|) S_A for every I, one signed Moebius
// transform of the entropy table.
LatticeTableD ehl_table(const LatticeTableD& entropy);

// I(A,B) = S_A + S_B - S_{A union B}; blocks must be disjoint.
double mutual_information(const LatticeTableD& entropy, mask_t a, mask_t b);

// Conditional link J_{I|J} = sum_{A subset I} (-1)^(|I|-|A|) (S_{A union J} - S_J),
// the same inclusion-exclusion with every entropy conditioned on J.
double conditional_ehl(const LatticeTableD& entropy, mask_t block, mask_t condition);

// Grows J_I one site at a time through J_{I+i} = J_{I|i} - J_I, consuming the
// sites of `block` in the given order. Any order must land on ehl_table's value.
double ehl_by_growth(const LatticeTableD& entropy, const std::vector<int>& site_order_1based);

// Bulk reconstruction S_A = sum_{I subset A} J_I.
double bulk_reconstruct(const LatticeTableD& links, mask_t block);

// Edge reconstruction S_A = -1/2 sum_{I crossing the A cut} J_I. Valid for
// pure-state tables only, which is gated by |sum_I J_I| <= purity_tol.
double edge_reconstruct(const LatticeTableD& links, mask_t block, double purity_tol = kReconstructionTol);

// I(A, complement A) = -sum_{I crossing the A cut} J_I.
double cut_mutual_information(const LatticeTableD& links, mask_t block);

// Coarse-grained link of the grouped blocks, by its inclusion-exclusion
// definition over 2^K union entropies.
double coarse_grained_ehl(const LatticeTableD& entropy, const CoarseGraining& cg);

// Same quantity as the sum of all fine-grained links crossing every block.
double coarse_grained_ehl_fine_sum(const LatticeTableD& links, const CoarseGraining& cg);

// Truncated edge reconstruction S_A(l): crossing links of rank <= max_rank only.
double partial_sum(const LatticeTableD& links, mask_t block, int max_rank);

// Even-rank reconstruction S_A = sum Lambda_{|I|, |I into A|} J_I over even-rank
// crossing links. The table must cover every even rank in [2, N].
double even_legged_reconstruct(const LatticeTableD& links, mask_t block, const LegFactorTable& lambda);

}  // namespace ehl
