#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ehl/subset_lattice.hpp"

namespace ehl {

enum class Boundary { open, periodic };

Boundary parse_boundary(std::string_view name);
const char* boundary_name(Boundary bc);

// Nearest-neighbour hopping chain H = -sum_i t_i (c^dag_i c_{i+1} + h.c.).
// dimerized: t_i = t0 (1 - (-1)^i delta), i = 1..n-1 (open) or 1..n (periodic),
// so delta = 1 gives hoppings (2, 0, 2, 0, ...) and decoupled dimers.
// random_hopping: t_i = t0 u_i with u_i i.i.d. uniform(0,1) from the seeded
// generator.
struct HoppingChain {
  enum class Model { dimerized, random_hopping };
  Model model = Model::dimerized;
  int n_sites = 0;
  Boundary boundary = Boundary::open;
  double t0 = 1.0;
  std::optional<double> delta;          // dimerized only, |delta| <= 1
  std::optional<std::uint64_t> seed;    // random_hopping only
};

std::vector<double> build_hoppings(const HoppingChain& chain);

// Single-particle hopping matrix: T(i,i+1) = T(i+1,i) = -t_i, plus the wrap
// term for periodic chains.
Eigen::MatrixXd hopping_matrix(std::span<const double> t, Boundary bc);

// Free-fermion ground state, fully described by C_ij = <c^dag_i c_j>.
// C is the projector onto the lowest `n_occupied` orbitals.
struct GaussianGroundState {
  int n_sites = 0;
  int n_occupied = 0;
  Eigen::MatrixXd correlation;
};

// Fills the lowest `filling` modes. A Fermi-level gap below 1e-9 is refused:
// the projector (and every entropy derived from it) would be ambiguous.
// Perturb the couplings or switch boundary condition in that case.
GaussianGroundState ground_correlation(std::span<const double> t, Boundary bc, int filling);

inline int half_filling(int n_sites) { return n_sites / 2; }

// Entanglement entropy of a site block in nats: sum of binary entropies of the
// eigenvalues of C restricted to the block.
double block_entropy_gaussian(const GaussianGroundState& gs, mask_t block);

struct GaussianTableStats {
  std::int64_t eigenproblems = 0;
  double max_mirror_residual = 0.0;
};

// Entropy table over all blocks. Only blocks up to half rank are diagonalized,
// the rest use the purity mirror S_A = S_complement. `crosscheck_samples`
// large-side blocks are additionally computed directly and compared against
// the mirrored value (0 disables the cross-check, e.g. inside bulk scans).
LatticeTableD entropy_table_gaussian(const GaussianGroundState& gs, int jobs = 1,
                                     int crosscheck_samples = 8,
                                     GaussianTableStats* stats = nullptr);

}  // namespace ehl
