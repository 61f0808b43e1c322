#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string_view>

#include "ehl/entropy.hpp"
#include "ehl/subset_lattice.hpp"

namespace ehl {

inline constexpr int kMaxBuildSites = 14;       // amplitude vectors up to 2^14
inline constexpr int kMaxDenseTableSites = 12;  // 2^N reduced spectra per table

enum class StateFamily { product, bell_pairs, ghz, w };

StateFamily parse_state_family(std::string_view name);

// Dense pure state on n qubit sites. Site 1 is the most significant digit of
// the computational-basis index, so |s1 s2 ... sn> sits at index
// sum_i s_i 2^(n-i); mask bit i addresses site i+1.
struct PureState {
  int n_sites = 0;
  int local_dim = 2;
  Eigen::VectorXcd amplitudes;
};

// product: seeded random single-site factors. bell_pairs: (|00>+|11>)/sqrt(2)
// on (1,2),(3,4),... (even n only). ghz: (|0..0>+|1..1>)/sqrt(2). w: equal
// superposition of the n single-excitation states.
PureState build_named_state(StateFamily family, int n_sites,
                            std::optional<std::uint64_t> seed = std::nullopt);

// Haar-like random state: i.i.d. complex Gaussian amplitudes, normalized.
PureState random_state(int n_sites, std::uint64_t seed);

// Kronecker product; `a` supplies the leading (most significant) sites.
PureState tensor_product(const PureState& a, const PureState& b);

// Spectrum of the reduced density matrix of `block`, computed on the smaller
// side of the cut: reshape the amplitudes into a matrix M with rows indexed by
// the smaller side and return the eigenvalues of M M^dagger. Purity guarantees
// both sides carry the same nonzero spectrum.
Spectrum reduced_spectrum(const PureState& state, mask_t block);

// Same, but rows are always `block` itself (no small-side switch). Used by the
// purity cross-checks; cost grows as 4^|block|.
Spectrum reduced_spectrum_direct(const PureState& state, mask_t block);

// Entropy S_A in nats for every block A. Blocks above half rank are mirrored
// from their complements, so 2^(N-1) eigenproblems per table.
LatticeTableD entropy_table_dense(const PureState& state, int jobs = 1);

}  // namespace ehl
