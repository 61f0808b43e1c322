#include "ehl/gaussian.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ehl/entropy.hpp"
#include "ehl/parallel.hpp"
#include "ehl/rng.hpp"

namespace ehl {

Boundary parse_boundary(std::string_view name) {
  if (name == "open") return Boundary::open;
  if (name == "periodic") return Boundary::periodic;
  throw input_error("unknown boundary condition: " + std::string(name));
}

const char* boundary_name(Boundary bc) { return bc == Boundary::open ? "open" : "periodic"; }

std::vector<double> build_hoppings(const HoppingChain& chain) {
  if (chain.n_sites < 2 || chain.n_sites > kMaxSites)
    throw input_error("build_hoppings: n_sites must be in [2, " + std::to_string(kMaxSites) + "]");
  const int links = chain.boundary == Boundary::open ? chain.n_sites - 1 : chain.n_sites;
  std::vector<double> t(static_cast<std::size_t>(links));

  switch (chain.model) {
    case HoppingChain::Model::dimerized: {
      if (!chain.delta) throw input_error("dimerized chain needs delta");
      const double d = *chain.delta;
      if (d < -1.0 || d > 1.0) throw input_error("delta must lie in [-1, 1]");
      for (int i = 1; i <= links; ++i)
        t[static_cast<std::size_t>(i - 1)] = chain.t0 * (1.0 - (i % 2 == 0 ? 1.0 : -1.0) * d);
      break;
    }
    case HoppingChain::Model::random_hopping: {
      if (!chain.seed) throw input_error("random-hopping chain needs a seed");
      SplitMix64 rng(*chain.seed);
      for (int i = 0; i < links; ++i) t[static_cast<std::size_t>(i)] = chain.t0 * rng.next_double();
      break;
    }
  }
  return t;
}

Eigen::MatrixXd hopping_matrix(std::span<const double> t, Boundary bc) {
  const int n = bc == Boundary::open ? static_cast<int>(t.size()) + 1 : static_cast<int>(t.size());
  if (n < 2) throw input_error("hopping_matrix: need at least 2 sites");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) -= t[static_cast<std::size_t>(i)];
    m(i + 1, i) -= t[static_cast<std::size_t>(i)];
  }
  if (bc == Boundary::periodic) {
    m(n - 1, 0) -= t[static_cast<std::size_t>(n - 1)];
    m(0, n - 1) -= t[static_cast<std::size_t>(n - 1)];
  }
  return m;
}

GaussianGroundState ground_correlation(std::span<const double> t, Boundary bc, int filling) {
  const Eigen::MatrixXd m = hopping_matrix(t, bc);
  const int n = static_cast<int>(m.rows());
  if (filling < 0 || filling > n) throw input_error("ground_correlation: filling outside [0, n]");

  const EigenSystem es = sym_eigensystem(m);
  if (filling > 0 && filling < n) {
    const double gap = es.values[filling] - es.values[filling - 1];
    if (gap <= 1e-9)
      throw numeric_error(
          "ground_correlation: degenerate Fermi level (gap " + std::to_string(gap) +
          "); the ground state is not unique. Perturb the couplings or switch boundary condition.");
  }

  GaussianGroundState gs;
  gs.n_sites = n;
  gs.n_occupied = filling;
  const auto occ = es.vectors.leftCols(filling);
  gs.correlation = occ * occ.transpose();

  const double proj = (gs.correlation * gs.correlation - gs.correlation).cwiseAbs().maxCoeff();
  if (proj > 1e-9)
    throw numeric_error("ground_correlation: correlation matrix is not a projector, |C^2-C| = " +
                        std::to_string(proj));
  return gs;
}

double block_entropy_gaussian(const GaussianGroundState& gs, mask_t block) {
  if (!is_subset(block, full_mask(gs.n_sites))) throw input_error("block_entropy_gaussian: block outside system");
  const int b = rank(block);
  if (b == 0) return 0.0;

  std::vector<int> sites;
  sites.reserve(static_cast<std::size_t>(b));
  for (int i = 0; i < gs.n_sites; ++i)
    if (block & (mask_t{1} << i)) sites.push_back(i);

  Eigen::MatrixXd sub(b, b);
  for (int r = 0; r < b; ++r)
    for (int c = 0; c < b; ++c) sub(r, c) = gs.correlation(sites[static_cast<std::size_t>(r)], sites[static_cast<std::size_t>(c)]);

  const Spectrum nu = sym_eigenvalues(sub);
  double s = 0.0;
  for (Eigen::Index i = 0; i < nu.values.size(); ++i) s += binary_entropy(nu.values[i]);
  return s;
}

LatticeTableD entropy_table_gaussian(const GaussianGroundState& gs, int jobs, int crosscheck_samples,
                                     GaussianTableStats* stats) {
  const int n = gs.n_sites;
  LatticeTableD table(n);
  const std::int64_t size = table.size();
  std::int64_t eigenproblems = 0;

  parallel_for(0, size, jobs, [&](std::int64_t i) {
    const auto m = static_cast<mask_t>(i);
    if (m == 0) return;  // stays at the exact 0 of the zero-init
    const mask_t c = complement_mask(m, n);
    const bool direct = rank(m) < rank(c) || (rank(m) == rank(c) && m < c);
    if (direct) table[m] = block_entropy_gaussian(gs, m);
  });
  for (std::int64_t i = 0; i < size; ++i) {
    const auto m = static_cast<mask_t>(i);
    const mask_t c = complement_mask(m, n);
    const bool direct = rank(m) < rank(c) || (rank(m) == rank(c) && m < c);
    if (!direct)
      table[m] = table[c];
    else if (m != 0)
      ++eigenproblems;
  }

  double worst = 0.0;
  if (crosscheck_samples > 0) {
    // Deterministic sample of large-side blocks, recomputed without the mirror.
    SplitMix64 rng(0x9e3779b9u ^ static_cast<std::uint64_t>(n));
    for (int k = 0; k < crosscheck_samples; ++k) {
      mask_t m = static_cast<mask_t>(rng.next_u64()) & full_mask(n);
      m |= mask_t{1};  // bias away from the empty mask
      if (2 * rank(m) < n) m = complement_mask(m, n);
      const double direct = block_entropy_gaussian(gs, m);
      ++eigenproblems;
      worst = std::max(worst, std::abs(direct - table[m]));
    }
    if (worst > 1e-9)
      throw numeric_error("entropy_table_gaussian: mirror rule violated by " + std::to_string(worst) +
                          "; the state is not pure to tolerance");
  }

  if (stats) {
    stats->eigenproblems = eigenproblems;
    stats->max_mirror_residual = worst;
  }
  return table;
}

}  // namespace ehl
