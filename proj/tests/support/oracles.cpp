#include "oracles.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ehl/rng.hpp"

namespace oracle {

using ehl::LatticeTableD;
using ehl::mask_t;

LatticeTableD brute_signed_moebius(const LatticeTableD& f) {
  LatticeTableD g(f.n_sites);
  for (mask_t a = 0; a <= f.omega(); ++a) {
    double acc = 0.0;
    for (mask_t b = 0; b <= a; ++b) {
      if ((b & a) != b) continue;
      const int sign = (ehl::rank(a) - ehl::rank(b)) % 2 == 0 ? 1 : -1;
      acc += sign * f[b];
    }
    g[a] = acc;
  }
  return g;
}

LatticeTableD brute_zeta(const LatticeTableD& g) {
  LatticeTableD f(g.n_sites);
  for (mask_t a = 0; a <= g.omega(); ++a) {
    double acc = 0.0;
    for (mask_t b = 0; b <= a; ++b)
      if ((b & a) == b) acc += g[b];
    f[a] = acc;
  }
  return f;
}

namespace {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> sub;  // sub[i] couples i and i + 1
};

// Householder similarity reduction to symmetric tridiagonal form. Explicit
// reflector products keep it transparent; the matrices here are tiny.
Tridiagonal tridiagonalize(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    Eigen::VectorXd x = a.col(k).tail(m);
    const double norm = x.norm();
    if (norm == 0.0) continue;
    Eigen::VectorXd v = x;
    v(0) += x(0) >= 0.0 ? norm : -norm;
    const double vtv = v.squaredNorm();
    if (vtv == 0.0) continue;
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    h.bottomRightCorner(m, m) -= (2.0 / vtv) * (v * v.transpose());
    a = h * a * h;
  }
  Tridiagonal t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.sub.resize(n > 1 ? static_cast<std::size_t>(n - 1) : 0);
  for (int i = 0; i < n; ++i) t.diag[static_cast<std::size_t>(i)] = a(i, i);
  for (int i = 0; i + 1 < n; ++i) t.sub[static_cast<std::size_t>(i)] = a(i + 1, i);
  return t;
}

// Sturm count: the number of eigenvalues strictly below x equals the number
// of negative terms in the pivot recurrence d_i = (diag_i - x) - sub_{i-1}^2 / d_{i-1}.
// Pivots inside (-pivmin, pivmin) are clamped, the standard safeguard that
// keeps the count consistent when x sits on a zero cluster.
int sturm_count_below(const Tridiagonal& t, double x, double pivmin) {
  int negatives = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double off = i == 0 ? 0.0 : t.sub[i - 1] * t.sub[i - 1] / d;
    d = (t.diag[i] - x) - off;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++negatives;
  }
  return negatives;
}

}  // namespace

std::vector<double> bisection_eigenvalues(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("bisection: square matrices only");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return {};
  const Tridiagonal t = tridiagonalize(a);
  double lo = t.diag[0], hi = t.diag[0];
  double max_off2 = 1.0;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.sub[static_cast<std::size_t>(i - 1)]);
    if (i + 1 < n) radius += std::abs(t.sub[static_cast<std::size_t>(i)]);
    lo = std::min(lo, t.diag[static_cast<std::size_t>(i)] - radius);
    hi = std::max(hi, t.diag[static_cast<std::size_t>(i)] + radius);
    if (i + 1 < n)
      max_off2 = std::max(max_off2, t.sub[static_cast<std::size_t>(i)] * t.sub[static_cast<std::size_t>(i)]);
  }
  lo -= 1.0;
  hi += 1.0;
  const double pivmin = 1e-290 * max_off2;

  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // k-th smallest eigenvalue: smallest x with count(x) >= k + 1.
    double a0 = lo, b0 = hi;
    while (b0 - a0 > tol * std::max(1.0, std::abs(a0) + std::abs(b0))) {
      const double mid = 0.5 * (a0 + b0);
      if (sturm_count_below(t, mid, pivmin) >= k + 1)
        b0 = mid;
      else
        a0 = mid;
    }
    out[static_cast<std::size_t>(k)] = 0.5 * (a0 + b0);
  }
  return out;
}

std::vector<double> bisection_eigenvalues_hermitian(const Eigen::MatrixXcd& a, double tol) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd embed(2 * n, 2 * n);
  embed.topLeftCorner(n, n) = a.real();
  embed.topRightCorner(n, n) = -a.imag();
  embed.bottomLeftCorner(n, n) = a.imag();
  embed.bottomRightCorner(n, n) = a.real();
  const std::vector<double> doubled = bisection_eigenvalues(embed, tol);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = doubled[static_cast<std::size_t>(2 * k)];
  return out;
}

namespace {

// Site s of an n-site state occupies amplitude-index bit (n - s); site 1 is
// the most significant digit. Kept local so the oracle's bookkeeping stays
// separate from the library's.
std::vector<int> mask_sites(mask_t m, int n) {
  std::vector<int> sites;
  for (int s = 1; s <= n; ++s)
    if (m & (mask_t{1} << (s - 1))) sites.push_back(s);
  return sites;
}

std::size_t pack_bits(std::size_t full_index, const std::vector<int>& sites, int n) {
  std::size_t packed = 0;
  for (int site : sites) packed = (packed << 1) | ((full_index >> (n - site)) & 1u);
  return packed;
}

std::size_t unpack_bits(std::size_t packed, const std::vector<int>& sites, int n) {
  std::size_t full = 0;
  const int k = static_cast<int>(sites.size());
  for (int pos = 0; pos < k; ++pos)
    if ((packed >> (k - 1 - pos)) & 1u) full |= std::size_t{1} << (n - sites[static_cast<std::size_t>(pos)]);
  return full;
}

}  // namespace

Eigen::MatrixXcd qubit_partial_trace(const Eigen::VectorXcd& amps, int n_sites, mask_t block) {
  const std::vector<int> in = mask_sites(block, n_sites);
  const std::vector<int> out = mask_sites(ehl::complement_mask(block, n_sites), n_sites);
  const std::size_t dim_in = std::size_t{1} << in.size();
  const std::size_t dim_out = std::size_t{1} << out.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_in),
                                                static_cast<Eigen::Index>(dim_in));
  for (std::size_t e = 0; e < dim_out; ++e) {
    const std::size_t env = unpack_bits(e, out, n_sites);
    for (std::size_t r = 0; r < dim_in; ++r) {
      const std::complex<double> ar = amps[static_cast<Eigen::Index>(unpack_bits(r, in, n_sites) | env)];
      if (ar == 0.0) continue;
      for (std::size_t c = 0; c < dim_in; ++c) {
        const std::complex<double> ac = amps[static_cast<Eigen::Index>(unpack_bits(c, in, n_sites) | env)];
        rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += ar * std::conj(ac);
      }
    }
  }
  return rho;
}

double entropy_of_spectrum(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p)
    if (v > 1e-12) s -= v * std::log(v);
  return s;
}

double qubit_block_entropy(const ehl::PureState& psi, mask_t block) {
  if (block == 0 || block == ehl::full_mask(psi.n_sites)) return 0.0;
  const Eigen::MatrixXcd rho = qubit_partial_trace(psi.amplitudes, psi.n_sites, block);
  return entropy_of_spectrum(bisection_eigenvalues_hermitian(rho));
}

LatticeTableD qubit_entropy_table(const ehl::PureState& psi) {
  LatticeTableD table(psi.n_sites);
  for (mask_t m = 0; m <= table.omega(); ++m) table[m] = qubit_block_entropy(psi, m);
  return table;
}

Eigen::VectorXd slater_amplitudes(const Eigen::MatrixXd& occupied_modes) {
  const int n = static_cast<int>(occupied_modes.rows());
  const int k = static_cast<int>(occupied_modes.cols());
  Eigen::VectorXd amps = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
  for (mask_t occ = 0; occ <= ehl::full_mask(n); ++occ) {
    if (ehl::rank(occ) != k) continue;
    const std::vector<int> sites = mask_sites(occ, n);
    Eigen::MatrixXd rows(k, k);
    for (int r = 0; r < k; ++r) rows.row(r) = occupied_modes.row(sites[static_cast<std::size_t>(r)] - 1);
    std::size_t index = 0;
    for (int site : sites) index |= std::size_t{1} << (n - site);
    amps[static_cast<Eigen::Index>(index)] = rows.determinant();
  }
  return amps;
}

double fermionic_block_entropy(const Eigen::VectorXd& amps, int n_sites, mask_t block) {
  if (block == 0 || block == ehl::full_mask(n_sites)) return 0.0;
  const std::vector<int> in = mask_sites(block, n_sites);
  const std::vector<int> out = mask_sites(ehl::complement_mask(block, n_sites), n_sites);
  const std::size_t dim_in = std::size_t{1} << in.size();
  const std::size_t dim_out = std::size_t{1} << out.size();

  // Parity of moving every occupied environment factor past the occupied
  // block factors that sit at larger site numbers: the sign relating
  // (block order)(environment order) to ascending site order.
  auto parity = [&](std::size_t b, std::size_t e) {
    int swaps = 0;
    for (std::size_t pe = 0; pe < out.size(); ++pe) {
      if (!((e >> (out.size() - 1 - pe)) & 1u)) continue;
      const int env_site = out[pe];
      for (std::size_t pb = 0; pb < in.size(); ++pb) {
        if (!((b >> (in.size() - 1 - pb)) & 1u)) continue;
        if (in[pb] > env_site) ++swaps;
      }
    }
    return swaps % 2 == 0 ? 1.0 : -1.0;
  };

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_in),
                                              static_cast<Eigen::Index>(dim_in));
  for (std::size_t e = 0; e < dim_out; ++e) {
    const std::size_t env = unpack_bits(e, out, n_sites);
    for (std::size_t r = 0; r < dim_in; ++r) {
      const double ar = amps[static_cast<Eigen::Index>(unpack_bits(r, in, n_sites) | env)] * parity(r, e);
      if (ar == 0.0) continue;
      for (std::size_t c = 0; c < dim_in; ++c) {
        const double ac = amps[static_cast<Eigen::Index>(unpack_bits(c, in, n_sites) | env)] * parity(c, e);
        rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += ar * ac;
      }
    }
  }
  return entropy_of_spectrum(bisection_eigenvalues(rho));
}

LatticeTableD fermionic_entropy_table(const Eigen::VectorXd& amps, int n_sites) {
  LatticeTableD table(n_sites);
  for (mask_t m = 0; m <= table.omega(); ++m) table[m] = fermionic_block_entropy(amps, n_sites, m);
  return table;
}

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  ehl::SplitMix64 rng(seed);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = rng.next_normal();
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

}  // namespace oracle
