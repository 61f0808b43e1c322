#include "ehl/pure_state.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ehl/parallel.hpp"
#include "ehl/rng.hpp"

namespace ehl {

namespace {

void require_sites(int n, int cap, const char* who) {
  if (n < 1 || n > cap)
    throw input_error(std::string(who) + ": n_sites must be in [1, " + std::to_string(cap) + "]");
}

// Amplitude-index bit of a 1-based site: site 1 is the most significant digit.
inline int amp_bit(int site_1based, int n) { return n - site_1based; }

PureState single_site(SplitMix64& rng) {
  PureState s;
  s.n_sites = 1;
  s.amplitudes = Eigen::VectorXcd(2);
  s.amplitudes[0] = rng.next_complex_normal();
  s.amplitudes[1] = rng.next_complex_normal();
  s.amplitudes.normalize();
  return s;
}

}  // namespace

StateFamily parse_state_family(std::string_view name) {
  if (name == "product") return StateFamily::product;
  if (name == "bell-pairs" || name == "vbs") return StateFamily::bell_pairs;
  if (name == "ghz") return StateFamily::ghz;
  if (name == "w") return StateFamily::w;
  throw input_error("unknown state family: " + std::string(name));
}

PureState build_named_state(StateFamily family, int n_sites, std::optional<std::uint64_t> seed) {
  require_sites(n_sites, kMaxBuildSites, "build_named_state");
  PureState s;
  s.n_sites = n_sites;
  s.amplitudes = Eigen::VectorXcd::Zero(std::int64_t{1} << n_sites);

  switch (family) {
    case StateFamily::product: {
      SplitMix64 rng(seed.value_or(1));
      PureState acc = single_site(rng);
      for (int i = 1; i < n_sites; ++i) acc = tensor_product(acc, single_site(rng));
      return acc;
    }
    case StateFamily::bell_pairs: {
      if (n_sites % 2 != 0) throw input_error("bell-pairs needs an even number of sites");
      PureState pair;
      pair.n_sites = 2;
      pair.amplitudes = Eigen::VectorXcd::Zero(4);
      pair.amplitudes[0] = pair.amplitudes[3] = 1.0 / std::sqrt(2.0);
      PureState acc = pair;
      for (int p = 1; p < n_sites / 2; ++p) acc = tensor_product(acc, pair);
      return acc;
    }
    case StateFamily::ghz: {
      s.amplitudes[0] = 1.0 / std::sqrt(2.0);
      s.amplitudes[s.amplitudes.size() - 1] = 1.0 / std::sqrt(2.0);
      return s;
    }
    case StateFamily::w: {
      const double a = 1.0 / std::sqrt(static_cast<double>(n_sites));
      for (int site = 1; site <= n_sites; ++site)
        s.amplitudes[std::int64_t{1} << amp_bit(site, n_sites)] = a;
      return s;
    }
  }
  throw input_error("build_named_state: unknown family");
}

PureState random_state(int n_sites, std::uint64_t seed) {
  require_sites(n_sites, kMaxBuildSites, "random_state");
  SplitMix64 rng(seed);
  PureState s;
  s.n_sites = n_sites;
  s.amplitudes = Eigen::VectorXcd(std::int64_t{1} << n_sites);
  for (std::int64_t i = 0; i < s.amplitudes.size(); ++i) s.amplitudes[i] = rng.next_complex_normal();
  s.amplitudes.normalize();
  return s;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  if (a.local_dim != 2 || b.local_dim != 2) throw input_error("tensor_product: local_dim must be 2");
  require_sites(a.n_sites + b.n_sites, kMaxBuildSites, "tensor_product");
  PureState s;
  s.n_sites = a.n_sites + b.n_sites;
  s.amplitudes = Eigen::VectorXcd(std::int64_t{1} << s.n_sites);
  const std::int64_t nb = std::int64_t{1} << b.n_sites;
  for (std::int64_t ia = 0; ia < a.amplitudes.size(); ++ia)
    for (std::int64_t ib = 0; ib < nb; ++ib) s.amplitudes[(ia << b.n_sites) | ib] = a.amplitudes[ia] * b.amplitudes[ib];
  return s;
}

namespace {

// Gram-matrix spectrum with `rows` as the row side of the reshape. Row and
// column sub-indices keep the global site order (lowest site most significant).
Spectrum gram_spectrum(const PureState& state, mask_t rows) {
  const int n = state.n_sites;
  std::vector<int> row_bits, col_bits;
  for (int site = 1; site <= n; ++site) {
    if (rows & (mask_t{1} << (site - 1)))
      row_bits.push_back(amp_bit(site, n));
    else
      col_bits.push_back(amp_bit(site, n));
  }
  const std::int64_t nr = std::int64_t{1} << row_bits.size();
  const std::int64_t nc = std::int64_t{1} << col_bits.size();
  Eigen::MatrixXcd m(nr, nc);
  for (std::int64_t v = 0; v < state.amplitudes.size(); ++v) {
    std::int64_t r = 0, c = 0;
    for (int b : row_bits) r = (r << 1) | ((v >> b) & 1);
    for (int b : col_bits) c = (c << 1) | ((v >> b) & 1);
    m(r, c) = state.amplitudes[v];
  }
  Eigen::MatrixXcd gram = m * m.adjoint();
  return sym_eigenvalues(gram);
}

}  // namespace

Spectrum reduced_spectrum(const PureState& state, mask_t block) {
  if (state.local_dim != 2) throw input_error("reduced_spectrum: local_dim must be 2");
  if (!is_subset(block, full_mask(state.n_sites))) throw input_error("reduced_spectrum: block outside system");
  const mask_t comp = complement_mask(block, state.n_sites);
  const mask_t rows = rank(block) <= rank(comp) ? block : comp;
  return gram_spectrum(state, rows);
}

Spectrum reduced_spectrum_direct(const PureState& state, mask_t block) {
  if (state.local_dim != 2) throw input_error("reduced_spectrum_direct: local_dim must be 2");
  if (!is_subset(block, full_mask(state.n_sites))) throw input_error("reduced_spectrum_direct: block outside system");
  return gram_spectrum(state, block);
}

LatticeTableD entropy_table_dense(const PureState& state, int jobs) {
  if (state.n_sites > kMaxDenseTableSites)
    throw input_error("entropy_table_dense: n_sites exceeds " + std::to_string(kMaxDenseTableSites));
  const int n = state.n_sites;
  LatticeTableD table(n);
  const std::int64_t size = table.size();

  parallel_for(0, size, jobs, [&](std::int64_t i) {
    const auto m = static_cast<mask_t>(i);
    if (m == 0) return;  // stays at the exact 0 of the zero-init
    const mask_t c = complement_mask(m, n);
    const bool direct = rank(m) < rank(c) || (rank(m) == rank(c) && m < c);
    if (direct) table[m] = spectrum_entropy(reduced_spectrum(state, m));
  });
  // Mirror pass: purity forces S_A = S_complement; the full block copies the
  // exact zero of the empty one.
  for (std::int64_t i = 0; i < size; ++i) {
    const auto m = static_cast<mask_t>(i);
    const mask_t c = complement_mask(m, n);
    const bool direct = rank(m) < rank(c) || (rank(m) == rank(c) && m < c);
    if (!direct) table[m] = table[c];
  }
  return table;
}

}  // namespace ehl
