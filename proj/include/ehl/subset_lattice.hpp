#pragma once

#include <Eigen/Core>

#include <bit>
#include <cstdint>
#include <span>
#include <string>

#include "ehl/errors.hpp"

namespace ehl {

// A block of sites packed into a bitmask: bit i set <=> site i+1 belongs to
// the block. Sites are 1-indexed in I/O and prose, 0-indexed in masks.
using mask_t = std::uint32_t;

// Tables store one double per subset, so 20 sites = 8 MiB per table.
inline constexpr int kMaxSites = 20;

constexpr mask_t full_mask(int n_sites) { return (mask_t{1} << n_sites) - 1; }
constexpr int rank(mask_t m) { return std::popcount(m); }
constexpr mask_t complement_mask(mask_t m, int n_sites) { return full_mask(n_sites) ^ m; }
constexpr bool is_subset(mask_t a, mask_t b) { return (a & ~b) == 0; }

inline mask_t mask_from_sites(std::span<const int> sites_1based, int n_sites) {
  mask_t m = 0;
  for (int s : sites_1based) {
    if (s < 1 || s > n_sites) throw input_error("site index out of range: " + std::to_string(s));
    m |= mask_t{1} << (s - 1);
  }
  return m;
}

// Visits every submask of m, including the empty set and m itself.
template <class F>
void for_each_submask(mask_t m, F&& fn) {
  mask_t s = m;
  while (true) {
    fn(s);
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

// The crossing relation I in A_1:...:A_K: I lies inside the union of the
// blocks and touches every one of them. Blocks must be pairwise disjoint.
inline bool crosses(mask_t block, std::span<const mask_t> parts) {
  mask_t uni = 0;
  for (mask_t p : parts) {
    if (uni & p) throw input_error("crosses: blocks overlap");
    uni |= p;
  }
  if (!is_subset(block, uni)) return false;
  for (mask_t p : parts)
    if ((block & p) == 0) return false;
  return true;
}

inline bool crosses(mask_t block, mask_t a, mask_t b) {
  const mask_t parts[2] = {a, b};
  return crosses(block, std::span<const mask_t>(parts, 2));
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Dense table over all 2^N subsets of an N-site system, indexed by mask.
// Entropy tables hold S_A in nats, hyperlink tables the signed J_I; by
// convention the empty-set entry is zero in both.
template <typename Scalar = double>
struct LatticeTable {
  int n_sites = 0;
  Eigen::VectorX<Scalar> values;

  LatticeTable() = default;
  explicit LatticeTable(int n) : n_sites(n) {
    if (n < 1 || n > kMaxSites)
      throw input_error("LatticeTable: n_sites must be in [1, " + std::to_string(kMaxSites) + "]");
    values = Eigen::VectorX<Scalar>::Zero(std::int64_t{1} << n);
  }

  std::int64_t size() const { return values.size(); }
  Scalar operator[](mask_t m) const { return values[static_cast<std::int64_t>(m)]; }
  Scalar& operator[](mask_t m) { return values[static_cast<std::int64_t>(m)]; }
  mask_t omega() const { return full_mask(n_sites); }
};

using LatticeTableD = LatticeTable<double>;

// In-place inclusion-exclusion along one bit direction at a time:
//   values[A] <- sum_{B subset A} (-1)^{|A|-|B|} values[B]
// N sweeps over the table, O(N 2^N) total.
template <typename Scalar>
void signed_moebius_inplace(LatticeTable<Scalar>& table) {
  auto& v = table.values;
  const std::int64_t size = v.size();
  for (int bit = 0; bit < table.n_sites; ++bit) {
    const std::int64_t b = std::int64_t{1} << bit;
    for (std::int64_t lo = 0; lo < size; lo += 2 * b)
      for (std::int64_t m = lo; m < lo + b; ++m) v[m + b] -= v[m];
  }
}

// Inverse transform (subset sums): values[A] <- sum_{B subset A} values[B].
template <typename Scalar>
void zeta_inplace(LatticeTable<Scalar>& table) {
  auto& v = table.values;
  const std::int64_t size = v.size();
  for (int bit = 0; bit < table.n_sites; ++bit) {
    const std::int64_t b = std::int64_t{1} << bit;
    for (std::int64_t lo = 0; lo < size; lo += 2 * b)
      for (std::int64_t m = lo; m < lo + b; ++m) v[m + b] += v[m];
  }
}

template <typename Scalar>
LatticeTable<Scalar> signed_moebius(LatticeTable<Scalar> table) {
  signed_moebius_inplace(table);
  return table;
}

template <typename Scalar>
LatticeTable<Scalar> zeta(LatticeTable<Scalar> table) {
  zeta_inplace(table);
  return table;
}

}  // namespace ehl
