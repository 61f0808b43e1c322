#include "ehl/ehl_core.hpp"

#include <cmath>
#include <string>

namespace ehl {

CoarseGraining::CoarseGraining(std::vector<mask_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.size() < 2) throw input_error("CoarseGraining: need at least 2 blocks");
  for (mask_t b : blocks_) {
    if (b == 0) throw input_error("CoarseGraining: empty block");
    if (union_ & b) throw input_error("CoarseGraining: blocks overlap");
    union_ |= b;
  }
}

LatticeTableD ehl_table(const LatticeTableD& entropy) { return signed_moebius(entropy); }

double mutual_information(const LatticeTableD& entropy, mask_t a, mask_t b) {
  if (a & b) throw input_error("mutual_information: blocks overlap");
  return entropy[a] + entropy[b] - entropy[a | b];
}

double conditional_ehl(const LatticeTableD& entropy, mask_t block, mask_t condition) {
  if (block & condition) throw input_error("conditional_ehl: block and condition overlap");
  const int k = rank(block);
  const double s_cond = entropy[condition];
  double sum = 0.0;
  for_each_submask(block, [&](mask_t a) {
    const double sign = ((k - rank(a)) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (entropy[a | condition] - s_cond);
  });
  return sum;
}

double ehl_by_growth(const LatticeTableD& entropy, const std::vector<int>& site_order_1based) {
  if (site_order_1based.empty()) throw input_error("ehl_by_growth: empty site list");
  mask_t grown = mask_from_sites(std::span<const int>(site_order_1based.data(), 1), entropy.n_sites);
  double j = entropy[grown];  // rank-1 link equals the single-site entropy
  for (std::size_t i = 1; i < site_order_1based.size(); ++i) {
    const int site = site_order_1based[i];
    const mask_t next = mask_from_sites(std::span<const int>(&site, 1), entropy.n_sites);
    if (next & grown) throw input_error("ehl_by_growth: repeated site");
    j = conditional_ehl(entropy, grown, next) - j;
    grown |= next;
  }
  return j;
}

double bulk_reconstruct(const LatticeTableD& links, mask_t block) {
  double sum = 0.0;
  for_each_submask(block, [&](mask_t i) { sum += links[i]; });
  return sum;
}

namespace {

double crossing_sum(const LatticeTableD& links, mask_t block, int max_rank) {
  const mask_t comp = complement_mask(block, links.n_sites);
  double sum = 0.0;
  const std::int64_t size = links.size();
  for (std::int64_t i = 0; i < size; ++i) {
    const auto m = static_cast<mask_t>(i);
    if ((m & block) && (m & comp) && rank(m) <= max_rank) sum += links[m];
  }
  return sum;
}

}  // namespace

double edge_reconstruct(const LatticeTableD& links, mask_t block, double purity_tol) {
  const double total = links.values.sum();
  if (std::abs(total) > purity_tol)
    throw input_error("edge_reconstruct: table is not pure, sum of links = " + std::to_string(total));
  return -0.5 * crossing_sum(links, block, links.n_sites);
}

double cut_mutual_information(const LatticeTableD& links, mask_t block) {
  return -crossing_sum(links, block, links.n_sites);
}

double coarse_grained_ehl(const LatticeTableD& entropy, const CoarseGraining& cg) {
  const int k = static_cast<int>(cg.blocks().size());
  double sum = 0.0;
  for (mask_t group = 0; group < (mask_t{1} << k); ++group) {
    mask_t uni = 0;
    for (int b = 0; b < k; ++b)
      if (group & (mask_t{1} << b)) uni |= cg.blocks()[static_cast<std::size_t>(b)];
    const double sign = ((k - rank(group)) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * entropy[uni];
  }
  return sum;
}

double coarse_grained_ehl_fine_sum(const LatticeTableD& links, const CoarseGraining& cg) {
  double sum = 0.0;
  for_each_submask(cg.union_mask(), [&](mask_t i) {
    bool touches_all = true;
    for (mask_t b : cg.blocks())
      if ((i & b) == 0) {
        touches_all = false;
        break;
      }
    if (touches_all) sum += links[i];
  });
  return sum;
}

double partial_sum(const LatticeTableD& links, mask_t block, int max_rank) {
  if (max_rank < 0 || max_rank > links.n_sites) throw input_error("partial_sum: max_rank outside [0, N]");
  return -0.5 * crossing_sum(links, block, max_rank);
}

double even_legged_reconstruct(const LatticeTableD& links, mask_t block, const LegFactorTable& lambda) {
  const int n = links.n_sites;
  for (int r = 2; r <= n; r += 2)
    for (int p = 1; p < r; ++p)
      if (!lambda.contains(r, p))
        throw input_error("even_legged_reconstruct: missing leg factor (" + std::to_string(r) + "," +
                          std::to_string(p) + ")");
  const mask_t comp = complement_mask(block, n);
  double sum = 0.0;
  const std::int64_t size = links.size();
  for (std::int64_t i = 0; i < size; ++i) {
    const auto m = static_cast<mask_t>(i);
    const int r = rank(m);
    if (r < 2 || r % 2 != 0) continue;
    if ((m & block) == 0 || (m & comp) == 0) continue;
    sum += lambda.value(r, rank(m & block)) * links[m];
  }
  return sum;
}

}  // namespace ehl
