#include "ehl/checks.hpp"

#include <algorithm>
#include <cmath>

#include "ehl/rng.hpp"

namespace ehl {

CheckSuite parse_suite(std::string_view name) {
  if (name == "all") return CheckSuite::all;
  if (name == "purity") return CheckSuite::purity;
  if (name == "pure-sum") return CheckSuite::pure_sum;
  if (name == "odd-omega") return CheckSuite::odd_omega;
  if (name == "reconstruction") return CheckSuite::reconstruction;
  if (name == "coarse-graining") return CheckSuite::coarse_graining;
  if (name == "growth") return CheckSuite::growth;
  if (name == "factorization") return CheckSuite::factorization;
  if (name == "gaussian-relations") return CheckSuite::gaussian_relations;
  throw input_error("unknown check suite: " + std::string(name));
}

bool CheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

CheckResult make_result(std::string name, double residual, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.max_residual = residual;
  r.tolerance = tol;
  r.pass = residual <= tol;
  r.detail = std::move(detail);
  return r;
}

double direct_block_entropy(const Subject& subject, mask_t block) {
  if (subject.gauss) return block_entropy_gaussian(*subject.gauss, block);
  return spectrum_entropy(reduced_spectrum_direct(*subject.psi, block));
}

CheckResult check_purity(const Subject& subject) {
  const int n = subject.spec.n_sites;
  // Large-side blocks recomputed without the mirror shortcut.
  std::vector<mask_t> sample;
  if (n <= 6) {
    for (mask_t m = 1; m < full_mask(n); ++m)
      if (2 * rank(m) >= n) sample.push_back(m);
  } else {
    SplitMix64 rng(42);
    for (int k = 0; k < 32; ++k) {
      mask_t m = static_cast<mask_t>(rng.next_u64()) & full_mask(n);
      if (m == 0) m = full_mask(n);
      if (2 * rank(m) < n) m = complement_mask(m, n);
      sample.push_back(m);
    }
  }
  double worst = 0.0;
  for (mask_t m : sample)
    worst = std::max(worst, std::abs(direct_block_entropy(subject, m) - subject.entropy[m]));
  return make_result("purity-mirror", worst, kIdentityTol,
                     std::to_string(sample.size()) + " large-side blocks recomputed directly");
}

CheckResult check_pure_sum(const Subject& subject, double tol) {
  return make_result("pure-sum", std::abs(subject.links.values.sum()), tol,
                     "sum of all links must vanish for a pure state");
}

CheckResult check_odd_omega(const Subject& subject, double tol) {
  return make_result("odd-omega", std::abs(subject.links[subject.links.omega()]), tol,
                     "full-system link vanishes for odd N");
}

void check_reconstruction(const Subject& subject, double tol, std::vector<CheckResult>& out) {
  double worst_bulk = 0.0, worst_edge = 0.0;
  for (mask_t m = 0; m <= subject.entropy.omega(); ++m) {
    worst_bulk = std::max(worst_bulk, std::abs(bulk_reconstruct(subject.links, m) - subject.entropy[m]));
    worst_edge = std::max(worst_edge, std::abs(edge_reconstruct(subject.links, m) - subject.entropy[m]));
  }
  out.push_back(make_result("bulk-reconstruction", worst_bulk, tol, "all blocks"));
  out.push_back(make_result("edge-reconstruction", worst_edge, tol, "all blocks"));
}

CheckResult check_coarse_graining(const Subject& subject, double tol) {
  const int n = subject.spec.n_sites;
  SplitMix64 rng(99);
  double worst = 0.0;
  int families = 0;
  int attempts = 0;
  while (families < 10 && attempts < 1000) {
    ++attempts;
    const int k = 2 + static_cast<int>(rng.next_u64() % 3ULL);
    if (k > n) continue;
    std::vector<mask_t> blocks(static_cast<std::size_t>(k), 0);
    for (int site = 0; site < n; ++site) {
      const auto pick = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(k + 1));
      if (pick > 0) blocks[static_cast<std::size_t>(pick - 1)] |= mask_t{1} << site;
    }
    if (std::any_of(blocks.begin(), blocks.end(), [](mask_t b) { return b == 0; })) continue;
    const CoarseGraining cg(blocks);
    const double a = coarse_grained_ehl(subject.entropy, cg);
    const double b = coarse_grained_ehl_fine_sum(subject.links, cg);
    worst = std::max(worst, std::abs(a - b));
    ++families;
  }
  return make_result("coarse-graining", worst, tol,
                     std::to_string(families) + " random disjoint families, two evaluation paths");
}

CheckResult check_growth(const Subject& subject, double tol) {
  const int n = subject.spec.n_sites;
  SplitMix64 rng(7);
  double worst = 0.0;
  for (int r = 2; r <= std::min(n, 5); ++r) {
    // one low-site block and one random block per rank
    std::vector<std::vector<int>> blocks;
    std::vector<int> low;
    for (int s = 1; s <= r; ++s) low.push_back(s);
    blocks.push_back(low);
    std::vector<int> sites;
    while (static_cast<int>(sites.size()) < r) {
      const int s = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
      if (std::find(sites.begin(), sites.end(), s) == sites.end()) sites.push_back(s);
    }
    blocks.push_back(sites);
    for (auto& order : blocks) {
      const double fwd = ehl_by_growth(subject.entropy, order);
      std::vector<int> rev(order.rbegin(), order.rend());
      const double bwd = ehl_by_growth(subject.entropy, rev);
      const mask_t m = mask_from_sites(order, n);
      worst = std::max({worst, std::abs(fwd - bwd), std::abs(fwd - subject.links[m])});
    }
  }
  return make_result("growth-order", worst, tol,
                     "site-by-site growth in two orders against the transform");
}

bool factorization_applicable(const ModelSpec& spec) {
  if (spec.model == "product" || spec.model == "product-pair" || spec.model == "bell-pairs") return true;
  if (spec.model == "dimerized" && spec.delta && std::abs(std::abs(*spec.delta) - 1.0) < 1e-12) return true;
  return false;
}

// Site pairs a fully dimerized chain decouples into. Sites not covered by any
// pair are free singletons with zero entropy.
std::vector<mask_t> dimer_pairs(const ModelSpec& spec) {
  const int n = spec.n_sites;
  std::vector<mask_t> pairs;
  const bool strong_odd_links = *spec.delta > 0;  // delta=+1: links 1-2, 3-4, ...
  if (strong_odd_links) {
    for (int i = 1; i + 1 <= n; i += 2) pairs.push_back((mask_t{3}) << (i - 1));
  } else {
    for (int i = 2; i + 1 <= n; i += 2) pairs.push_back((mask_t{3}) << (i - 1));
    if (spec.boundary == Boundary::periodic && n % 2 == 0)
      pairs.push_back((mask_t{1} << (n - 1)) | mask_t{1});  // wrap pair (n, 1)
  }
  return pairs;
}

CheckResult check_factorization(const Subject& subject, double tol) {
  const ModelSpec& spec = subject.spec;
  const int n = spec.n_sites;
  double worst = 0.0;
  std::string detail;

  if (spec.model == "product") {
    for (mask_t m = 1; m <= subject.links.omega(); ++m)
      worst = std::max(worst, std::abs(subject.links[m]));
    detail = "every link of a full product state vanishes";
  } else if (spec.model == "product-pair") {
    const mask_t cut = product_pair_cut(spec);
    const mask_t rest = complement_mask(cut, n);
    for (mask_t m = 1; m <= subject.links.omega(); ++m)
      if ((m & cut) && (m & rest)) worst = std::max(worst, std::abs(subject.links[m]));
    detail = "links crossing the product cut vanish";
  } else {
    // bell-pairs or fully dimerized chain: only links inside one pair survive
    std::vector<mask_t> pairs;
    if (spec.model == "bell-pairs") {
      for (int i = 1; i + 1 <= n; i += 2) pairs.push_back((mask_t{3}) << (i - 1));
    } else {
      pairs = dimer_pairs(spec);
    }
    for (mask_t m = 1; m <= subject.links.omega(); ++m) {
      const bool intra = std::any_of(pairs.begin(), pairs.end(),
                                     [m](mask_t p) { return is_subset(m, p); });
      if (!intra) worst = std::max(worst, std::abs(subject.links[m]));
    }
    detail = "links not contained in a single dimer vanish";
  }
  return make_result("factorization", worst, tol, std::move(detail));
}

void check_gaussian_relations(const Subject& subject, double tol, std::vector<CheckResult>& out) {
  const int n = subject.spec.n_sites;
  const double ln2 = std::log(2.0);
  double worst_single = 0.0, worst_pair = 0.0;
  for (int i = 0; i < n; ++i) {
    const mask_t mi = mask_t{1} << i;
    worst_single = std::max({worst_single, std::abs(subject.entropy[mi] - ln2),
                             std::abs(subject.links[mi] - ln2)});
    for (int j = i + 1; j < n; ++j) {
      const mask_t m = mi | (mask_t{1} << j);
      worst_pair = std::max(worst_pair, std::abs(subject.links[m] - (subject.entropy[m] - 2.0 * ln2)));
    }
  }
  out.push_back(make_result("half-filling-single-site", worst_single, tol, "S_i = J_i = ln 2"));
  out.push_back(make_result("half-filling-two-site", worst_pair, tol, "J_ij = S_ij - 2 ln 2"));
}

}  // namespace

CheckReport run_checks(CheckSuite suite, const ModelSpec& spec, const CheckTolerances& tol, int jobs) {
  const Subject subject = make_subject(spec, jobs, /*crosscheck_samples=*/8);
  const bool gaussian_half = subject.gauss && 2 * subject.gauss->n_occupied == spec.n_sites;

  CheckReport report;
  const bool all = suite == CheckSuite::all;
  auto wants = [&](CheckSuite s) { return all || suite == s; };

  if (wants(CheckSuite::purity)) report.checks.push_back(check_purity(subject));
  if (wants(CheckSuite::pure_sum)) report.checks.push_back(check_pure_sum(subject, tol.identity));
  if (wants(CheckSuite::odd_omega)) {
    if (spec.n_sites % 2 == 1)
      report.checks.push_back(check_odd_omega(subject, tol.identity));
    else if (!all)
      throw input_error("odd-omega check needs an odd number of sites");
  }
  if (wants(CheckSuite::reconstruction)) check_reconstruction(subject, tol.identity, report.checks);
  if (wants(CheckSuite::coarse_graining))
    report.checks.push_back(check_coarse_graining(subject, tol.identity));
  if (wants(CheckSuite::growth)) report.checks.push_back(check_growth(subject, tol.identity));
  if (wants(CheckSuite::factorization)) {
    if (factorization_applicable(spec))
      report.checks.push_back(check_factorization(subject, tol.identity));
    else if (!all)
      throw input_error("factorization check needs a product, bell-pairs, product-pair, or |delta| = 1 state");
  }
  if (wants(CheckSuite::gaussian_relations)) {
    if (gaussian_half)
      check_gaussian_relations(subject, tol.reconstruction, report.checks);
    else if (!all)
      throw input_error("gaussian-relations check needs a half-filled chain with even N");
  }
  return report;
}

}  // namespace ehl
