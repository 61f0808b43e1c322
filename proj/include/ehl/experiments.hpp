#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ehl/ehl_core.hpp"
#include "ehl/model_spec.hpp"

namespace ehl {

// One row per state: the smallest block entropy against the full-system link.
struct Fact1Row {
  std::string model;
  int n = 0;
  double delta_or_seed = 0.0;
  double s_min = 0.0;
  double abs_j_omega = 0.0;
};

// One row per block of rank >= 3: the weakest internal mutual information
// against the block's link.
struct Fact2Row {
  std::string model;
  int n = 0;
  mask_t block = 0;
  int rank = 0;
  double i_min = 0.0;
  double j_value = 0.0;
};

// One row per block: entropy against link, for the sign/magnitude scatter.
struct MonogamyRow {
  std::string model;
  int n = 0;
  mask_t block = 0;
  int rank = 0;
  double s_value = 0.0;
  double j_value = 0.0;
};

struct SignRow {
  std::string model;
  int n = 0;
  int rank = 0;
  std::int64_t n_nonzero = 0;
  std::int64_t n_positive = 0;
  double fraction = 0.0;  // NaN when no nonzero links at this rank
};

struct RofellRow {
  std::string model;
  int n = 0;
  int ell = 0;
  double r_full = 0.0;
  double r_cutoff = 0.0;
};

// Per-rank sign statistics of a link table. A link counts as nonzero above
// `threshold`, as positive above +threshold.
struct RankSignFraction {
  int rank = 0;
  std::int64_t n_nonzero = 0;
  std::int64_t n_positive = 0;
  double fraction = 0.0;
};
std::vector<RankSignFraction> sign_fractions(const LatticeTableD& links,
                                             double threshold = kNonzeroEhlTol);

// Pearson correlation between the truncated edge reconstructions S_A(l) and
// the exact S_A, for l = 2..N. The full variant runs over all non-trivial
// blocks; the cutoff variant drops ranks {1, 2, N-2, N-1} on both ends of the
// mirror. Zero variance yields NaN.
std::vector<std::pair<int, double>> r_of_ell(const LatticeTableD& entropy, const LatticeTableD& links,
                                             bool cutoff);

// Unordered splits of a block into two nonempty disjoint halves, 2^(k-1) - 1
// of them for rank k.
std::vector<std::pair<mask_t, mask_t>> unordered_splits(mask_t block);

double pearson(const std::vector<double>& x, const std::vector<double>& y);  // NaN on zero variance

// The experiment state families.
std::vector<double> dimerized_sweep_deltas();  // 41 points in [-1, 1]
ModelSpec dimerized_spec(int n, double delta);
std::vector<ModelSpec> scatter_state_set(int n, std::uint64_t seed);  // dimer {0, .5, .8} + one random chain

// S_min vs |J_Omega| across the dimerized sweep (N = 4, 6, 8) and 200 random
// chains per size.
std::vector<Fact1Row> scan_fact1(std::uint64_t base_seed = 1, int jobs = 1);
// min split mutual information vs J_I for all blocks of rank >= 3, N = 8 set.
std::vector<Fact2Row> scan_fact2(std::uint64_t seed = 1, int jobs = 1);
// (S_I, J_I) for every block, N = 8 set.
std::vector<MonogamyRow> scan_monogamy(std::uint64_t seed = 1, int jobs = 1);
// per-rank sign fractions, N = 10 set.
std::vector<SignRow> scan_signs(std::uint64_t seed = 1, int jobs = 1);
// r(l) full and cutoff, N = 10 set.
std::vector<RofellRow> scan_rofell(std::uint64_t seed = 1, int jobs = 1);

// CSV bodies (header row plus data rows, no metadata comments).
std::string to_csv(const std::vector<Fact1Row>& rows);
std::string to_csv(const std::vector<Fact2Row>& rows);
std::string to_csv(const std::vector<MonogamyRow>& rows);
std::string to_csv(const std::vector<SignRow>& rows);
std::string to_csv(const std::vector<RofellRow>& rows);

}  // namespace ehl
