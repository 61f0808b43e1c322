#include "ehl/leg_factors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <numeric>
#include <string>

#include "ehl/ehl_core.hpp"
#include "ehl/pure_state.hpp"
#include "ehl/rng.hpp"

namespace ehl {

Rational snap_to_rational(double x, std::int64_t max_den) {
  if (max_den < 1) throw input_error("snap_to_rational: max_den must be positive");
  Rational best{std::llround(x), 1};
  double best_err = std::abs(x - best.value());
  for (std::int64_t d = 2; d <= max_den; ++d) {
    const std::int64_t num = std::llround(x * static_cast<double>(d));
    const double err = std::abs(x - static_cast<double>(num) / static_cast<double>(d));
    if (err < best_err * (1.0 - 1e-12)) {
      best = Rational{num, d};
      best_err = err;
    }
  }
  const std::int64_t g = std::gcd(std::abs(best.num), best.den);
  if (g > 1) {
    best.num /= g;
    best.den /= g;
  }
  return best;
}

void LegFactorTable::set(int rank, int inside, Rational v) {
  if (rank < 2 || rank % 2 != 0) throw input_error("LegFactorTable: rank must be even and >= 2");
  if (inside < 1 || inside > rank - 1) throw input_error("LegFactorTable: inside legs outside [1, rank-1]");
  entries_[Key{rank, inside}] = v;
}

bool LegFactorTable::contains(int rank, int inside) const {
  return entries_.count(Key{rank, inside}) != 0;
}

Rational LegFactorTable::rational(int rank, int inside) const {
  const auto it = entries_.find(Key{rank, inside});
  if (it == entries_.end())
    throw input_error("LegFactorTable: no entry for rank " + std::to_string(rank) + ", inside " +
                      std::to_string(inside));
  return it->second;
}

int LegFactorTable::max_rank() const {
  return entries_.empty() ? 0 : entries_.rbegin()->first.first;
}

bool verify_count_identity(int n_sites) {
  if (n_sites < 2) throw input_error("verify_count_identity: n_sites must be >= 2");
  std::uint64_t count = 0;
  for (int m = 1; 2 * m <= n_sites; ++m) count += binomial(n_sites, 2 * m);
  return count == (std::uint64_t{1} << (n_sites - 1)) - 1;
}

namespace {

constexpr std::int64_t kSnapMaxDen = 64;
constexpr double kSnapDistance = 1e-6;
constexpr double kSolveResidualGate = 1e-6;
constexpr double kSnappedResidualGate = 1e-8;
constexpr int kGuaranteedStages = 9;  // beyond this the reconstruction is conjecture

struct StageRow {
  double rhs = 0.0;                  // S_A minus the already-solved even ranks
  std::vector<double> coeff;         // one per folded unknown
};

// G_{r,p}(A) = sum over links I with |I| = r, |I into A| = p of J_I,
// accumulated for all (r, p) in one pass over the lattice.
void accumulate_g(const LatticeTableD& links, mask_t block, std::vector<std::vector<double>>& g) {
  const std::int64_t size = links.size();
  for (std::int64_t i = 0; i < size; ++i) {
    const auto m = static_cast<mask_t>(i);
    g[static_cast<std::size_t>(rank(m))][static_cast<std::size_t>(rank(m & block))] += links[m];
  }
}

}  // namespace

LegFactorSolution solve_leg_factors(int max_n, int states_per_n, std::uint64_t seed) {
  if (max_n < 2 || max_n > kMaxDenseTableSites)
    throw input_error("solve_leg_factors: max_n must be in [2, " + std::to_string(kMaxDenseTableSites) + "]");
  if (states_per_n < 2) throw input_error("solve_leg_factors: need at least 2 states per stage");

  LegFactorSolution sol;
  SplitMix64 seeder(seed);

  for (int n = 2; n <= max_n; ++n) {
    std::vector<LatticeTableD> entropy_tables, link_tables;
    for (int k = 0; k < states_per_n; ++k) {
      const PureState psi = random_state(n, seeder.next_u64());
      entropy_tables.push_back(entropy_table_dense(psi));
      link_tables.push_back(ehl_table(entropy_tables.back()));
    }

    StageDiagnostics diag;
    diag.n_sites = n;
    const bool gated = n <= kGuaranteedStages;

    if (n % 2 == 0) {
      diag.solved = true;
      const int unknowns = n / 2;  // Lambda_{n,q} with q and n-q folded together

      std::vector<StageRow> rows;
      for (int k = 0; k < states_per_n; ++k) {
        const auto& s = entropy_tables[static_cast<std::size_t>(k)];
        const auto& j = link_tables[static_cast<std::size_t>(k)];
        for (mask_t a = 1; a < full_mask(n); ++a) {
          std::vector<std::vector<double>> g(static_cast<std::size_t>(n + 1),
                                             std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
          accumulate_g(j, a, g);
          StageRow row;
          row.rhs = s[a];
          for (int r = 2; r < n; r += 2)
            for (int p = 1; p < r; ++p)
              row.rhs -= sol.table.value(r, p) * g[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)];
          row.coeff.resize(static_cast<std::size_t>(unknowns), 0.0);
          for (int q = 1; q <= unknowns; ++q) {
            double c = g[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
            if (q != n - q) c += g[static_cast<std::size_t>(n)][static_cast<std::size_t>(n - q)];
            row.coeff[static_cast<std::size_t>(q - 1)] = c;
          }
          rows.push_back(std::move(row));
        }
      }
      diag.rows = static_cast<std::int64_t>(rows.size());

      Eigen::MatrixXd ata = Eigen::MatrixXd::Zero(unknowns, unknowns);
      Eigen::VectorXd atb = Eigen::VectorXd::Zero(unknowns);
      for (const auto& row : rows) {
        for (int i = 0; i < unknowns; ++i) {
          atb[i] += row.coeff[static_cast<std::size_t>(i)] * row.rhs;
          for (int jj = 0; jj < unknowns; ++jj)
            ata(i, jj) += row.coeff[static_cast<std::size_t>(i)] * row.coeff[static_cast<std::size_t>(jj)];
        }
      }
      const Eigen::VectorXd x = ata.ldlt().solve(atb);

      auto max_row_residual = [&](auto&& value_of) {
        double worst = 0.0;
        for (const auto& row : rows) {
          double fit = 0.0;
          for (int i = 0; i < unknowns; ++i) fit += row.coeff[static_cast<std::size_t>(i)] * value_of(i);
          worst = std::max(worst, std::abs(row.rhs - fit));
        }
        return worst;
      };

      diag.least_squares_residual = max_row_residual([&](int i) { return x[i]; });
      if (gated && diag.least_squares_residual > kSolveResidualGate)
        throw numeric_error("solve_leg_factors: stage " + std::to_string(n) + " residual " +
                            std::to_string(diag.least_squares_residual) + " exceeds " +
                            std::to_string(kSolveResidualGate));

      std::vector<Rational> snapped(static_cast<std::size_t>(unknowns));
      for (int q = 1; q <= unknowns; ++q) {
        const double raw = x[q - 1];
        Rational r = snap_to_rational(raw, gated ? kSnapMaxDen : 4096);
        if (gated && std::abs(raw - r.value()) > kSnapDistance)
          throw numeric_error("solve_leg_factors: stage " + std::to_string(n) + " value " +
                              std::to_string(raw) + " does not snap to a small rational");
        snapped[static_cast<std::size_t>(q - 1)] = r;
      }
      for (int q = 1; q <= unknowns; ++q) {
        sol.table.set(n, q, snapped[static_cast<std::size_t>(q - 1)]);
        if (q != n - q) sol.table.set(n, n - q, snapped[static_cast<std::size_t>(q - 1)]);
      }

      diag.snapped_residual =
          max_row_residual([&](int i) { return snapped[static_cast<std::size_t>(i)].value(); });
      if (gated && diag.snapped_residual > kSnappedResidualGate)
        throw numeric_error("solve_leg_factors: stage " + std::to_string(n) + " snapped residual " +
                            std::to_string(diag.snapped_residual) + " exceeds " +
                            std::to_string(kSnappedResidualGate));
    } else {
      // Odd stage: no new unknowns, re-verify the reconstruction as is.
      double worst = 0.0;
      std::int64_t rows = 0;
      for (int k = 0; k < states_per_n; ++k) {
        const auto& s = entropy_tables[static_cast<std::size_t>(k)];
        const auto& j = link_tables[static_cast<std::size_t>(k)];
        for (mask_t a = 1; a < full_mask(n); ++a) {
          worst = std::max(worst, std::abs(s[a] - even_legged_reconstruct(j, a, sol.table)));
          ++rows;
        }
      }
      diag.rows = rows;
      diag.least_squares_residual = worst;
      diag.snapped_residual = worst;
      if (gated && worst > kSnappedResidualGate)
        throw numeric_error("solve_leg_factors: verification at n = " + std::to_string(n) +
                            " failed with residual " + std::to_string(worst));
    }
    sol.diagnostics.push_back(diag);
  }
  return sol;
}

}  // namespace ehl
