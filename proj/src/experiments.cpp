#include "ehl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ehl/parallel.hpp"

namespace ehl {

std::vector<RankSignFraction> sign_fractions(const LatticeTableD& links, double threshold) {
  const int n = links.n_sites;
  std::vector<RankSignFraction> out;
  for (int r = 1; r <= n; ++r) out.push_back({r, 0, 0, 0.0});
  for (mask_t m = 1; m <= links.omega(); ++m) {
    auto& row = out[static_cast<std::size_t>(rank(m) - 1)];
    const double j = links[m];
    if (std::abs(j) > threshold) {
      ++row.n_nonzero;
      if (j > threshold) ++row.n_positive;
    }
  }
  for (auto& row : out)
    row.fraction = row.n_nonzero == 0 ? std::numeric_limits<double>::quiet_NaN()
                                      : static_cast<double>(row.n_positive) / static_cast<double>(row.n_nonzero);
  return out;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) throw input_error("pearson: mismatched or empty series");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::pair<int, double>> r_of_ell(const LatticeTableD& entropy, const LatticeTableD& links,
                                             bool cutoff) {
  const int n = entropy.n_sites;
  std::vector<mask_t> blocks;
  for (mask_t m = 1; m < entropy.omega(); ++m) {
    const int r = rank(m);
    if (cutoff && (r <= 2 || r >= n - 2)) continue;
    blocks.push_back(m);
  }
  std::vector<std::pair<int, double>> out;
  if (blocks.empty()) {
    for (int ell = 2; ell <= n; ++ell) out.emplace_back(ell, std::numeric_limits<double>::quiet_NaN());
    return out;
  }
  std::vector<double> exact;
  exact.reserve(blocks.size());
  for (mask_t m : blocks) exact.push_back(entropy[m]);
  for (int ell = 2; ell <= n; ++ell) {
    std::vector<double> approx;
    approx.reserve(blocks.size());
    for (mask_t m : blocks) approx.push_back(partial_sum(links, m, ell));
    out.emplace_back(ell, pearson(approx, exact));
  }
  return out;
}

std::vector<std::pair<mask_t, mask_t>> unordered_splits(mask_t block) {
  if (rank(block) < 2) throw input_error("unordered_splits: need rank >= 2");
  const mask_t anchor = block & (~block + 1);  // lowest set bit stays on the left side
  std::vector<std::pair<mask_t, mask_t>> out;
  for_each_submask(block, [&](mask_t s) {
    if ((s & anchor) && s != block) out.emplace_back(s, block ^ s);
  });
  return out;
}

std::vector<double> dimerized_sweep_deltas() {
  std::vector<double> d;
  for (int i = 0; i <= 40; ++i) d.push_back(-1.0 + 0.05 * i);
  return d;
}

ModelSpec dimerized_spec(int n, double delta) {
  ModelSpec s;
  s.model = "dimerized";
  s.n_sites = n;
  s.delta = delta;
  // An open even chain at delta = -1 carries two decoupled edge sites, so its
  // half-filled ground state is degenerate. The wrapped chain realizes the
  // same dimer limit (it is the delta -> -1 limit of the open chain) with a
  // unique ground state.
  if (n % 2 == 0 && delta <= -1.0 + 1e-12) s.boundary = Boundary::periodic;
  return s;
}

std::vector<ModelSpec> scatter_state_set(int n, std::uint64_t seed) {
  std::vector<ModelSpec> set;
  for (double d : {0.0, 0.5, 0.8}) set.push_back(dimerized_spec(n, d));
  ModelSpec r;
  r.model = "random-hopping";
  r.n_sites = n;
  r.seed = seed;
  set.push_back(r);
  return set;
}

namespace {

// Degenerate Fermi levels abort a ground-state build; random chains retry with
// a deterministically shifted seed so the scan itself never dies. The row
// records the seed actually used.
Subject make_random_chain_subject(int n, std::uint64_t seed, std::uint64_t* used_seed, int jobs) {
  std::uint64_t s = seed;
  for (int attempt = 0; attempt < 8; ++attempt) {
    ModelSpec spec;
    spec.model = "random-hopping";
    spec.n_sites = n;
    spec.seed = s;
    try {
      Subject subject = make_subject(spec, jobs, /*crosscheck_samples=*/0);
      if (used_seed) *used_seed = s;
      return subject;
    } catch (const numeric_error&) {
      s += 1000003;
    }
  }
  throw numeric_error("make_random_chain_subject: persistent Fermi degeneracy");
}

Fact1Row fact1_row(const Subject& subject, double delta_or_seed) {
  const auto& s = subject.entropy;
  double s_min = std::numeric_limits<double>::infinity();
  for (mask_t m = 1; m < s.omega(); ++m) s_min = std::min(s_min, s[m]);
  Fact1Row row;
  row.model = subject.spec.model;
  row.n = subject.spec.n_sites;
  row.delta_or_seed = delta_or_seed;
  row.s_min = s_min;
  row.abs_j_omega = std::abs(subject.links[subject.links.omega()]);
  return row;
}

constexpr int kFact1Sizes[3] = {4, 6, 8};
constexpr int kRandomSamples = 200;

}  // namespace

std::vector<Fact1Row> scan_fact1(std::uint64_t base_seed, int jobs) {
  const std::vector<double> deltas = dimerized_sweep_deltas();
  std::vector<Fact1Row> rows(3 * deltas.size() + 3 * kRandomSamples);

  const std::int64_t dimer_total = static_cast<std::int64_t>(3 * deltas.size());
  parallel_for(0, dimer_total, jobs, [&](std::int64_t i) {
    const int n = kFact1Sizes[i / static_cast<std::int64_t>(deltas.size())];
    const double delta = deltas[static_cast<std::size_t>(i) % deltas.size()];
    const Subject subject = make_subject(dimerized_spec(n, delta), 1, 0);
    rows[static_cast<std::size_t>(i)] = fact1_row(subject, delta);
  });
  parallel_for(0, 3 * kRandomSamples, jobs, [&](std::int64_t i) {
    const int n = kFact1Sizes[i / kRandomSamples];
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i % kRandomSamples);
    std::uint64_t used = seed;
    const Subject subject = make_random_chain_subject(n, seed, &used, 1);
    rows[static_cast<std::size_t>(dimer_total + i)] = fact1_row(subject, static_cast<double>(used));
  });
  return rows;
}

std::vector<Fact2Row> scan_fact2(std::uint64_t seed, int jobs) {
  std::vector<Fact2Row> rows;
  for (const ModelSpec& spec : scatter_state_set(8, seed)) {
    const Subject subject = make_subject(spec, jobs, 0);
    const int n = spec.n_sites;
    for (mask_t m = 1; m <= subject.links.omega(); ++m) {
      if (rank(m) < 3) continue;
      double i_min = std::numeric_limits<double>::infinity();
      for (const auto& [a, b] : unordered_splits(m))
        i_min = std::min(i_min, mutual_information(subject.entropy, a, b));
      Fact2Row row;
      row.model = spec.model;
      row.n = n;
      row.block = m;
      row.rank = rank(m);
      row.i_min = i_min;
      row.j_value = subject.links[m];
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<MonogamyRow> scan_monogamy(std::uint64_t seed, int jobs) {
  std::vector<MonogamyRow> rows;
  for (const ModelSpec& spec : scatter_state_set(8, seed)) {
    const Subject subject = make_subject(spec, jobs, 0);
    for (mask_t m = 1; m <= subject.links.omega(); ++m) {
      MonogamyRow row;
      row.model = spec.model;
      row.n = spec.n_sites;
      row.block = m;
      row.rank = rank(m);
      row.s_value = subject.entropy[m];
      row.j_value = subject.links[m];
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<SignRow> scan_signs(std::uint64_t seed, int jobs) {
  std::vector<SignRow> rows;
  for (const ModelSpec& spec : scatter_state_set(10, seed)) {
    const Subject subject = make_subject(spec, jobs, 0);
    for (const RankSignFraction& f : sign_fractions(subject.links)) {
      SignRow row;
      row.model = spec.model;
      row.n = spec.n_sites;
      row.rank = f.rank;
      row.n_nonzero = f.n_nonzero;
      row.n_positive = f.n_positive;
      row.fraction = f.fraction;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<RofellRow> scan_rofell(std::uint64_t seed, int jobs) {
  std::vector<RofellRow> rows;
  for (const ModelSpec& spec : scatter_state_set(10, seed)) {
    const Subject subject = make_subject(spec, jobs, 0);
    const auto full = r_of_ell(subject.entropy, subject.links, false);
    const auto cut = r_of_ell(subject.entropy, subject.links, true);
    for (std::size_t i = 0; i < full.size(); ++i) {
      RofellRow row;
      row.model = spec.model;
      row.n = spec.n_sites;
      row.ell = full[i].first;
      row.r_full = full[i].second;
      row.r_cutoff = cut[i].second;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string to_csv(const std::vector<Fact1Row>& rows) {
  std::string out = "model,n,delta_or_seed,s_min,abs_j_omega\n";
  for (const auto& r : rows)
    out += r.model + "," + std::to_string(r.n) + "," + fmt(r.delta_or_seed) + "," + fmt(r.s_min) + "," +
           fmt(r.abs_j_omega) + "\n";
  return out;
}

std::string to_csv(const std::vector<Fact2Row>& rows) {
  std::string out = "model,n,block_mask,rank,i_min,j_value\n";
  for (const auto& r : rows)
    out += r.model + "," + std::to_string(r.n) + "," + std::to_string(r.block) + "," +
           std::to_string(r.rank) + "," + fmt(r.i_min) + "," + fmt(r.j_value) + "\n";
  return out;
}

std::string to_csv(const std::vector<MonogamyRow>& rows) {
  std::string out = "model,n,block_mask,rank,s_value,j_value\n";
  for (const auto& r : rows)
    out += r.model + "," + std::to_string(r.n) + "," + std::to_string(r.block) + "," +
           std::to_string(r.rank) + "," + fmt(r.s_value) + "," + fmt(r.j_value) + "\n";
  return out;
}

std::string to_csv(const std::vector<SignRow>& rows) {
  std::string out = "model,n,rank,n_nonzero,n_positive,fraction\n";
  for (const auto& r : rows)
    out += r.model + "," + std::to_string(r.n) + "," + std::to_string(r.rank) + "," +
           std::to_string(r.n_nonzero) + "," + std::to_string(r.n_positive) + "," + fmt(r.fraction) + "\n";
  return out;
}

std::string to_csv(const std::vector<RofellRow>& rows) {
  std::string out = "model,n,ell,r_full,r_cutoff\n";
  for (const auto& r : rows)
    out += r.model + "," + std::to_string(r.n) + "," + std::to_string(r.ell) + "," + fmt(r.r_full) + "," +
           fmt(r.r_cutoff) + "\n";
  return out;
}

}  // namespace ehl
