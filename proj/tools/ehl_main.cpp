#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "ehl/checks.hpp"
#include "ehl/errors.hpp"
#include "ehl/experiments.hpp"
#include "ehl/model_spec.hpp"
#include "ehl/parallel.hpp"
#include "ehl/table_io.hpp"
#include "ehl/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::uint64_t env_seed_default() {
  const char* env = std::getenv("EHL_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (!end || *end != '\0') throw ehl::input_error("EHL_SEED is not an unsigned integer");
  return v;
}

bool model_is_seeded(const std::string& model) {
  return model == "random-hopping" || model == "random-dense" || model == "product" ||
         model == "product-pair";
}

// Model flags shared by the subcommands that build a state.
struct ModelOptions {
  std::string model = "dimerized";
  int n = 8;
  double t0 = 1.0;
  std::optional<double> delta;
  std::string bc = "open";
  std::optional<int> filling;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model,
                    "dimerized | random-hopping | ghz | w | bell-pairs | product | product-pair | "
                    "random-dense")
        ->capture_default_str();
    cmd->add_option("--n", n, "number of sites")->capture_default_str();
    cmd->add_option("--t0", t0, "hopping scale")->capture_default_str();
    cmd->add_option("--delta", delta, "dimerization in [-1, 1]");
    cmd->add_option("--bc", bc, "open | periodic")->capture_default_str();
    cmd->add_option("--filling", filling, "occupied modes (default: half filling)");
  }

  ehl::ModelSpec resolve(std::uint64_t seed) const {
    ehl::ModelSpec spec;
    spec.model = model;
    spec.n_sites = n;
    spec.t0 = t0;
    spec.delta = delta;
    spec.boundary = ehl::parse_boundary(bc);
    spec.filling = filling;
    if (model_is_seeded(model)) spec.seed = seed;
    return spec;
  }
};

std::string run_config(const std::string& cmd, const json& fields) {
  json j = fields;
  j["cmd"] = cmd;
  return j.dump();
}

int cmd_entropies(const ModelOptions& opts, const std::string& state_file, const std::string& out,
                  const std::string& state_out, std::uint64_t seed, bool bits, int jobs) {
  ehl::LatticeTableD table(1);
  json config_fields{{"out", out}, {"bits", bits}, {"jobs", jobs}};
  std::optional<ehl::PureState> psi;
  if (!state_file.empty()) {
    psi = ehl::state_from_json(ehl::read_text(state_file));
    if (psi->n_sites > ehl::kMaxDenseTableSites)
      throw ehl::input_error("state too large for a dense table");
    table = ehl::entropy_table_dense(*psi, jobs);
    config_fields["state_file"] = state_file;
  } else {
    const ehl::ModelSpec spec = opts.resolve(seed);
    ehl::Subject subject = ehl::make_subject(spec, jobs, /*crosscheck_samples=*/8);
    table = std::move(subject.entropy);
    psi = std::move(subject.psi);
    config_fields["model"] = json::parse(ehl::model_spec_to_json(spec));
  }
  const ehl::OutputMeta meta = ehl::make_meta(run_config("entropies", config_fields), seed, bits);
  ehl::atomic_write_text(out, ehl::table_to_json(table, "entropy", meta));
  std::cout << "wrote " << out << "\n";
  if (!state_out.empty()) {
    if (!psi) throw ehl::input_error("--state-out requires a dense statevector model");
    ehl::atomic_write_text(state_out, ehl::state_to_json(*psi, meta));
    std::cout << "wrote " << state_out << "\n";
  }
  return kExitOk;
}

int cmd_transform(const std::string& in, const std::string& out, bool inverse, std::uint64_t seed,
                  bool bits) {
  std::string kind;
  ehl::LatticeTableD table = ehl::table_from_json(ehl::read_text(in), &kind);
  if (!inverse && kind != "entropy")
    throw ehl::input_error("forward transform expects an entropy table, got kind=" + kind);
  if (inverse && kind != "ehl")
    throw ehl::input_error("inverse transform expects an ehl table, got kind=" + kind);
  if (inverse)
    ehl::zeta_inplace(table);
  else
    ehl::signed_moebius_inplace(table);
  const std::string out_kind = inverse ? "entropy" : "ehl";
  const ehl::OutputMeta meta = ehl::make_meta(
      run_config("transform", json{{"in", in}, {"out", out}, {"inverse", inverse}, {"bits", bits}}),
      seed, bits);
  ehl::atomic_write_text(out, ehl::table_to_json(table, out_kind, meta));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_check(const ModelOptions& opts, const std::string& suite_name, std::uint64_t seed,
              double tol_identity, double tol_recon, int jobs) {
  const ehl::CheckSuite suite = ehl::parse_suite(suite_name);
  const ehl::ModelSpec spec = opts.resolve(seed);
  ehl::CheckTolerances tol;
  tol.identity = tol_identity;
  tol.reconstruction = tol_recon;
  const ehl::CheckReport report = ehl::run_checks(suite, spec, tol, jobs);
  for (const auto& c : report.checks) {
    std::printf("%s %-26s max %.3e  tol %.1e%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.max_residual, c.tolerance, c.detail.empty() ? "" : "  ", c.detail.c_str());
  }
  if (report.checks.empty()) {
    std::cout << "no applicable checks\n";
    return kExitOk;
  }
  if (report.all_pass()) {
    std::cout << "all " << report.checks.size() << " checks passed\n";
    return kExitOk;
  }
  std::cout << "check failure\n";
  return kExitCheckFailure;
}

int cmd_legfactors(int max_n, int states_per_n, std::uint64_t seed, const std::string& out,
                   bool bits) {
  const ehl::LegFactorSolution solution = ehl::solve_leg_factors(max_n, states_per_n, seed);
  for (const auto& d : solution.diagnostics) {
    std::printf("n=%-2d %s rows=%lld residual=%.3e%s\n", d.n_sites,
                d.solved ? "solved  " : "verified", static_cast<long long>(d.rows),
                d.solved ? d.snapped_residual : d.least_squares_residual,
                d.n_sites > 9 ? "  (unguaranteed range)" : "");
  }
  const ehl::OutputMeta meta = ehl::make_meta(
      run_config("legfactors",
                 json{{"max_n", max_n}, {"states_per_n", states_per_n}, {"out", out}}),
      seed, bits);
  ehl::atomic_write_text(out, ehl::leg_factors_to_json(solution, meta));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_experiment(const std::string& fig, std::uint64_t seed, const std::string& out, bool bits,
                   int jobs) {
  const double scale = bits ? std::numbers::ln2 : 1.0;
  std::string body;
  if (fig == "fact1") {
    auto rows = ehl::scan_fact1(seed, jobs);
    for (auto& r : rows) {
      r.s_min /= scale;
      r.abs_j_omega /= scale;
    }
    body = ehl::to_csv(rows);
  } else if (fig == "fact2") {
    auto rows = ehl::scan_fact2(seed, jobs);
    for (auto& r : rows) {
      r.i_min /= scale;
      r.j_value /= scale;
    }
    body = ehl::to_csv(rows);
  } else if (fig == "monogamy") {
    auto rows = ehl::scan_monogamy(seed, jobs);
    for (auto& r : rows) {
      r.s_value /= scale;
      r.j_value /= scale;
    }
    body = ehl::to_csv(rows);
  } else if (fig == "signs") {
    body = ehl::to_csv(ehl::scan_signs(seed, jobs));
  } else if (fig == "rofell") {
    body = ehl::to_csv(ehl::scan_rofell(seed, jobs));
  } else {
    throw ehl::input_error("unknown experiment: " + fig +
                           " (expected fact1 | fact2 | monogamy | signs | rofell)");
  }
  const ehl::OutputMeta meta = ehl::make_meta(
      run_config("experiment", json{{"fig", fig}, {"out", out}, {"bits", bits}}), seed, bits);
  ehl::atomic_write_text(out, ehl::csv_with_meta(body, meta));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement hyperlink tables, checks, and experiments"};
  app.set_version_flag("--version", ehl::kVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  bool seed_given = false;
  bool bits = false;
  int jobs = 0;  // 0: decide per subcommand

  ModelOptions ent_opts, chk_opts;

  auto add_common = [&](CLI::App* cmd, bool with_bits) {
    cmd->add_option("--seed", seed, "RNG seed (fallback: EHL_SEED, then 1)")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--jobs", jobs, "worker threads (default: available cores)");
    if (with_bits) cmd->add_flag("--bits", bits, "serialize entropic values in bits");
  };

  auto* ent = app.add_subcommand("entropies", "compute the 2^N block entropy table of a state");
  ent_opts.attach(ent);
  std::string ent_state_file, ent_out, ent_state_out;
  ent->add_option("--state-file", ent_state_file, "read a dense state JSON instead of a model");
  ent->add_option("--out", ent_out, "output table JSON")->required();
  ent->add_option("--state-out", ent_state_out, "also write the built statevector JSON");
  add_common(ent, true);

  auto* tr = app.add_subcommand("transform", "entropy table -> EHL table (or back with --inverse)");
  std::string tr_in, tr_out;
  bool tr_inverse = false;
  tr->add_option("--in", tr_in, "input table JSON")->required();
  tr->add_option("--out", tr_out, "output table JSON")->required();
  tr->add_flag("--inverse", tr_inverse, "apply the inverse (zeta) transform");
  add_common(tr, true);

  auto* chk = app.add_subcommand("check", "run identity checks against a state");
  chk_opts.attach(chk);
  std::string chk_suite = "all";
  double tol_identity = ehl::kIdentityTol;
  double tol_recon = ehl::kReconstructionTol;
  chk->add_option("--suite", chk_suite,
                  "all | purity | pure-sum | odd-omega | reconstruction | coarse-graining | growth "
                  "| factorization | gaussian-relations")
      ->capture_default_str();
  chk->add_option("--tol-identity", tol_identity, "identity tolerance")->capture_default_str();
  chk->add_option("--tol-recon", tol_recon, "reconstruction tolerance")->capture_default_str();
  add_common(chk, false);

  auto* leg = app.add_subcommand("legfactors", "solve the even-rank reconstruction coefficients");
  int leg_max_n = 9, leg_states = 3;
  std::string leg_out;
  leg->add_option("--max-n", leg_max_n, "largest system size (2..12; >9 is unguaranteed)")
      ->capture_default_str();
  leg->add_option("--states-per-n", leg_states, "random states per size")->capture_default_str();
  leg->add_option("--out", leg_out, "output JSON")->required();
  add_common(leg, false);

  auto* exp = app.add_subcommand("experiment", "emit a scatter dataset as CSV");
  std::string exp_fig, exp_out;
  exp->add_option("--fig", exp_fig, "fact1 | fact2 | monogamy | signs | rofell")->required();
  exp->add_option("--out", exp_out, "output CSV")->required();
  add_common(exp, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (!seed_given) seed = env_seed_default();
    if (jobs <= 0) jobs = ehl::default_jobs();
    if (ent->parsed()) return cmd_entropies(ent_opts, ent_state_file, ent_out, ent_state_out, seed, bits, jobs);
    if (tr->parsed()) return cmd_transform(tr_in, tr_out, tr_inverse, seed, bits);
    if (chk->parsed()) return cmd_check(chk_opts, chk_suite, seed, tol_identity, tol_recon, jobs);
    if (leg->parsed()) return cmd_legfactors(leg_max_n, leg_states, seed, leg_out, bits);
    if (exp->parsed()) return cmd_experiment(exp_fig, seed, exp_out, bits, jobs);
    throw ehl::input_error("no subcommand");
  } catch (const ehl::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ehl::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
