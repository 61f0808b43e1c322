#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "ehl/leg_factors.hpp"
#include "ehl/model_spec.hpp"
#include "ehl/pure_state.hpp"
#include "ehl/subset_lattice.hpp"

namespace ehl {

// Provenance block embedded in every output file. `config` is the resolved
// run configuration as a compact JSON string; `generated` is the one line a
// byte-compare is allowed to strip.
struct OutputMeta {
  std::string version;
  std::string config;
  std::uint64_t seed = 0;
  std::string unit = "nats";
  std::string generated;
};

OutputMeta make_meta(const std::string& config, std::uint64_t seed, bool bits);

std::string utc_timestamp();

// Writes via a sibling temp file and rename, so readers never observe a
// partial file. Parent directory must exist.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

std::string read_text(const std::filesystem::path& path);

// Lattice tables: {"kind", "n_sites", "unit", "values", "meta"}. Values are
// stored in the meta unit (divided by ln 2 for bits); in memory they are
// always nats. `kind` is "entropy" or "ehl".
std::string table_to_json(const LatticeTableD& table, const std::string& kind, const OutputMeta& meta);
LatticeTableD table_from_json(const std::string& text, std::string* kind_out = nullptr);

// States: {"n", "d", "amps_re", "amps_im"} in basis order, site 1 most
// significant. Reader validates d = 2, length, and normalization.
std::string state_to_json(const PureState& psi, const OutputMeta& meta);
PureState state_from_json(const std::string& text);

// Model specs: {"model", "n", "t0", "bc"} plus optional "delta", "seed",
// "filling".
std::string model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const std::string& text);

// Leg factors: {"entries": [{"rank", "p", "num", "den"}, ...],
// "diagnostics": [...], "meta"}.
std::string leg_factors_to_json(const LegFactorSolution& solution, const OutputMeta& meta);
LegFactorTable leg_factors_from_json(const std::string& text);

// Prepends "# key: value" provenance lines to a CSV body.
std::string csv_with_meta(const std::string& body, const OutputMeta& meta);

}  // namespace ehl
