#include "ehl/table_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>

#include "ehl/errors.hpp"
#include "ehl/version.hpp"

namespace ehl {

using nlohmann::json;

OutputMeta make_meta(const std::string& config, std::uint64_t seed, bool bits) {
  OutputMeta meta;
  meta.version = kVersion;
  meta.config = config;
  meta.seed = seed;
  meta.unit = bits ? "bits" : "nats";
  meta.generated = utc_timestamp();
  return meta;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot open for writing: " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw input_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw input_error("rename failed: " + path.string() + ": " + ec.message());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw input_error("read failed: " + path.string());
  return text;
}

namespace {

json meta_to_json(const OutputMeta& meta) {
  return json{{"version", meta.version},
              {"config", meta.config},
              {"seed", meta.seed},
              {"unit", meta.unit},
              {"generated", meta.generated}};
}

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error(std::string("malformed JSON in ") + what);
  return j;
}

double unit_scale(const std::string& unit) {
  if (unit == "nats") return 1.0;
  if (unit == "bits") return std::numbers::ln2;
  throw input_error("unknown unit: " + unit);
}

}  // namespace

std::string table_to_json(const LatticeTableD& table, const std::string& kind, const OutputMeta& meta) {
  if (kind != "entropy" && kind != "ehl") throw input_error("table kind must be entropy or ehl");
  const double scale = unit_scale(meta.unit);
  std::vector<double> values(table.values.data(), table.values.data() + table.values.size());
  if (scale != 1.0)
    for (double& v : values) v /= scale;
  json j{{"kind", kind},
         {"n_sites", table.n_sites},
         {"unit", meta.unit},
         {"values", values},
         {"meta", meta_to_json(meta)}};
  return j.dump(2) + "\n";
}

LatticeTableD table_from_json(const std::string& text, std::string* kind_out) {
  const json j = parse(text, "table file");
  if (!j.contains("n_sites") || !j.contains("values")) throw input_error("table file missing fields");
  const int n = j.at("n_sites").get<int>();
  LatticeTableD table(n);
  const auto& values = j.at("values");
  if (!values.is_array() || values.size() != static_cast<std::size_t>(table.values.size()))
    throw input_error("table values length does not match n_sites");
  const double scale = unit_scale(j.value("unit", "nats"));
  for (std::size_t i = 0; i < values.size(); ++i)
    table.values[static_cast<Eigen::Index>(i)] = values[i].get<double>() * scale;
  if (kind_out) *kind_out = j.value("kind", "entropy");
  return table;
}

std::string state_to_json(const PureState& psi, const OutputMeta& meta) {
  std::vector<double> re(psi.amplitudes.size()), im(psi.amplitudes.size());
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    re[static_cast<std::size_t>(i)] = psi.amplitudes[i].real();
    im[static_cast<std::size_t>(i)] = psi.amplitudes[i].imag();
  }
  json j{{"n", psi.n_sites}, {"d", psi.local_dim}, {"amps_re", re}, {"amps_im", im},
         {"meta", meta_to_json(meta)}};
  return j.dump(2) + "\n";
}

PureState state_from_json(const std::string& text) {
  const json j = parse(text, "state file");
  for (const char* key : {"n", "d", "amps_re", "amps_im"})
    if (!j.contains(key)) throw input_error(std::string("state file missing field: ") + key);
  PureState psi;
  psi.n_sites = j.at("n").get<int>();
  psi.local_dim = j.at("d").get<int>();
  if (psi.local_dim != 2) throw input_error("only local dimension 2 is supported");
  if (psi.n_sites < 1 || psi.n_sites > kMaxBuildSites) throw input_error("state size out of range");
  const auto& re = j.at("amps_re");
  const auto& im = j.at("amps_im");
  const std::size_t dim = std::size_t{1} << psi.n_sites;
  if (!re.is_array() || !im.is_array() || re.size() != dim || im.size() != dim)
    throw input_error("amplitude arrays must have length 2^n");
  psi.amplitudes.resize(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    psi.amplitudes[static_cast<Eigen::Index>(i)] = {re[i].get<double>(), im[i].get<double>()};
  const double norm2 = psi.amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) throw input_error("state is not normalized");
  return psi;
}

std::string model_spec_to_json(const ModelSpec& spec) {
  json j{{"model", spec.model},
         {"n", spec.n_sites},
         {"t0", spec.t0},
         {"bc", boundary_name(spec.boundary)}};
  if (spec.delta) j["delta"] = *spec.delta;
  if (spec.seed) j["seed"] = *spec.seed;
  if (spec.filling) j["filling"] = *spec.filling;
  return j.dump();
}

ModelSpec model_spec_from_json(const std::string& text) {
  const json j = parse(text, "model spec");
  ModelSpec spec;
  spec.model = j.value("model", spec.model);
  spec.n_sites = j.value("n", spec.n_sites);
  spec.t0 = j.value("t0", spec.t0);
  if (j.contains("bc")) spec.boundary = parse_boundary(j.at("bc").get<std::string>());
  if (j.contains("delta")) spec.delta = j.at("delta").get<double>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("filling")) spec.filling = j.at("filling").get<int>();
  return spec;
}

std::string leg_factors_to_json(const LegFactorSolution& solution, const OutputMeta& meta) {
  json entries = json::array();
  for (const auto& [key, v] : solution.table.entries())
    entries.push_back(json{{"rank", key.first}, {"p", key.second}, {"num", v.num}, {"den", v.den}});
  json diagnostics = json::array();
  for (const StageDiagnostics& d : solution.diagnostics)
    diagnostics.push_back(json{{"n_sites", d.n_sites},
                               {"solved", d.solved},
                               {"rows", d.rows},
                               {"least_squares_residual", d.least_squares_residual},
                               {"snapped_residual", d.snapped_residual}});
  json j{{"entries", entries}, {"diagnostics", diagnostics}, {"meta", meta_to_json(meta)}};
  return j.dump(2) + "\n";
}

LegFactorTable leg_factors_from_json(const std::string& text) {
  const json j = parse(text, "leg factor file");
  if (!j.contains("entries")) throw input_error("leg factor file missing entries");
  LegFactorTable table;
  for (const auto& e : j.at("entries")) {
    Rational v{e.at("num").get<std::int64_t>(), e.at("den").get<std::int64_t>()};
    table.set(e.at("rank").get<int>(), e.at("p").get<int>(), v);
  }
  return table;
}

std::string csv_with_meta(const std::string& body, const OutputMeta& meta) {
  std::string out;
  out += "# version: " + meta.version + "\n";
  out += "# config: " + meta.config + "\n";
  out += "# seed: " + std::to_string(meta.seed) + "\n";
  out += "# unit: " + meta.unit + "\n";
  out += "# generated: " + meta.generated + "\n";
  out += body;
  return out;
}

}  // namespace ehl
