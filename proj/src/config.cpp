#include "pam/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

#include "json.hpp"

#include "pam/csv.hpp"
#include "pam/errors.hpp"
#include "pam/hash.hpp"
#include "pam/version.hpp"

namespace pam {
namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  return j;
}

std::string read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
  std::fclose(f);
  return text;
}

// fail-fast: any key outside the schema is an error
void check_keys(const json& j, const char* where,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError(std::string("unknown key '") + it.key() + "' in " +
                        where);
  }
}

const json& get_req(const json& j, const char* where, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string("missing key '") + key + "' in " + where);
  return *it;
}

double as_num(const json& v, const char* key) {
  if (!v.is_number())
    throw ConfigError(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

int as_int(const json& v, const char* key) {
  if (!v.is_number_integer())
    throw ConfigError(std::string("key '") + key + "' must be an integer");
  return v.get<int>();
}

std::uint64_t as_u64(const json& v, const char* key) {
  if (!(v.is_number_unsigned() ||
        (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
    throw ConfigError(std::string("key '") + key +
                      "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const char* key) {
  if (!v.is_boolean())
    throw ConfigError(std::string("key '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::string as_str(const json& v, const char* key) {
  if (!v.is_string())
    throw ConfigError(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

void check_schema_version(const json& j) {
  const int v = as_int(get_req(j, "config", "schema_version"), "schema_version");
  if (v != kConfigSchemaVersion)
    throw ConfigError("unsupported schema_version " + std::to_string(v) +
                      ", expected " + std::to_string(kConfigSchemaVersion));
}

} // namespace

// ---------------------------------------------------------------------------
// ExperimentConfig

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, "config",
             {"schema_version", "params", "grid", "r_values", "replicas",
              "master_seed", "sigma_mode", "estimator", "output_dir",
              "zero_noise", "clamp_negative"});
  check_schema_version(j);

  ExperimentConfig cfg;
  const json& params = get_req(j, "config", "params");
  if (!params.is_object()) throw ConfigError("'params' must be an object");
  check_keys(params, "params", {"d", "beta", "t"});
  cfg.params.d = as_int(get_req(params, "params", "d"), "d");
  cfg.params.beta = as_num(get_req(params, "params", "beta"), "beta");
  cfg.params.t = as_num(get_req(params, "params", "t"), "t");

  const json& grid = get_req(j, "config", "grid");
  if (!grid.is_object()) throw ConfigError("'grid' must be an object");
  check_keys(grid, "grid", {"h", "dt", "margin"});
  cfg.h = as_num(get_req(grid, "grid", "h"), "h");
  cfg.dt = as_num(get_req(grid, "grid", "dt"), "dt");
  cfg.margin = as_num(get_req(grid, "grid", "margin"), "margin");

  const json& rv = get_req(j, "config", "r_values");
  if (!rv.is_array() || rv.empty())
    throw ConfigError("'r_values' must be a nonempty array");
  for (const json& v : rv) cfg.r_values.push_back(as_num(v, "r_values"));

  cfg.replicas = as_int(get_req(j, "config", "replicas"), "replicas");
  if (auto it = j.find("master_seed"); it != j.end())
    cfg.master_seed = as_u64(*it, "master_seed");
  if (auto it = j.find("sigma_mode"); it != j.end())
    cfg.sigma_mode = sigma_mode_from_name(as_str(*it, "sigma_mode"));
  if (auto it = j.find("estimator"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("'estimator' must be an object");
    check_keys(*it, "estimator", {"bandwidth", "bootstrap"});
    if (auto b = it->find("bandwidth"); b != it->end())
      cfg.estimator.bandwidth = as_num(*b, "bandwidth");
    if (auto b = it->find("bootstrap"); b != it->end())
      cfg.estimator.bootstrap = as_int(*b, "bootstrap");
  }
  if (auto it = j.find("output_dir"); it != j.end())
    cfg.output_dir = as_str(*it, "output_dir");
  if (auto it = j.find("zero_noise"); it != j.end())
    cfg.zero_noise = as_bool(*it, "zero_noise");
  if (auto it = j.find("clamp_negative"); it != j.end())
    cfg.clamp_negative = as_bool(*it, "clamp_negative");
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  return from_json_text(read_file(path));
}

void ExperimentConfig::validate() const {
  params.validate();
  if (params.d != 1)
    throw ConfigError("simulate supports d = 1 only ('params.d')");
  if (!(h > 0.0)) throw ConfigError("'grid.h' must be positive");
  if (!(dt > 0.0)) throw ConfigError("'grid.dt' must be positive");
  if (dt > h + 1e-15) throw ConfigError("'grid.dt' must be <= 'grid.h'");
  if (!(margin > 0.0)) throw ConfigError("'grid.margin' must be positive");
  if (r_values.empty()) throw ConfigError("'r_values' must be nonempty");
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    const double R = r_values[i];
    if (!(R > 0.0)) throw ConfigError("'r_values' must be positive");
    if (i && !(R > r_values[i - 1]))
      throw ConfigError("'r_values' must be strictly increasing");
    const double m = R / h;
    if (std::fabs(m - std::round(m)) > 1e-9)
      throw ConfigError("each R in 'r_values' must be a multiple of 'grid.h'");
  }
  if (replicas < 1) throw ConfigError("'replicas' must be >= 1");
  if (!zero_noise && replicas < 100)
    throw ConfigError("'replicas' must be >= 100 for distance estimation");
  if (!(estimator.bandwidth >= 0.0) || !std::isfinite(estimator.bandwidth))
    throw ConfigError("'estimator.bandwidth' must be finite and >= 0");
  if (estimator.bootstrap < 0)
    throw ConfigError("'estimator.bootstrap' must be >= 0");
  if (output_dir.empty()) throw ConfigError("'output_dir' must be nonempty");
  solver_config().validate(); // cross-field: margin, nt * dt == t, torus size
}

int ExperimentConfig::n_cells() const {
  const double need = 2.0 * (r_values.back() + margin) / h;
  int n = 8;
  while (static_cast<double>(n) < need - 1e-9) {
    if (n > (1 << 22))
      throw ConfigError("derived grid exceeds 2^22 cells; shrink the torus");
    n *= 2;
  }
  return n;
}

int ExperimentConfig::n_steps() const {
  const double nt = params.t / dt;
  const auto n = static_cast<int>(std::llround(nt));
  if (n < 1 || std::fabs(static_cast<double>(n) * dt - params.t) >
                   1e-9 * std::max(1.0, params.t))
    throw ConfigError("'grid.dt' must divide 'params.t'");
  return n;
}

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig sc;
  sc.grid.n_cells = n_cells();
  sc.grid.h = h;
  sc.grid.dt = dt;
  sc.params = params;
  sc.nt = n_steps();
  sc.r_max = r_values.back();
  sc.margin = margin;
  sc.zero_noise = zero_noise;
  sc.clamp_negative = clamp_negative;
  sc.master_seed = master_seed;
  return sc;
}

// output_dir is deliberately excluded: the hash identifies the numbers a run
// produces, and those are independent of where the files land.
std::string ExperimentConfig::canonical_text() const {
  std::string s = "{\"schema_version\":";
  s += std::to_string(kConfigSchemaVersion);
  s += ",\"params\":{\"d\":" + std::to_string(params.d);
  s += ",\"beta\":" + fmt_g17(params.beta);
  s += ",\"t\":" + fmt_g17(params.t);
  s += "},\"grid\":{\"h\":" + fmt_g17(h);
  s += ",\"dt\":" + fmt_g17(dt);
  s += ",\"margin\":" + fmt_g17(margin);
  s += "},\"r_values\":[";
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (i) s += ',';
    s += fmt_g17(r_values[i]);
  }
  s += "],\"replicas\":" + std::to_string(replicas);
  s += ",\"master_seed\":" + std::to_string(master_seed);
  s += ",\"sigma_mode\":\"" + std::string(sigma_mode_name(sigma_mode)) + "\"";
  s += ",\"estimator\":{\"bandwidth\":" + fmt_g17(estimator.bandwidth);
  s += ",\"bootstrap\":" + std::to_string(estimator.bootstrap);
  s += "},\"zero_noise\":";
  s += zero_noise ? "true" : "false";
  s += ",\"clamp_negative\":";
  s += clamp_negative ? "true" : "false";
  s += "}";
  return s;
}

std::uint64_t ExperimentConfig::config_hash() const {
  return fnv1a64(canonical_text());
}

// ---------------------------------------------------------------------------
// LemmasConfig

const std::vector<std::string>& LemmasConfig::known_checks() {
  static const std::vector<std::string> k = {
      "heat_riesz", "qr_riesz", "m_scaling",
      "e_growth",   "varphi_pair", "phi_bound"};
  return k;
}

LemmasConfig LemmasConfig::from_json_text(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, "config",
             {"schema_version", "beta", "t", "checks", "qmc", "seed",
              "output_dir"});
  check_schema_version(j);

  LemmasConfig cfg;
  if (auto it = j.find("beta"); it != j.end()) cfg.beta = as_num(*it, "beta");
  if (auto it = j.find("t"); it != j.end()) cfg.t = as_num(*it, "t");
  if (auto it = j.find("checks"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("'checks' must be an array");
    for (const json& v : *it) cfg.checks.push_back(as_str(v, "checks"));
  } else {
    cfg.checks = known_checks();
  }
  if (auto it = j.find("qmc"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("'qmc' must be an object");
    check_keys(*it, "qmc", {"points", "shifts"});
    if (auto p = it->find("points"); p != it->end())
      cfg.qmc_points = as_u64(*p, "points");
    if (auto s = it->find("shifts"); s != it->end())
      cfg.qmc_shifts = as_int(*s, "shifts");
  }
  if (auto it = j.find("seed"); it != j.end()) cfg.seed = as_u64(*it, "seed");
  if (auto it = j.find("output_dir"); it != j.end())
    cfg.output_dir = as_str(*it, "output_dir");
  return cfg;
}

LemmasConfig LemmasConfig::from_json_file(const std::string& path) {
  return from_json_text(read_file(path));
}

void LemmasConfig::validate() const {
  if (!(beta > 0.0) || beta > 0.9)
    throw ConfigError(
        "'beta' must be in (0, 0.9] for the lemma checks (practical guard)");
  if (!(t > 0.0)) throw ConfigError("'t' must be positive");
  if (checks.empty()) throw ConfigError("'checks' must be nonempty");
  for (const std::string& c : checks) {
    const auto& known = known_checks();
    if (std::find(known.begin(), known.end(), c) == known.end())
      throw ConfigError("unknown check '" + c + "' in 'checks'");
    if (std::count(checks.begin(), checks.end(), c) > 1)
      throw ConfigError("duplicate check '" + c + "' in 'checks'");
  }
  if (qmc_points < 1'000'000)
    throw ConfigError("'qmc.points' must be >= 1000000");
  if (qmc_shifts < 2 || qmc_shifts > 64)
    throw ConfigError("'qmc.shifts' must be in [2, 64]");
  if (output_dir.empty()) throw ConfigError("'output_dir' must be nonempty");
}

std::string LemmasConfig::canonical_text() const {
  std::string s = "{\"schema_version\":";
  s += std::to_string(kConfigSchemaVersion);
  s += ",\"beta\":" + fmt_g17(beta);
  s += ",\"t\":" + fmt_g17(t);
  s += ",\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i) s += ',';
    s += "\"" + checks[i] + "\"";
  }
  s += "],\"qmc\":{\"points\":" + std::to_string(qmc_points);
  s += ",\"shifts\":" + std::to_string(qmc_shifts);
  s += "},\"seed\":" + std::to_string(seed);
  s += "}";
  return s;
}

std::uint64_t LemmasConfig::config_hash() const {
  return fnv1a64(canonical_text());
}

// ---------------------------------------------------------------------------
// RunManifest

std::string RunManifest::to_json() const {
  char hashbuf[32];
  std::snprintf(hashbuf, sizeof hashbuf, "%016llx",
                static_cast<unsigned long long>(config_hash));
  std::string s = "{\n";
  s += "  \"schema_version\": " + std::to_string(kConfigSchemaVersion) + ",\n";
  s += "  \"kind\": \"" + kind + "\",\n";
  s += "  \"config_hash\": \"" + std::string(hashbuf) + "\",\n";
  s += "  \"code_version\": \"" + code_version + "\",\n";
  s += "  \"master_seed\": " + std::to_string(master_seed) + ",\n";
  s += "  \"per_r\": [";
  for (std::size_t i = 0; i < per_r_replicas.size(); ++i) {
    if (i) s += ", ";
    s += "{\"R\": " + fmt_g17(per_r_replicas[i].first) +
         ", \"replicas\": " + std::to_string(per_r_replicas[i].second) + "}";
  }
  s += "],\n";
  s += "  \"planned_outputs\": [";
  for (std::size_t i = 0; i < planned_outputs.size(); ++i) {
    if (i) s += ", ";
    s += "\"" + planned_outputs[i] + "\"";
  }
  s += "]\n";
  s += "}\n";
  return s;
}

void RunManifest::write(const std::string& path) const {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("cannot open for writing: " + path);
  const std::string s = to_json();
  std::fwrite(s.data(), 1, s.size(), f);
  std::fclose(f);
}

} // namespace pam
