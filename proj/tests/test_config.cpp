#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "pam/config.hpp"
#include "pam/errors.hpp"

using namespace pam;

namespace {

std::string base_json() {
  return R"({
    "schema_version": 1,
    "params": {"d": 1, "beta": 0.5, "t": 0.25},
    "grid": {"h": 0.05, "dt": 0.001, "margin": 4.8},
    "r_values": [2.0, 4.0, 8.0],
    "replicas": 2000,
    "master_seed": 1,
    "sigma_mode": "empirical",
    "estimator": {"bandwidth": 0.0, "bootstrap": 500},
    "output_dir": "out"
  })";
}

std::string with(const std::string& from, const std::string& to) {
  std::string s = base_json();
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
  return s;
}

std::string lemmas_json() {
  return R"({
    "schema_version": 1,
    "beta": 0.5,
    "t": 1.0,
    "checks": ["heat_riesz", "qr_riesz"],
    "qmc": {"points": 2000000, "shifts": 8},
    "seed": 1,
    "output_dir": "out"
  })";
}

} // namespace

TEST_CASE("experiment config round-trips the acceptance setup") {
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(base_json());
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.params.d == 1);
  CHECK(cfg.params.beta == 0.5);
  CHECK(cfg.params.t == 0.25);
  CHECK(cfg.h == 0.05);
  CHECK(cfg.dt == 0.001);
  CHECK(cfg.margin == 4.8);
  REQUIRE(cfg.r_values.size() == 3);
  CHECK(cfg.r_values[2] == 8.0);
  CHECK(cfg.replicas == 2000);
  CHECK(cfg.sigma_mode == SigmaMode::empirical);
  CHECK(cfg.estimator.bootstrap == 500);
  CHECK(!cfg.zero_noise);

  // Torus must hold R_max + margin = 12.8: smallest power of two with
  // n * h / 2 >= 12.8 at h = 0.05 is 512.
  CHECK(cfg.n_cells() == 512);
  CHECK(cfg.n_steps() == 250);

  const SolverConfig sc = cfg.solver_config();
  CHECK_NOTHROW(sc.validate());
  CHECK(sc.grid.n_cells == 512);
  CHECK(sc.nt == 250);
  CHECK(sc.r_max == 8.0);
}

TEST_CASE("unknown keys are rejected everywhere") {
  CHECK_THROWS_AS(
      (void)ExperimentConfig::from_json_text(with("\"params\"", "\"paramz\"")),
      ConfigError);
  CHECK_THROWS_AS((void)ExperimentConfig::from_json_text(
                      with("\"bootstrap\": 500", "\"bootsraps\": 500")),
                  ConfigError);
  CHECK_THROWS_AS((void)ExperimentConfig::from_json_text(
                      with("\"h\": 0.05", "\"width\": 0.05")),
                  ConfigError);
}

TEST_CASE("schema version must match") {
  CHECK_THROWS_AS((void)ExperimentConfig::from_json_text(
                      with("\"schema_version\": 1", "\"schema_version\": 2")),
                  ConfigError);
}

TEST_CASE("validation rejects inconsistent grids and ladders") {
  auto reject = [](const std::string& text) {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(text);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  };
  // dt above the stability envelope dt <= h
  reject(with("\"dt\": 0.001", "\"dt\": 0.06"));
  // R values not multiples of h
  reject(with("[2.0, 4.0, 8.0]", "[2.0, 4.03, 8.0]"));
  // not strictly increasing
  reject(with("[2.0, 4.0, 8.0]", "[2.0, 2.0, 8.0]"));
  // empty ladder is malformed already at parse time
  CHECK_THROWS_AS(
      (void)ExperimentConfig::from_json_text(with("[2.0, 4.0, 8.0]", "[]")),
      ConfigError);
  // too few replicas for distance estimation
  reject(with("\"replicas\": 2000", "\"replicas\": 50"));
  // negative bootstrap count
  reject(with("\"bootstrap\": 500", "\"bootstrap\": -1"));
  // margin too small for the diffusive spill-over (6 sqrt(t) = 3)
  reject(with("\"margin\": 4.8", "\"margin\": 2.0"));

  CHECK_THROWS_AS((void)ExperimentConfig::from_json_text(with(
                      "\"sigma_mode\": \"empirical\"",
                      "\"sigma_mode\": \"exact\"")),
                  ConfigError);
}

TEST_CASE("zero-noise debug runs may use few replicas") {
  const std::string s = with("\"replicas\": 2000", "\"replicas\": 8");
  const std::string text =
      s.substr(0, s.rfind('}')) + ", \"zero_noise\": true }";
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(text);
  CHECK(cfg.zero_noise);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("n_steps requires dt to divide t") {
  const std::string text = with("\"t\": 0.25", "\"t\": 0.2505");
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(text);
  CHECK_THROWS_AS((void)cfg.n_steps(), ConfigError);
}

TEST_CASE("tiny domains still get the minimum cell count") {
  std::string q = with("\"h\": 0.05, \"dt\": 0.001, \"margin\": 4.8",
                       "\"h\": 1.0, \"dt\": 0.5, \"margin\": 3.0");
  const auto rpos = q.find("[2.0, 4.0, 8.0]");
  REQUIRE(rpos != std::string::npos);
  q.replace(rpos, std::string("[2.0, 4.0, 8.0]").size(), "[1.0]");
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(q);
  // R_max + margin = 4 needs n >= 8 at h = 1; the floor is 8 cells.
  CHECK(cfg.n_cells() == 8);
}

TEST_CASE("canonical text is stable and hashes location-independently") {
  ExperimentConfig a = ExperimentConfig::from_json_text(base_json());
  ExperimentConfig b = ExperimentConfig::from_json_text(base_json());
  CHECK(a.canonical_text() == b.canonical_text());
  CHECK(a.config_hash() == b.config_hash());

  // Different output directory, same physics: same hash.
  b.output_dir = "/tmp/somewhere/else";
  CHECK(a.config_hash() == b.config_hash());

  // Any physical field changes the hash.
  b = ExperimentConfig::from_json_text(base_json());
  b.master_seed = 2;
  CHECK(a.config_hash() != b.config_hash());
  b = ExperimentConfig::from_json_text(base_json());
  b.replicas = 2001;
  CHECK(a.config_hash() != b.config_hash());
}

TEST_CASE("lemmas config parses, defaults, and validates") {
  const LemmasConfig cfg = LemmasConfig::from_json_text(lemmas_json());
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.beta == 0.5);
  CHECK(cfg.qmc_points == 2000000);
  CHECK(cfg.qmc_shifts == 8);
  REQUIRE(cfg.checks.size() == 2);

  // Omitting "checks" selects the full suite.
  std::string no_checks = lemmas_json();
  const auto pos = no_checks.find("\"checks\": [\"heat_riesz\", \"qr_riesz\"],");
  REQUIRE(pos != std::string::npos);
  no_checks.erase(pos, std::string("\"checks\": [\"heat_riesz\", \"qr_riesz\"],").size());
  const LemmasConfig full = LemmasConfig::from_json_text(no_checks);
  CHECK(full.checks == LemmasConfig::known_checks());
  CHECK(full.checks.size() == 6);

  auto reject = [](std::string text, const std::string& from,
                   const std::string& to) {
    const auto p = text.find(from);
    REQUIRE(p != std::string::npos);
    text.replace(p, from.size(), to);
    const LemmasConfig c = LemmasConfig::from_json_text(text);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  };
  // Empty selection is an error, as are unknown or duplicated checks.
  reject(lemmas_json(), "[\"heat_riesz\", \"qr_riesz\"]", "[]");
  reject(lemmas_json(), "[\"heat_riesz\", \"qr_riesz\"]", "[\"qr_rieszz\"]");
  reject(lemmas_json(), "[\"heat_riesz\", \"qr_riesz\"]",
         "[\"qr_riesz\", \"qr_riesz\"]");
  // Practical guard keeps beta away from the divergence at d.
  reject(lemmas_json(), "\"beta\": 0.5", "\"beta\": 0.95");
  // Point floor protects the 5% QMC standard error contract.
  reject(lemmas_json(), "\"points\": 2000000", "\"points\": 500000");

  CHECK_THROWS_AS((void)LemmasConfig::from_json_text(
                      R"({"schema_version": 1, "beta": 0.5, "bogus": 3})"),
                  ConfigError);
}

TEST_CASE("manifest holds inputs only and writes deterministic bytes") {
  RunManifest m;
  m.kind = "simulate";
  m.config_hash = 0xabcdef0123456789ull;
  m.code_version = "test";
  m.master_seed = 42;
  m.per_r_replicas = {{2.0, 100}, {4.0, 100}};
  m.planned_outputs = {"samples_R2.csv", "samples_R4.csv", "report.json"};

  const std::string j = m.to_json();
  CHECK(j.find("\"kind\": \"simulate\"") != std::string::npos);
  CHECK(j.find("abcdef0123456789") != std::string::npos);
  CHECK(j.find("\"master_seed\": 42") != std::string::npos);
  CHECK(j.find("samples_R4.csv") != std::string::npos);
  // No wall-clock content inside the manifest.
  CHECK(j.find("time") == std::string::npos);
  CHECK(j.find("seconds") == std::string::npos);

  const std::string path = "manifest_test.json";
  m.write(path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == j);
  std::remove(path.c_str());
}
