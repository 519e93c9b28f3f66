// Command line front end. Exit codes: 0 success, 1 usage or unexpected
// error, 2 configuration error, 3 numerical failure, 4 failed check.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "pam/config.hpp"
#include "pam/errors.hpp"
#include "pam/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"stochastic heat equation with Riesz-correlated noise: "
               "simulation, distance estimation, and integral checks"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand(
      "simulate", "run replicas; write samples, distances, report");
  std::string sim_config;
  sim->add_option("--config", sim_config, "experiment config JSON")
      ->required();
  std::uint64_t sim_seed = 0;
  auto* sim_seed_opt =
      sim->add_option("--seed", sim_seed, "override master_seed");
  int sim_threads = 0;
  sim->add_option("--threads", sim_threads,
                  "worker threads (0 = hardware count)");
  std::string sim_out;
  auto* sim_out_opt = sim->add_option("--out", sim_out, "override output_dir");

  auto* lem =
      app.add_subcommand("lemmas", "run the singular-integral checks");
  std::string lem_config;
  lem->add_option("--config", lem_config,
                  "lemmas config JSON (defaults run every check)");
  std::uint64_t lem_seed = 0;
  auto* lem_seed_opt = lem->add_option("--seed", lem_seed, "override seed");
  std::string lem_out;
  auto* lem_out_opt = lem->add_option("--out", lem_out, "override output_dir");
  bool lem_check = false;
  lem->add_flag("--check", lem_check, "exit 4 if any check fails");

  auto* kb = app.add_subcommand("kbeta", "print the limit variance constant");
  int kb_d = 1;
  double kb_beta = 0.5;
  kb->add_option("--d", kb_d, "dimension (1 or 2)");
  kb->add_option("--beta", kb_beta, "Riesz exponent")->required();

  auto* nc = app.add_subcommand(
      "noise-check", "empirical covariance of both noise samplers");
  int nc_cells = 64;
  double nc_h = 0.05, nc_dt = 1e-3, nc_beta = 0.5;
  std::uint64_t nc_samples = 100000, nc_seed = 1;
  nc->add_option("--cells", nc_cells, "grid cells (power of two >= 8)");
  nc->add_option("--width", nc_h, "cell width");
  nc->add_option("--dt", nc_dt, "time step");
  nc->add_option("--beta", nc_beta, "Riesz exponent");
  nc->add_option("--samples", nc_samples, "number of increments");
  nc->add_option("--seed", nc_seed, "rng seed");
  bool nc_check = false;
  nc->add_flag("--check", nc_check, "exit 4 if a deviation exceeds 5 SE");

  auto* fr = app.add_subcommand("fit-rate",
                                "log-log rate fit from a distances CSV");
  std::string fr_csv;
  fr->add_option("csv", fr_csv, "input CSV path")->required();
  std::string fr_column = "tv";
  fr->add_option("--column", fr_column, "distance column (default tv)");

  auto* rp = app.add_subcommand("report", "summarize a report.json");
  std::string rp_path;
  rp->add_option("report", rp_path, "path to report.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      pam::ExperimentConfig cfg =
          pam::ExperimentConfig::from_json_file(sim_config);
      if (sim_seed_opt->count()) cfg.master_seed = sim_seed;
      if (sim_out_opt->count()) cfg.output_dir = sim_out;
      pam::run_simulate(cfg, sim_threads);
    } else if (lem->parsed()) {
      pam::LemmasConfig cfg;
      if (!lem_config.empty())
        cfg = pam::LemmasConfig::from_json_file(lem_config);
      else
        cfg.checks = pam::LemmasConfig::known_checks();
      if (lem_seed_opt->count()) cfg.seed = lem_seed;
      if (lem_out_opt->count()) cfg.output_dir = lem_out;
      if (!pam::run_lemmas(cfg)) {
        std::fprintf(stderr, "one or more lemma checks failed\n");
        if (lem_check) return 4;
      }
    } else if (kb->parsed()) {
      pam::run_kbeta(kb_d, kb_beta);
    } else if (nc->parsed()) {
      const bool ok = pam::run_noise_check(nc_cells, nc_h, nc_dt, nc_beta,
                                           nc_samples, nc_seed);
      if (!ok && nc_check) return 4;
    } else if (fr->parsed()) {
      pam::run_fit_rate(fr_csv, fr_column);
    } else if (rp->parsed()) {
      pam::run_report(rp_path);
    }
  } catch (const pam::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const pam::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const pam::CheckFailure& e) {
    std::fprintf(stderr, "check failure: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
