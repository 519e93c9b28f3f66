#pragma once

// Orchestration behind the CLI subcommands. Each entry point validates its
// inputs, writes everything under the config's output directory, and leaves
// exit-code policy to the caller.

#include <cstdint>
#include <string>

#include "pam/config.hpp"

namespace pam {

// Full experiment: replicas across a worker pool, per-R sample files,
// distance table, bandwidth sweep, report.json. manifest.json is written
// before any replica runs. threads <= 0 selects the hardware count.
void run_simulate(const ExperimentConfig& cfg, int threads);

// Runs the configured checks, writes manifest.json, one lemma_<id>.csv per
// check, and lemmas.json. Prints one verdict line per check. Returns true
// when every check passed.
bool run_lemmas(const LemmasConfig& cfg);

// Prints k_beta(d, beta): the quadrature value, plus the closed form (d = 1)
// or the quadrature error estimate (d = 2).
void run_kbeta(int d, double beta);

// Empirical covariance of both noise samplers against the exact cell
// covariance, n_samples increments each. Prints the worst deviation in SE
// units per sampler; returns true when both are within 5 SE.
bool run_noise_check(int n_cells, double h, double dt, double beta,
                     std::uint64_t n_samples, std::uint64_t seed);

// Refits the log-log rate of `column` against column R from a CSV produced
// by run_simulate (or any file with compatible headers) and prints it.
void run_fit_rate(const std::string& csv_path, const std::string& column);

// Prints a human-readable digest of a report.json.
void run_report(const std::string& report_path);

} // namespace pam
