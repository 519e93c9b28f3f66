#include "pam/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "pam/averaging.hpp"
#include "pam/csv.hpp"
#include "pam/errors.hpp"
#include "pam/lemma_lab.hpp"
#include "pam/noise.hpp"
#include "pam/rng.hpp"
#include "pam/simd.hpp"
#include "pam/solver.hpp"
#include "pam/stats.hpp"
#include "pam/version.hpp"

namespace pam {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string samples_name(double R) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "samples_R%g.csv", R);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("cannot open for writing: " + path);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

void write_timing(const std::string& dir, double wall_seconds, int threads) {
  ordered_json j;
  j["wall_seconds"] = wall_seconds;
  j["threads"] = threads;
  write_text(dir + "/timing.json", j.dump(2) + "\n");
}

double mean_of(const std::vector<double>& v) {
  return simd::sum(v.data(), v.size()) / static_cast<double>(v.size());
}

// Unbiased variance plus the large-sample standard error of the variance
// estimate, Var(s^2) = (m4 - s^4 (n-3)/(n-1)) / n with m4 the central fourth
// moment.
struct VarEstimate {
  double mean = 0.0;
  double mean_se = 0.0;
  double var = 0.0;
  double var_se = 0.0;
};

VarEstimate variance_with_se(const std::vector<double>& x) {
  const auto n = static_cast<double>(x.size());
  VarEstimate out;
  out.mean = mean_of(x);
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - out.mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m4 /= n;
  out.var = x.size() > 1 ? m2 / (n - 1.0) : 0.0;
  out.mean_se = x.size() > 1 ? std::sqrt(out.var / n) : 0.0;
  if (x.size() > 3) {
    const double v2 = out.var * out.var;
    const double var_of_var = (m4 - v2 * (n - 3.0) / (n - 1.0)) / n;
    out.var_se = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// simulate

void run_simulate(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const Solver solver(cfg.solver_config());
  fs::create_directories(cfg.output_dir);

  const std::size_t n_r = cfg.r_values.size();
  const int n_rep = cfg.replicas;

  RunManifest manifest;
  manifest.kind = "simulate";
  manifest.config_hash = cfg.config_hash();
  manifest.code_version = kCodeVersion;
  manifest.master_seed = cfg.master_seed;
  for (double R : cfg.r_values) {
    manifest.per_r_replicas.emplace_back(R, n_rep);
    manifest.planned_outputs.push_back(samples_name(R));
  }
  if (!cfg.zero_noise) {
    manifest.planned_outputs.push_back("distances.csv");
    manifest.planned_outputs.push_back("bandwidth_sensitivity.csv");
  }
  manifest.planned_outputs.push_back("report.json");
  manifest.planned_outputs.push_back("timing.json");
  manifest.write(cfg.output_dir + "/manifest.json");

  const auto t0 = std::chrono::steady_clock::now();

  int T = threads > 0
              ? threads
              : static_cast<int>(std::thread::hardware_concurrency());
  T = std::clamp(T, 1, 64);
  T = std::min(T, n_rep);

  // Replica id -> result slot; identical content for any thread count.
  std::vector<std::vector<double>> integrals(
      n_r, std::vector<double>(static_cast<std::size_t>(n_rep), 0.0));
  std::vector<double> field_means(n_rep, 0.0);
  std::vector<double> pos_fractions(n_rep, 0.0);
  std::vector<ReplicaStats> stats(n_rep);
  std::vector<std::string> failures(n_rep);

  auto work = [&](int w) {
    auto ws = solver.make_workspace();
    for (int id = w; id < n_rep; id += T) {
      try {
        ReplicaStats rs;
        const Field f =
            solver.run_replica(static_cast<std::uint64_t>(id), *ws, &rs);
        for (std::size_t k = 0; k < n_r; ++k)
          integrals[k][id] = spatial_integral(f, cfg.r_values[k]);
        field_means[id] = simd::sum(f.values.data(), f.values.size()) /
                          static_cast<double>(f.values.size());
        pos_fractions[id] = positivity_report(f).fraction_nonnegative;
        stats[id] = rs;
      } catch (const std::exception& e) {
        failures[id] = e.what();
        break;
      }
    }
  };
  if (T == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (int w = 0; w < T; ++w) pool.emplace_back(work, w);
    for (std::thread& th : pool) th.join();
  }
  for (int id = 0; id < n_rep; ++id)
    if (!failures[id].empty())
      throw NumericalError("replica " + std::to_string(id) + ": " +
                           failures[id]);

  // Per-replica diagnostics, aggregated in replica order.
  double min_seen = stats.empty() ? 0.0 : stats[0].min_seen;
  std::uint64_t tainted = 0, clamped = 0, negative_cell_steps = 0;
  for (const ReplicaStats& rs : stats) {
    min_seen = std::min(min_seen, rs.min_seen);
    tainted += rs.tainted ? 1 : 0;
    clamped += rs.clamped_count;
    negative_cell_steps += rs.negative_cell_steps;
  }
  const double pos_fraction = mean_of(pos_fractions);
  const VarEstimate fm = variance_with_se(field_means);

  // Per-R samples, scaling, distances.
  std::vector<VarEstimate> raw(n_r);
  std::vector<double> chaos1_var(n_r, 0.0), limit_var(n_r, 0.0),
      sigma_used(n_r, 0.0);
  std::vector<DistanceEntry> entries;
  struct BwRow {
    double R, multiplier, bandwidth, sup, tv;
  };
  std::vector<BwRow> bw_rows;

  for (std::size_t k = 0; k < n_r; ++k) {
    const double R = cfg.r_values[k];
    AverageSamples samples;
    samples.R = R;
    samples.t = cfg.params.t;
    samples.params = cfg.params;
    samples.raw = integrals[k];

    raw[k] = variance_with_se(samples.raw);
    chaos1_var[k] = chaos1_variance(R, cfg.params.t, cfg.params);
    limit_var[k] = variance_limit(R, cfg.params.t, cfg.params);

    std::vector<double> z;
    if (!cfg.zero_noise) {
      const ScaledSamples scaled = center_and_scale(samples, cfg.sigma_mode);
      sigma_used[k] = scaled.sigma;
      z = scaled.z;
    }

    CsvWriter csv(cfg.output_dir + "/" + samples_name(R));
    csv.header({"replica_id", "raw_integral", "F_value"});
    for (int id = 0; id < n_rep; ++id)
      csv.row_cells({std::to_string(id), fmt_g17(samples.raw[id]),
                     cfg.zero_noise ? "nan" : fmt_g17(z[id])});

    if (!cfg.zero_noise) {
      const DistanceEntry entry = distance_entry(
          R, z, cfg.estimator.bandwidth, cfg.estimator.bootstrap,
          cfg.master_seed, (std::uint64_t{1} << 32) + k);
      for (double m : {0.5, 0.75, 1.0, 1.5, 2.0}) {
        const KdeResult kd = kde_density(z, m * entry.bandwidth);
        bw_rows.push_back({R, m, kd.bandwidth,
                           sup_distance_to_phi(kd.density).value,
                           tv_distance_to_phi(kd.density)});
      }
      entries.push_back(entry);
    }
  }

  DistanceReport dist;
  if (!cfg.zero_noise) {
    CsvWriter csv(cfg.output_dir + "/distances.csv");
    csv.header({"R", "n", "sup_dist", "sup_dist_ci_lo", "sup_dist_ci_hi",
                "tv", "kolmogorov", "bandwidth"});
    for (const DistanceEntry& e : entries)
      csv.row_cells({fmt_g17(e.R), std::to_string(e.n), fmt_g17(e.sup_dist),
                     fmt_g17(e.sup_ci.lo), fmt_g17(e.sup_ci.hi),
                     fmt_g17(e.tv), fmt_g17(e.kolmogorov),
                     fmt_g17(e.bandwidth)});

    CsvWriter bw(cfg.output_dir + "/bandwidth_sensitivity.csv");
    bw.header({"R", "multiplier", "bandwidth", "sup_dist", "tv"});
    for (const BwRow& r : bw_rows)
      bw.row({r.R, r.multiplier, r.bandwidth, r.sup, r.tv});

    dist = build_distance_report(entries);
  }

  ordered_json rep;
  rep["schema_version"] = kConfigSchemaVersion;
  rep["kind"] = "simulate-report";
  rep["config_hash"] = hash_hex(cfg.config_hash());
  rep["code_version"] = kCodeVersion;
  rep["sigma_mode"] = sigma_mode_name(cfg.sigma_mode);
  rep["zero_noise"] = cfg.zero_noise;
  rep["replicas"] = n_rep;
  rep["positivity"] = {{"fraction_nonnegative", pos_fraction},
                       {"min_seen", min_seen},
                       {"tainted_replicas", tainted},
                       {"clamped_count", clamped},
                       {"negative_cell_steps", negative_cell_steps}};
  rep["field_mean"] = {{"value", fm.mean}, {"se", fm.mean_se}};
  rep["per_r"] = ordered_json::array();
  for (std::size_t k = 0; k < n_r; ++k) {
    ordered_json e;
    e["R"] = cfg.r_values[k];
    e["n"] = n_rep;
    e["raw_mean"] = raw[k].mean;
    e["raw_mean_se"] = raw[k].mean_se;
    e["raw_var"] = raw[k].var;
    e["raw_var_se"] = raw[k].var_se;
    e["chaos1_var"] = chaos1_var[k];
    e["limit_var"] = limit_var[k];
    e["ratio_chaos1"] = raw[k].var / chaos1_var[k];
    e["ratio_chaos1_se"] = raw[k].var_se / chaos1_var[k];
    e["ratio_limit"] = raw[k].var / limit_var[k];
    e["ratio_limit_se"] = raw[k].var_se / limit_var[k];
    if (!cfg.zero_noise) {
      const DistanceEntry& d = entries[k];
      e["sigma"] = sigma_used[k];
      e["sup_dist"] = d.sup_dist;
      e["sup_ci_lo"] = d.sup_ci.lo;
      e["sup_ci_hi"] = d.sup_ci.hi;
      e["sup_at"] = d.sup_at;
      e["tv"] = d.tv;
      e["tv_ci_lo"] = d.tv_ci.lo;
      e["tv_ci_hi"] = d.tv_ci.hi;
      e["kolmogorov"] = d.kolmogorov;
      e["ks_ci_lo"] = d.ks_ci.lo;
      e["ks_ci_hi"] = d.ks_ci.hi;
      e["bandwidth"] = d.bandwidth;
    }
    rep["per_r"].push_back(e);
  }
  rep["fit_valid"] = dist.fit_valid;
  if (dist.fit_valid) {
    rep["tv_fit"] = {{"slope", dist.tv_fit.slope},
                     {"intercept", dist.tv_fit.intercept},
                     {"stderr_slope", dist.tv_fit.stderr_slope}};
    rep["sup_fit"] = {{"slope", dist.sup_fit.slope},
                      {"intercept", dist.sup_fit.intercept},
                      {"stderr_slope", dist.sup_fit.stderr_slope}};
  }
  // Samples at different R reuse the same replica fields, so per-R rows are
  // positively correlated; CIs are per row, not joint.
  rep["correlated_across_r"] = true;
  write_text(cfg.output_dir + "/report.json", rep.dump(2) + "\n");

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_timing(cfg.output_dir, wall, T);

  std::printf("simulate: %d replicas, %zu boxes, output in %s\n", n_rep, n_r,
              cfg.output_dir.c_str());
}

// ---------------------------------------------------------------------------
// lemmas

bool run_lemmas(const LemmasConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.output_dir);

  RunManifest manifest;
  manifest.kind = "lemmas";
  manifest.config_hash = cfg.config_hash();
  manifest.code_version = kCodeVersion;
  manifest.master_seed = cfg.seed;
  for (const std::string& c : cfg.checks) {
    if (c == "phi_bound") {
      manifest.planned_outputs.push_back("lemma_phi_1_bound.csv");
      manifest.planned_outputs.push_back("lemma_phi_2_bound.csv");
    } else {
      manifest.planned_outputs.push_back("lemma_" + c + ".csv");
    }
  }
  manifest.planned_outputs.push_back("lemmas.json");
  manifest.planned_outputs.push_back("timing.json");
  manifest.write(cfg.output_dir + "/manifest.json");

  const auto t0 = std::chrono::steady_clock::now();
  const double t = cfg.t;
  const double beta = cfg.beta;

  std::vector<LemmaCheckResult> results;
  for (const std::string& c : cfg.checks) {
    if (c == "heat_riesz") {
      results.push_back(check_heat_riesz({0.5, 1.0, 2.0}, beta, 1, 25));
    } else if (c == "qr_riesz") {
      results.push_back(check_qr_riesz({1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0},
                                       {0.0, 0.05}, beta, 1));
    } else if (c == "m_scaling") {
      results.push_back(check_m_scaling(t, 0.8, {1e-3, 1e-2, 1e-1, 1.0},
                                        {1.0, 2.0, 4.0, 8.0, 16.0}, beta, 1));
    } else if (c == "e_growth") {
      // Four heat-kernel factors make this the noisiest estimate; give it
      // twice the configured point budget. The time arguments sit in the
      // upper part of the simplex, where the kernels are narrow enough for
      // the R range to reach its asymptotic growth, yet wide enough to keep
      // the importance-sampled variance inside the error gate.
      const QmcBudget budget{2 * cfg.qmc_points, cfg.qmc_shifts};
      results.push_back(check_E_growth(t, 0.5 * t, 0.6 * t, 0.75 * t, beta,
                                       {1.0, 2.0, 4.0, 8.0}, budget,
                                       cfg.seed));
    } else if (c == "varphi_pair") {
      results.push_back(
          check_varphi_pair(t, beta, 1, {1.0, 4.0, 16.0, 64.0}, 5));
    } else if (c == "phi_bound") {
      const QmcBudget budget{cfg.qmc_points, cfg.qmc_shifts};
      for (int which : {1, 2})
        results.push_back(check_phi_i_bound(t, 0.5 * t, {0.0, 0.5}, beta,
                                            {1.0, 2.0, 4.0, 8.0}, which,
                                            budget, cfg.seed));
    } else {
      throw ConfigError("unknown check '" + c + "'");
    }
  }

  bool all_pass = true;
  ordered_json out;
  out["schema_version"] = kConfigSchemaVersion;
  out["kind"] = "lemmas";
  out["config_hash"] = hash_hex(cfg.config_hash());
  out["code_version"] = kCodeVersion;
  out["checks"] = ordered_json::array();
  for (const LemmaCheckResult& r : results) {
    CsvWriter csv(cfg.output_dir + "/lemma_" + r.lemma + ".csv");
    csv.header(r.columns);
    for (const std::vector<double>& row : r.rows) csv.row(row);

    ordered_json e;
    e["lemma"] = r.lemma;
    e["pass"] = r.pass;
    e["has_exponent"] = r.has_exponent;
    if (r.has_exponent) {
      e["exponent"] = r.exponent;
      e["exponent_stderr"] = r.exponent_stderr;
    }
    e["ratio_min"] = r.ratio_min;
    e["ratio_max"] = r.ratio_max;
    e["detail"] = r.detail;
    out["checks"].push_back(e);

    std::printf("check %s: %s (%s)\n", r.lemma.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  out["all_pass"] = all_pass;
  write_text(cfg.output_dir + "/lemmas.json", out.dump(2) + "\n");

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_timing(cfg.output_dir, wall, 1);
  return all_pass;
}

// ---------------------------------------------------------------------------
// small utilities

void run_kbeta(int d, double beta) {
  ModelParams params;
  params.d = d;
  params.beta = beta;
  params.t = 1.0;
  params.validate();
  double se = 0.0;
  const double value = kbeta(d, beta, &se);
  std::printf("k_beta(d=%d, beta=%s) = %s\n", d, fmt_g17(beta).c_str(),
              fmt_g17(value).c_str());
  if (d == 1)
    std::printf("closed_form = %s\n", fmt_g17(kbeta_closed_form(beta)).c_str());
  else
    std::printf("quadrature_se = %s\n", fmt_g17(se).c_str());
}

bool run_noise_check(int n_cells, double h, double dt, double beta,
                     std::uint64_t n_samples, std::uint64_t seed) {
  NoiseGrid grid;
  grid.n_cells = n_cells;
  grid.h = h;
  grid.dt = dt;
  grid.validate();
  if (!(beta > 0.0) || !(beta < 1.0))
    throw ConfigError("noise check runs in d = 1, so beta must be in (0, 1)");
  if (n_samples < 1000) throw ConfigError("need at least 1000 samples");
  if (n_cells > 4096)
    throw ConfigError("dense oracle sampler is capped at 4096 cells");

  const std::vector<double> row = cell_covariance_row(grid, beta);
  const auto n = static_cast<std::size_t>(n_cells);

  // Empirical E[X_0 X_m] after n_samples draws; exact target dt * row[m].
  // Gaussian moments give Var(X_0 X_m) = C_00 C_mm + C_0m^2.
  auto worst_dev = [&](auto&& draw) {
    std::vector<double> acc(n, 0.0);
    for (std::uint64_t i = 0; i < n_samples; ++i) {
      const NoiseIncrement inc = draw(i);
      const double x0 = inc.values[0];
      for (std::size_t m = 0; m < n; ++m) acc[m] += x0 * inc.values[m];
    }
    double worst = 0.0;
    const double c00 = dt * row[0];
    for (std::size_t m = 0; m < n; ++m) {
      const double exact = dt * row[m];
      const double emp = acc[m] / static_cast<double>(n_samples);
      const double se =
          std::sqrt((c00 * c00 + exact * exact) /
                    static_cast<double>(n_samples));
      worst = std::max(worst, std::fabs(emp - exact) / se);
    }
    return worst;
  };

  CirculantSampler circulant(grid, beta);
  RngStream circ_rng(seed, 1);
  const double circ_dev =
      worst_dev([&](std::uint64_t i) { return circulant.sample(circ_rng, i); });

  const CholeskySampler dense(cell_covariance(grid, beta), n_cells);
  RngStream dense_rng(seed, 2);
  const double dense_dev =
      worst_dev([&](std::uint64_t i) { return dense.sample(dt, dense_rng, i); });

  const bool pass = circ_dev <= 5.0 && dense_dev <= 5.0;
  std::printf("circulant sampler: worst |emp - exact| = %.3f SE\n", circ_dev);
  std::printf("dense sampler:     worst |emp - exact| = %.3f SE\n", dense_dev);
  std::printf("clamped eigenvalues: %d\n", circulant.clamped_eigenvalues());
  std::printf("noise check: %s (threshold 5 SE, %llu samples, %d cells)\n",
              pass ? "PASS" : "FAIL",
              static_cast<unsigned long long>(n_samples), n_cells);
  return pass;
}

void run_fit_rate(const std::string& csv_path, const std::string& column) {
  std::FILE* f = std::fopen(csv_path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open: " + csv_path);
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
  std::fclose(f);

  std::vector<std::vector<std::string>> table;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t c = 0;
    while (true) {
      const std::size_t comma = line.find(',', c);
      cells.push_back(line.substr(c, comma - c));
      if (comma == std::string::npos) break;
      c = comma + 1;
    }
    table.push_back(std::move(cells));
  }
  if (table.size() < 2) throw ConfigError("no data rows in " + csv_path);

  const std::vector<std::string>& head = table[0];
  auto col_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < head.size(); ++i)
      if (head[i] == name) return i;
    throw ConfigError("column '" + name + "' not found in " + csv_path);
  };
  const std::size_t r_col = col_index("R");
  const std::size_t d_col = col_index(column);

  std::vector<double> R, dist;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].size() <= std::max(r_col, d_col))
      throw ConfigError("short row in " + csv_path);
    R.push_back(std::strtod(table[i][r_col].c_str(), nullptr));
    dist.push_back(std::strtod(table[i][d_col].c_str(), nullptr));
  }
  const RateFit fit = fit_rate(R, dist);
  std::printf("rows = %zu\n", R.size());
  std::printf("column = %s\n", column.c_str());
  std::printf("slope = %s\n", fmt_g17(fit.slope).c_str());
  std::printf("intercept = %s\n", fmt_g17(fit.intercept).c_str());
  std::printf("stderr_slope = %s\n", fmt_g17(fit.stderr_slope).c_str());
}

void run_report(const std::string& report_path) {
  std::FILE* f = std::fopen(report_path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open: " + report_path);
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
  std::fclose(f);

  const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("not a report.json: " + report_path);

  std::printf("kind:        %s\n", j.value("kind", std::string("?")).c_str());
  std::printf("sigma_mode:  %s\n",
              j.value("sigma_mode", std::string("?")).c_str());
  std::printf("replicas:    %d\n", j.value("replicas", 0));
  if (j.contains("positivity")) {
    const auto& p = j["positivity"];
    std::printf("positivity:  fraction %.6f, min %.6g, tainted %llu\n",
                p.value("fraction_nonnegative", 0.0),
                p.value("min_seen", 0.0),
                static_cast<unsigned long long>(
                    p.value("tainted_replicas", std::uint64_t{0})));
  }
  if (j.contains("field_mean")) {
    const auto& m = j["field_mean"];
    std::printf("field mean:  %.6f +/- %.6f (expected 1)\n",
                m.value("value", 0.0), m.value("se", 0.0));
  }
  if (j.contains("per_r"))
    for (const auto& e : j["per_r"]) {
      std::printf("R = %-6g var/chaos1 = %.4f +/- %.4f", e.value("R", 0.0),
                  e.value("ratio_chaos1", 0.0),
                  e.value("ratio_chaos1_se", 0.0));
      if (e.contains("tv"))
        std::printf("  sup = %.5f  tv = %.5f  ks = %.5f",
                    e.value("sup_dist", 0.0), e.value("tv", 0.0),
                    e.value("kolmogorov", 0.0));
      std::printf("\n");
    }
  if (j.value("fit_valid", false)) {
    std::printf("tv rate:     slope %.4f +/- %.4f\n",
                j["tv_fit"].value("slope", 0.0),
                j["tv_fit"].value("stderr_slope", 0.0));
    std::printf("sup rate:    slope %.4f +/- %.4f\n",
                j["sup_fit"].value("slope", 0.0),
                j["sup_fit"].value("stderr_slope", 0.0));
  }
}

} // namespace pam
