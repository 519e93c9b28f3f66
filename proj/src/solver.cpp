#include "pam/solver.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "pam/errors.hpp"
#include "pam/simd.hpp"

namespace pam {

void SolverConfig::validate() const {
  grid.validate();
  params.validate();
  if (params.d != 1)
    throw ConfigError("SolverConfig: the time stepper supports d = 1 only");
  if (grid.dt > grid.h) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "SolverConfig: dt=%g exceeds the stability envelope dt <= "
                  "h=%g",
                  grid.dt, grid.h);
    throw ConfigError(buf);
  }
  if (nt < 1) throw ConfigError("SolverConfig: nt must be >= 1");
  if (std::fabs(nt * grid.dt - params.t) > 1e-9 * std::max(1.0, params.t))
    throw ConfigError("SolverConfig: nt * dt must equal t");
  const double min_margin = 6.0 * std::sqrt(params.t);
  if (margin < min_margin) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "SolverConfig: margin=%g below 6*sqrt(t)=%g; wrap-around "
                  "contamination would exceed the design floor",
                  margin, min_margin);
    throw ConfigError(buf);
  }
  if (grid.L() - r_max < margin - 1e-12)
    throw ConfigError("SolverConfig: domain too small for r_max + margin");
}

PositivityReport positivity_report(const Field& field) {
  PositivityReport rep;
  if (field.values.empty()) return rep;
  std::size_t nonneg = 0;
  double mn = field.values[0];
  for (double v : field.values) {
    if (v >= 0.0) ++nonneg;
    mn = std::min(mn, v);
  }
  rep.fraction_nonnegative =
      static_cast<double>(nonneg) / static_cast<double>(field.values.size());
  rep.min_value = mn;
  return rep;
}

// ---------------------------------------------------------------- solver

class Solver::Workspace {
public:
  Workspace(const NoiseGrid& grid, double beta)
      : sampler(grid, beta),
        fft(static_cast<std::size_t>(grid.n_cells)),
        tmp(static_cast<std::size_t>(grid.n_cells)),
        spec(static_cast<std::size_t>(grid.n_cells) / 2 + 1) {}

  CirculantSampler sampler;
  RealFft fft;
  std::vector<double> tmp;
  std::vector<std::complex<double>> spec;
};

Solver::Solver(SolverConfig config) : config_(std::move(config)) {
  config_.validate();
  const int n = config_.grid.n_cells;
  const double h = config_.grid.h;
  const double dt = config_.grid.dt;
  spectral_mult_.resize(static_cast<std::size_t>(n) / 2 + 1);
  for (std::size_t m = 0; m < spectral_mult_.size(); ++m) {
    const double s = std::sin(M_PI * static_cast<double>(m) / n);
    const double lambda = 4.0 / (h * h) * s * s;
    spectral_mult_[m] = 1.0 / (static_cast<double>(n) * (1.0 + 0.5 * dt * lambda));
  }
}

void Solver::WorkspaceDeleter::operator()(Workspace* ws) const { delete ws; }

Solver::WorkspacePtr Solver::make_workspace() const {
  return WorkspacePtr(new Workspace(config_.grid, config_.params.beta));
}

void Solver::step(Field& field, const NoiseIncrement& dw, Workspace& ws,
                  ReplicaStats* stats) const {
  const std::size_t n = field.values.size();
  if (dw.values.size() != n)
    throw ConfigError("Solver::step: noise and field sizes differ");
  const double inv_hd = 1.0 / config_.grid.h; // d = 1
  simd::noise_multiply(field.values.data(), dw.values.data(), inv_hd,
                       ws.tmp.data(), n);
  ws.fft.forward(ws.tmp.data(), ws.spec.data());
  for (std::size_t m = 0; m < ws.spec.size(); ++m) ws.spec[m] *= spectral_mult_[m];
  ws.fft.backward(ws.spec.data(), field.values.data());
  field.time += config_.grid.dt;

  double mn = field.values[0];
  double mx = field.values[0];
  std::uint64_t neg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = field.values[i];
    if (v < 0.0) {
      ++neg;
      if (config_.clamp_negative) {
        field.values[i] = 0.0;
        v = 0.0;
        if (stats != nullptr) ++stats->clamped_count;
      }
    }
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  if (!std::isfinite(mn) || !std::isfinite(mx)) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "Solver::step: non-finite field at time %.6g", field.time);
    throw NumericalError(buf);
  }
  if (stats != nullptr) {
    stats->min_seen = std::min(stats->min_seen, mn);
    stats->negative_cell_steps += neg;
    if (config_.clamp_negative && neg > 0) stats->tainted = true;
  }
}

Field Solver::run_replica(std::uint64_t replica_id, Workspace& ws,
                          ReplicaStats* stats) const {
  Field field;
  field.h = config_.grid.h;
  field.time = 0.0;
  field.values.assign(static_cast<std::size_t>(config_.grid.n_cells), 1.0);
  if (stats != nullptr) {
    *stats = ReplicaStats{};
    stats->min_seen = 1.0;
  }
  NoiseIncrement zero;
  if (config_.zero_noise)
    zero.values.assign(field.values.size(), 0.0);
  for (int k = 0; k < config_.nt; ++k) {
    if (config_.zero_noise) {
      zero.step = static_cast<std::uint64_t>(k);
      step(field, zero, ws, stats);
    } else {
      RngStream rng(config_.master_seed, replica_id,
                    static_cast<std::uint64_t>(k));
      const NoiseIncrement dw =
          ws.sampler.sample(rng, static_cast<std::uint64_t>(k));
      step(field, dw, ws, stats);
    }
  }
  return field;
}

void write_field_dump(const std::string& path, const Field& field,
                      std::uint64_t time_index) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("write_field_dump: cannot open " + path);
  char header[32] = {};
  std::memcpy(header, "PAMFIELD", 8);
  const std::uint32_t d = 1;
  const std::uint32_t n = static_cast<std::uint32_t>(field.values.size());
  std::memcpy(header + 8, &d, 4);
  std::memcpy(header + 12, &n, 4);
  std::memcpy(header + 16, &field.time, 8);
  std::memcpy(header + 24, &time_index, 8);
  out.write(header, sizeof header);
  out.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  if (!out) throw ConfigError("write_field_dump: write failed for " + path);
}

} // namespace pam
