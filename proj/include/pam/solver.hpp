#pragma once

// Semi-implicit Euler scheme for the multiplicative-noise heat equation on
// the periodic grid: diffusion (1/2)-Laplacian treated implicitly via FFT
// diagonalization, noise applied explicitly at the left endpoint (Ito form):
//
//   u^{n+1} = (I - (dt/2) L_h)^{-1} (u^n + u^n .* dw / h^d)
//
// with L_h the standard periodic second-difference stencil. Replicas are
// independent tasks over disjoint RNG keys; each worker thread owns a
// Workspace.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pam/kernels.hpp"
#include "pam/noise.hpp"

namespace pam {

struct SolverConfig {
  NoiseGrid grid;
  ModelParams params;
  int nt = 0;          // nt * grid.dt == params.t
  double r_max = 0.0;  // largest averaging box half-width
  double margin = 0.0; // L - r_max
  bool zero_noise = false;
  bool clamp_negative = false;
  std::uint64_t master_seed = 0;

  // Throws ConfigError on violation: d == 1, dt <= h (stability envelope),
  // margin >= 6 sqrt(t), L - r_max >= margin, nt * dt == t.
  void validate() const;
};

struct Field {
  double h = 0.0;
  double time = 0.0;
  std::vector<double> values;

  // Cell centers are x_i = -L + (i + 1/2) h.
  double domain_half_width() const { return 0.5 * h * static_cast<double>(values.size()); }
};

struct PositivityReport {
  double fraction_nonnegative = 0.0;
  double min_value = 0.0;
};

// Exact count over the final field; never mutates.
PositivityReport positivity_report(const Field& field);

// Extended per-replica diagnostics gathered while stepping.
struct ReplicaStats {
  double min_seen = 0.0;              // over all steps and cells
  std::uint64_t negative_cell_steps = 0;
  std::uint64_t clamped_count = 0;
  bool tainted = false;               // clamping was applied
};

class Solver {
public:
  explicit Solver(SolverConfig config);

  const SolverConfig& config() const { return config_; }

  // Per-thread mutable state: noise sampler, FFT, scratch buffers. The type
  // stays private to the implementation; the deleter keeps the handle
  // destructible in other translation units.
  class Workspace;
  struct WorkspaceDeleter {
    void operator()(Workspace* ws) const;
  };
  using WorkspacePtr = std::unique_ptr<Workspace, WorkspaceDeleter>;
  WorkspacePtr make_workspace() const;

  // One scheme step in place; dw must come from the matching grid.
  // Throws NumericalError (with the step index) on non-finite output.
  void step(Field& field, const NoiseIncrement& dw, Workspace& ws,
            ReplicaStats* stats = nullptr) const;

  // Full trajectory for one replica from u == 1 to t = nt * dt. Noise for
  // step k is drawn from stream (master_seed, replica_id, lane = k).
  Field run_replica(std::uint64_t replica_id, Workspace& ws,
                    ReplicaStats* stats = nullptr) const;

private:
  SolverConfig config_;
  std::vector<double> spectral_mult_; // 1 / (n (1 + dt/2 lambda_m))
};

// Snapshot dump, same binary layout as noise dumps with magic "PAMFIELD"
// and the time index in the final header word.
void write_field_dump(const std::string& path, const Field& field,
                      std::uint64_t time_index);

} // namespace pam
