#pragma once

// Driving-noise increments on the periodic grid: centered Gaussian vectors
// indexed by cells with covariance dt * C, where C_{jk} is the exact Riesz
// cell-pair integral at the periodic cell offset. Two samplers share the
// same target law: dense Cholesky (oracle, small grids) and circulant
// embedding via FFT (production path).

#include <cstdint>
#include <string>
#include <vector>

#include "pam/fft.hpp"
#include "pam/rng.hpp"

namespace pam {

struct NoiseGrid {
  int n_cells = 0; // cells per dimension, power of two
  double h = 0.0;  // cell width
  double dt = 0.0; // time step

  double L() const { return 0.5 * n_cells * h; } // torus is [-L, L]

  // Throws ConfigError on violation: n_cells a power of two >= 8, h > 0,
  // dt > 0.
  void validate() const;
};

struct NoiseIncrement {
  std::uint64_t step = 0;
  std::vector<double> values; // W((t_n, t_n+1] x cell_j), one per cell
};

// First row of the periodized covariance: entry m is the cell integral at
// the nearest-image offset min(m, n-m).
std::vector<double> cell_covariance_row(const NoiseGrid& grid, double beta);

// Dense n x n covariance (row-major), built from the same periodized row.
std::vector<double> cell_covariance(const NoiseGrid& grid, double beta);

// Exact sampler via dense Cholesky; intended for n <= 4096.
class CholeskySampler {
public:
  // cov: n x n row-major; jitter is added to the diagonal before factoring
  // (caller policy; keep it <= 1e-12 * trace). Throws NumericalError naming
  // the most negative pivot when the matrix is numerically indefinite.
  CholeskySampler(std::vector<double> cov, int n, double jitter = 0.0);

  int size() const { return n_; }

  // Exact N(0, dt * C) draw; deterministic per stream state.
  NoiseIncrement sample(double dt, RngStream& rng, std::uint64_t step = 0) const;

  // Lower-triangular factor, row-major (tests use it for whitening).
  const std::vector<double>& factor() const { return chol_; }

private:
  int n_;
  std::vector<double> chol_;
};

// Stationary sampler via circulant diagonalization: eigenvalues are the FFT
// of the periodized covariance row. Owns its FFT workspace, so one instance
// serves one thread; distinct replicas use disjoint stream keys.
class CirculantSampler {
public:
  // Throws NumericalError if an eigenvalue falls below -1e-10 * max;
  // negative values above that floor are clamped to zero and counted.
  CirculantSampler(const NoiseGrid& grid, double beta);

  const NoiseGrid& grid() const { return grid_; }
  int clamped_eigenvalues() const { return clamped_; }
  const std::vector<double>& eigenvalues() const { return eig_; }

  // N(0, dt * C_circulant) draw with dt from the grid.
  NoiseIncrement sample(RngStream& rng, std::uint64_t step = 0);

private:
  NoiseGrid grid_;
  std::vector<double> eig_;      // full eigenvalue spectrum, size n
  std::vector<double> sqrt_eig_; // sqrt of clamped eigenvalues, size n/2+1
  int clamped_ = 0;
  RealFft fft_;
  std::vector<double> scratch_real_;
  std::vector<std::complex<double>> scratch_cplx_;
};

// Debug dump: 32-byte header (magic "PAMNOISE", d, n_cells, dt, step) then
// the values as little-endian doubles.
void write_noise_dump(const std::string& path, const NoiseGrid& grid,
                      const NoiseIncrement& inc);

} // namespace pam
