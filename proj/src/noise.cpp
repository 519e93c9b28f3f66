#include "pam/noise.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "pam/errors.hpp"
#include "pam/kernels.hpp"

namespace pam {

void NoiseGrid::validate() const {
  if (n_cells < 8 || (n_cells & (n_cells - 1)) != 0)
    throw ConfigError("NoiseGrid: n_cells must be a power of two >= 8");
  if (!(h > 0.0)) throw ConfigError("NoiseGrid: h must be positive");
  if (!(dt > 0.0)) throw ConfigError("NoiseGrid: dt must be positive");
}

std::vector<double> cell_covariance_row(const NoiseGrid& grid, double beta) {
  grid.validate();
  const int n = grid.n_cells;
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const int image = std::min(m, n - m);
    row[static_cast<std::size_t>(m)] =
        riesz_cell_integral(image * grid.h, grid.h, beta);
  }
  return row;
}

std::vector<double> cell_covariance(const NoiseGrid& grid, double beta) {
  const std::vector<double> row = cell_covariance_row(grid, beta);
  const int n = grid.n_cells;
  std::vector<double> cov(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int off = i - j;
      if (off < 0) off += n;
      cov[static_cast<std::size_t>(i) * n + j] = row[static_cast<std::size_t>(off)];
    }
  return cov;
}

// ---------------------------------------------------------------- cholesky

CholeskySampler::CholeskySampler(std::vector<double> cov, int n, double jitter)
    : n_(n), chol_(std::move(cov)) {
  if (n < 1 || chol_.size() != static_cast<std::size_t>(n) * n)
    throw ConfigError("CholeskySampler: matrix size mismatch");
  if (jitter != 0.0)
    for (int i = 0; i < n; ++i) chol_[static_cast<std::size_t>(i) * n + i] += jitter;

  // In-place LLT, tracking the most negative pivot for the error report.
  double worst_pivot = 0.0;
  int worst_index = -1;
  for (int j = 0; j < n; ++j) {
    double d = chol_[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = chol_[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (d <= 0.0) {
      if (d < worst_pivot) {
        worst_pivot = d;
        worst_index = j;
      }
      if (worst_index < 0) worst_index = j;
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "CholeskySampler: indefinite matrix, most negative pivot "
                    "%.6e at index %d",
                    worst_pivot, worst_index);
      throw NumericalError(buf);
    }
    const double dj = std::sqrt(d);
    chol_[static_cast<std::size_t>(j) * n + j] = dj;
    for (int i = j + 1; i < n; ++i) {
      double s = chol_[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= chol_[static_cast<std::size_t>(i) * n + k] *
             chol_[static_cast<std::size_t>(j) * n + k];
      chol_[static_cast<std::size_t>(i) * n + j] = s / dj;
    }
    for (int k = j + 1; k < n; ++k) chol_[static_cast<std::size_t>(j) * n + k] = 0.0;
  }
}

NoiseIncrement CholeskySampler::sample(double dt, RngStream& rng,
                                       std::uint64_t step) const {
  if (dt < 0.0) throw ConfigError("CholeskySampler: dt must be nonnegative");
  NoiseIncrement inc;
  inc.step = step;
  inc.values.assign(static_cast<std::size_t>(n_), 0.0);
  if (dt == 0.0) return inc;
  std::vector<double> z(static_cast<std::size_t>(n_));
  rng.normal_fill(z.data(), z.size());
  const double scale = std::sqrt(dt);
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    const double* li = &chol_[static_cast<std::size_t>(i) * n_];
    for (int k = 0; k <= i; ++k) acc += li[k] * z[static_cast<std::size_t>(k)];
    inc.values[static_cast<std::size_t>(i)] = scale * acc;
  }
  return inc;
}

// --------------------------------------------------------------- circulant

CirculantSampler::CirculantSampler(const NoiseGrid& grid, double beta)
    : grid_(grid),
      fft_(static_cast<std::size_t>(grid.n_cells)),
      scratch_real_(static_cast<std::size_t>(grid.n_cells)),
      scratch_cplx_(static_cast<std::size_t>(grid.n_cells) / 2 + 1) {
  const std::vector<double> row = cell_covariance_row(grid, beta);
  const std::size_t n = static_cast<std::size_t>(grid.n_cells);
  const std::size_t half = n / 2 + 1;
  fft_.forward(row.data(), scratch_cplx_.data());

  double max_eig = 0.0;
  for (std::size_t k = 0; k < half; ++k)
    max_eig = std::max(max_eig, scratch_cplx_[k].real());
  // The row is real and even, so the spectrum must be real.
  for (std::size_t k = 0; k < half; ++k)
    if (std::fabs(scratch_cplx_[k].imag()) > 1e-12 * std::max(1.0, max_eig))
      throw NumericalError("CirculantSampler: spectrum has imaginary part");

  const double floor = -1e-10 * max_eig;
  sqrt_eig_.resize(half);
  eig_.resize(n);
  for (std::size_t k = 0; k < half; ++k) {
    double lam = scratch_cplx_[k].real();
    if (lam < floor) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "CirculantSampler: eigenvalue %.6e below floor %.6e at "
                    "mode %zu",
                    lam, floor, k);
      throw NumericalError(buf);
    }
    if (lam < 0.0) {
      lam = 0.0;
      ++clamped_;
    }
    sqrt_eig_[k] = std::sqrt(lam);
    eig_[k] = lam;
    if (k > 0 && k < n - k) eig_[n - k] = lam;
  }
}

NoiseIncrement CirculantSampler::sample(RngStream& rng, std::uint64_t step) {
  const std::size_t n = static_cast<std::size_t>(grid_.n_cells);
  const std::size_t half = n / 2 + 1;
  NoiseIncrement inc;
  inc.step = step;
  inc.values.resize(n);
  rng.normal_fill(scratch_real_.data(), n);
  fft_.forward(scratch_real_.data(), scratch_cplx_.data());
  // X = (1/n) F^H diag(sqrt(lambda)) F xi has covariance exactly the
  // circulant matrix; fold the 1/n and sqrt(dt) into the multiplier.
  const double scale = std::sqrt(grid_.dt) / static_cast<double>(n);
  for (std::size_t k = 0; k < half; ++k) scratch_cplx_[k] *= sqrt_eig_[k] * scale;
  fft_.backward(scratch_cplx_.data(), inc.values.data());
  return inc;
}

// -------------------------------------------------------------------- dump

void write_noise_dump(const std::string& path, const NoiseGrid& grid,
                      const NoiseIncrement& inc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("write_noise_dump: cannot open " + path);
  char header[32] = {};
  std::memcpy(header, "PAMNOISE", 8);
  const std::uint32_t d = 1;
  const std::uint32_t n = static_cast<std::uint32_t>(grid.n_cells);
  std::memcpy(header + 8, &d, 4);
  std::memcpy(header + 12, &n, 4);
  std::memcpy(header + 16, &grid.dt, 8);
  std::memcpy(header + 24, &inc.step, 8);
  out.write(header, sizeof header);
  out.write(reinterpret_cast<const char*>(inc.values.data()),
            static_cast<std::streamsize>(inc.values.size() * sizeof(double)));
  if (!out) throw ConfigError("write_noise_dump: write failed for " + path);
}

} // namespace pam
