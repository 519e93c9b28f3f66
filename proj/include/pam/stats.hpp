#pragma once

// Distance estimators between a Monte Carlo sample and the standard normal
// law: kernel density sup-distance, total variation on a fixed grid, and the
// exact Kolmogorov statistic.  A weighted log-log least-squares fit extracts
// empirical decay rates across box sizes.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pam {

// Fixed evaluation grid.  Both the estimated density and the normal density
// are negligible beyond |z| = 5, so the sup over the real line is
// approximated by the sup over this grid.
inline constexpr double kKdeGridLo = -5.0;
inline constexpr double kKdeGridStep = 0.01;
inline constexpr std::size_t kKdeGridSize = 1001;

inline double kde_grid_point(std::size_t j) {
  return kKdeGridLo + kKdeGridStep * static_cast<double>(j);
}

struct KdeResult {
  double bandwidth = 0.0;
  std::vector<double> density; // kKdeGridSize values, nonnegative
};

// Gaussian-kernel density estimate on the fixed grid.  bandwidth <= 0 selects
// the Silverman rule 0.9 * min(sd, IQR/1.34) * n^{-1/5}; a zero IQR falls
// back to the standard deviation.  Requires n >= 100; zero spread is an
// error.
KdeResult kde_density(const std::vector<double>& samples,
                      double bandwidth = 0.0);

struct SupDistance {
  double value = 0.0;
  double at = 0.0; // grid point attaining the max
};

// max_j |density[j] - phi(grid_j)| over the fixed grid.
SupDistance sup_distance_to_phi(const std::vector<double>& density);

// (1/2) * trapezoid integral of |density - phi| over the fixed grid.
double tv_distance_to_phi(const std::vector<double>& density);

// sup_z |empirical CDF - Phi(z)|, evaluated exactly at the sorted sample
// points.  Requires n >= 2.
double kolmogorov_distance(std::vector<double> samples);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

// Weighted least squares of log(distance) on log(R).  Needs >= 3 points and
// strictly positive distances; empty weights mean equal weights.  The
// standard error comes from the weighted residual variance with n - 2
// degrees of freedom.
RateFit fit_rate(const std::vector<double>& R,
                 const std::vector<double>& distance,
                 const std::vector<double>& weights = {});

struct BootstrapCi {
  double lo = 0.0;
  double hi = 0.0;
};

struct DistanceEntry {
  double R = 0.0;
  std::size_t n = 0;
  double sup_dist = 0.0;
  BootstrapCi sup_ci;
  double sup_at = 0.0;
  double tv = 0.0;
  BootstrapCi tv_ci;
  double kolmogorov = 0.0;
  BootstrapCi ks_ci;
  double bandwidth = 0.0;
};

// All three distances for one sample set, with percentile bootstrap CIs
// (2.5% / 97.5%) from n_bootstrap resamples.  Resamples reuse the bandwidth
// selected on the full sample, so the CI reflects sampling noise at a fixed
// smoothing scale.  Resample r draws from RngStream(seed, stream, lane = r);
// the result is independent of thread count by construction.
DistanceEntry distance_entry(double R, const std::vector<double>& z,
                             double bandwidth, int n_bootstrap,
                             std::uint64_t seed, std::uint64_t stream);

struct DistanceReport {
  std::vector<DistanceEntry> entries;
  RateFit tv_fit;
  RateFit sup_fit;
  bool fit_valid = false; // needs >= 3 entries with positive distances
};

// Assembles the per-R entries and fits decay rates for the TV and sup
// distances.  Fit weights are (distance / se)^2 with se taken from the
// bootstrap CI width, i.e. inverse variance in log space; entries with a
// degenerate CI fall back to equal weights.
DistanceReport build_distance_report(std::vector<DistanceEntry> entries);

} // namespace pam
