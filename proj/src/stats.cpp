#include "pam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pam/errors.hpp"
#include "pam/rng.hpp"
#include "pam/simd.hpp"

namespace pam {
namespace {

// Kernel support radius in bandwidths; the tail mass beyond it is below
// 1e-14 and invisible at the grid resolution.
constexpr double kKernelCut = 8.0;

double sample_sd(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

// Linear-interpolation quantile of a sorted vector (the common "type 7").
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double h = p * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double silverman_bandwidth(const std::vector<double>& sorted) {
  const double sd = sample_sd(sorted);
  const double iqr_scale =
      (quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25)) / 1.34;
  double scale = std::min(sd, iqr_scale);
  if (scale == 0.0) scale = std::max(sd, iqr_scale);
  if (!(scale > 0.0))
    throw NumericalError("kde_density: sample spread is zero");
  return 0.9 * scale * std::pow(static_cast<double>(sorted.size()), -0.2);
}

// Grid index range covered by the truncated kernel centered at x.
std::pair<long, long> kernel_span(double x, double b) {
  long jlo = static_cast<long>(
      std::ceil((x - kKernelCut * b - kKdeGridLo) / kKdeGridStep));
  long jhi = static_cast<long>(
      std::floor((x + kKernelCut * b - kKdeGridLo) / kKdeGridStep));
  jlo = std::max(jlo, 0L);
  jhi = std::min(jhi, static_cast<long>(kKdeGridSize) - 1);
  return {jlo, jhi};
}

// density[j] += w * exp(-((g_j - x)/b)^2 / 2) over the truncated span.
void accumulate_kernel(double x, double w, double b, double* density) {
  const auto [jlo, jhi] = kernel_span(x, b);
  for (long j = jlo; j <= jhi; ++j) {
    const double u = (kde_grid_point(static_cast<std::size_t>(j)) - x) / b;
    density[j] += w * std::exp(-0.5 * u * u);
  }
}

// Exactly uniform integer in [0, n): Lemire multiply-shift with rejection.
std::uint64_t bounded_u64(RngStream& rng, std::uint64_t n) {
  const std::uint64_t reject_below = (-n) % n;
  for (;;) {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(rng.next_u64()) * n;
    if (static_cast<std::uint64_t>(m) >= reject_below)
      return static_cast<std::uint64_t>(m >> 64);
  }
}

double sup_on_grid(const double* density) {
  double best = 0.0;
  for (std::size_t j = 0; j < kKdeGridSize; ++j) {
    const double d = std::fabs(density[j] - normal_pdf(kde_grid_point(j)));
    if (d > best) best = d;
  }
  return best;
}

double tv_on_grid(const double* density) {
  double acc = 0.0;
  double prev = std::fabs(density[0] - normal_pdf(kde_grid_point(0)));
  for (std::size_t j = 1; j < kKdeGridSize; ++j) {
    const double cur = std::fabs(density[j] - normal_pdf(kde_grid_point(j)));
    acc += 0.5 * (prev + cur) * kKdeGridStep;
    prev = cur;
  }
  return 0.5 * acc;
}

} // namespace

KdeResult kde_density(const std::vector<double>& samples, double bandwidth) {
  const std::size_t n = samples.size();
  if (n < 100) throw ConfigError("kde_density: need at least 100 samples");
  double b = bandwidth;
  if (b <= 0.0) {
    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    b = silverman_bandwidth(sorted);
  } else if (!std::isfinite(b)) {
    throw ConfigError("kde_density: bandwidth must be finite");
  }
  KdeResult out;
  out.bandwidth = b;
  out.density.assign(kKdeGridSize, 0.0);
  for (double x : samples) {
    if (!std::isfinite(x)) throw NumericalError("kde_density: non-finite sample");
    accumulate_kernel(x, 1.0, b, out.density.data());
  }
  const double norm =
      1.0 / (static_cast<double>(n) * b * std::sqrt(2.0 * M_PI));
  for (double& v : out.density) v *= norm;
  return out;
}

SupDistance sup_distance_to_phi(const std::vector<double>& density) {
  if (density.size() != kKdeGridSize)
    throw ConfigError("sup_distance_to_phi: wrong grid size");
  SupDistance best;
  best.at = kde_grid_point(0);
  for (std::size_t j = 0; j < kKdeGridSize; ++j) {
    const double z = kde_grid_point(j);
    const double d = std::fabs(density[j] - normal_pdf(z));
    if (d > best.value) {
      best.value = d;
      best.at = z;
    }
  }
  return best;
}

double tv_distance_to_phi(const std::vector<double>& density) {
  if (density.size() != kKdeGridSize)
    throw ConfigError("tv_distance_to_phi: wrong grid size");
  return tv_on_grid(density.data());
}

double kolmogorov_distance(std::vector<double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw ConfigError("kolmogorov_distance: need at least 2 samples");
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double F = normal_cdf(samples[i]);
    const double above = static_cast<double>(i + 1) / static_cast<double>(n) - F;
    const double below = F - static_cast<double>(i) / static_cast<double>(n);
    d = std::max(d, std::max(above, below));
  }
  return d;
}

RateFit fit_rate(const std::vector<double>& R,
                 const std::vector<double>& distance,
                 const std::vector<double>& weights) {
  const std::size_t n = R.size();
  if (distance.size() != n)
    throw ConfigError("fit_rate: R and distance sizes differ");
  if (!weights.empty() && weights.size() != n)
    throw ConfigError("fit_rate: weights size mismatch");
  if (n < 3) throw ConfigError("fit_rate: need at least 3 points");

  std::vector<double> x(n), y(n), w(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(R[i] > 0.0)) throw ConfigError("fit_rate: R values must be positive");
    if (!(distance[i] > 0.0))
      throw ConfigError("fit_rate: distances must be positive");
    x[i] = std::log(R[i]);
    y[i] = std::log(distance[i]);
    if (!weights.empty()) {
      if (!(weights[i] > 0.0))
        throw ConfigError("fit_rate: weights must be positive");
      w[i] = weights[i];
    }
  }

  double W = 0.0, xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    W += w[i];
    xbar += w[i] * x[i];
    ybar += w[i] * y[i];
  }
  xbar /= W;
  ybar /= W;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xbar;
    sxx += w[i] * dx * dx;
    sxy += w[i] * dx * (y[i] - ybar);
  }
  if (!(sxx > 0.0)) throw ConfigError("fit_rate: need distinct R values");

  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += w[i] * r * r;
  }
  fit.stderr_slope =
      std::sqrt(std::max(rss, 0.0) / (static_cast<double>(n - 2) * sxx));
  return fit;
}

DistanceEntry distance_entry(double R, const std::vector<double>& z,
                             double bandwidth, int n_bootstrap,
                             std::uint64_t seed, std::uint64_t stream) {
  const std::size_t n = z.size();
  if (n < 100) throw ConfigError("distance_entry: need at least 100 samples");
  if (n_bootstrap < 0)
    throw ConfigError("distance_entry: bootstrap count must be nonnegative");

  std::vector<double> sorted(z);
  std::sort(sorted.begin(), sorted.end());
  const double b = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(sorted);

  DistanceEntry e;
  e.R = R;
  e.n = n;
  e.bandwidth = b;

  const KdeResult kde = kde_density(z, b);
  const SupDistance sup = sup_distance_to_phi(kde.density);
  e.sup_dist = sup.value;
  e.sup_at = sup.at;
  e.tv = tv_distance_to_phi(kde.density);
  e.kolmogorov = kolmogorov_distance(sorted);

  if (n_bootstrap == 0) {
    e.sup_ci = {e.sup_dist, e.sup_dist};
    e.tv_ci = {e.tv, e.tv};
    e.ks_ci = {e.kolmogorov, e.kolmogorov};
    return e;
  }

  // Truncated kernel rows per sorted sample, flattened; a resample is then a
  // weighted sum of rows. Skipped when the table would be oversized.
  struct Row {
    std::uint32_t offset = 0;
    std::uint32_t len = 0;
    std::size_t start = 0;
  };
  std::vector<Row> rows;
  std::vector<double> flat;
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [jlo, jhi] = kernel_span(sorted[i], b);
    total += jhi >= jlo ? static_cast<std::size_t>(jhi - jlo + 1) : 0;
  }
  const bool use_rows = total <= std::size_t{8} << 20;
  if (use_rows) {
    rows.resize(n);
    flat.reserve(total);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [jlo, jhi] = kernel_span(sorted[i], b);
      rows[i].offset = static_cast<std::uint32_t>(jlo);
      rows[i].start = flat.size();
      for (long j = jlo; j <= jhi; ++j) {
        const double u =
            (kde_grid_point(static_cast<std::size_t>(j)) - sorted[i]) / b;
        flat.push_back(std::exp(-0.5 * u * u));
      }
      rows[i].len = static_cast<std::uint32_t>(flat.size() - rows[i].start);
    }
  }

  const double norm =
      1.0 / (static_cast<double>(n) * b * std::sqrt(2.0 * M_PI));
  std::vector<double> sup_s(static_cast<std::size_t>(n_bootstrap));
  std::vector<double> tv_s(static_cast<std::size_t>(n_bootstrap));
  std::vector<double> ks_s(static_cast<std::size_t>(n_bootstrap));
  std::vector<std::uint32_t> counts(n);
  std::vector<double> dens(kKdeGridSize);

  for (int r = 0; r < n_bootstrap; ++r) {
    RngStream rng(seed, stream, static_cast<std::uint64_t>(r));
    std::fill(counts.begin(), counts.end(), 0u);
    for (std::size_t i = 0; i < n; ++i) ++counts[bounded_u64(rng, n)];

    std::fill(dens.begin(), dens.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!counts[i]) continue;
      if (use_rows) {
        simd::axpy(static_cast<double>(counts[i]), flat.data() + rows[i].start,
                   dens.data() + rows[i].offset, rows[i].len);
      } else {
        accumulate_kernel(sorted[i], static_cast<double>(counts[i]), b,
                          dens.data());
      }
    }
    for (double& v : dens) v *= norm;
    sup_s[static_cast<std::size_t>(r)] = sup_on_grid(dens.data());
    tv_s[static_cast<std::size_t>(r)] = tv_on_grid(dens.data());

    double dks = 0.0;
    std::size_t cum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!counts[i]) continue;
      const double F = normal_cdf(sorted[i]);
      dks = std::max(dks, F - static_cast<double>(cum) / static_cast<double>(n));
      cum += counts[i];
      dks = std::max(dks, static_cast<double>(cum) / static_cast<double>(n) - F);
    }
    ks_s[static_cast<std::size_t>(r)] = dks;
  }

  const auto ci = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    return BootstrapCi{quantile_sorted(v, 0.025), quantile_sorted(v, 0.975)};
  };
  e.sup_ci = ci(sup_s);
  e.tv_ci = ci(tv_s);
  e.ks_ci = ci(ks_s);
  return e;
}

DistanceReport build_distance_report(std::vector<DistanceEntry> entries) {
  DistanceReport report;
  report.entries = std::move(entries);
  if (report.entries.size() < 3) return report;

  std::vector<double> R, tv, sup, tv_w, sup_w;
  bool positive = true;
  bool weights_ok = true;
  for (const DistanceEntry& e : report.entries) {
    if (!(e.tv > 0.0) || !(e.sup_dist > 0.0)) {
      positive = false;
      break;
    }
    R.push_back(e.R);
    tv.push_back(e.tv);
    sup.push_back(e.sup_dist);
    // CI width -> standard error of the distance -> variance of its log.
    const double tv_se = (e.tv_ci.hi - e.tv_ci.lo) / (2.0 * 1.959963984540054);
    const double sup_se =
        (e.sup_ci.hi - e.sup_ci.lo) / (2.0 * 1.959963984540054);
    if (!(tv_se > 0.0) || !(sup_se > 0.0)) weights_ok = false;
    tv_w.push_back(tv_se > 0.0 ? (e.tv / tv_se) * (e.tv / tv_se) : 1.0);
    sup_w.push_back(sup_se > 0.0 ? (e.sup_dist / sup_se) * (e.sup_dist / sup_se)
                                 : 1.0);
  }
  if (!positive) return report;

  report.tv_fit = fit_rate(R, tv, weights_ok ? tv_w : std::vector<double>{});
  report.sup_fit =
      fit_rate(R, sup, weights_ok ? sup_w : std::vector<double>{});
  report.fit_valid = true;
  return report;
}

} // namespace pam
