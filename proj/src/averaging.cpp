#include "pam/averaging.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "pam/errors.hpp"
#include "pam/quadrature.hpp"
#include "pam/simd.hpp"

namespace pam {

double spatial_integral(const Field& field, double R) {
  const std::size_t n = field.values.size();
  const double h = field.h;
  if (!(R > 0.0)) throw ConfigError("spatial_integral: R must be positive");
  const double m_real = R / h;
  const long m = std::lround(m_real);
  if (std::fabs(m_real - static_cast<double>(m)) > 1e-9)
    throw ConfigError("spatial_integral: R must be a multiple of h");
  if (2 * m > static_cast<long>(n))
    throw ConfigError("spatial_integral: Q_R does not fit inside the torus");
  // Cells with centers inside (-R, R): indices [n/2 - m, n/2 + m).
  const std::size_t lo = n / 2 - static_cast<std::size_t>(m);
  return h * simd::sum(field.values.data() + lo, static_cast<std::size_t>(2 * m));
}

const char* sigma_mode_name(SigmaMode mode) {
  switch (mode) {
    case SigmaMode::chaos1: return "chaos1";
    case SigmaMode::limit: return "limit";
    default: return "empirical";
  }
}

SigmaMode sigma_mode_from_name(const std::string& name) {
  if (name == "empirical") return SigmaMode::empirical;
  if (name == "chaos1") return SigmaMode::chaos1;
  if (name == "limit") return SigmaMode::limit;
  throw ConfigError("unknown sigma mode: " + name);
}

ScaledSamples center_and_scale(const AverageSamples& samples, SigmaMode mode) {
  const std::size_t n = samples.raw.size();
  if (n < 2) throw ConfigError("center_and_scale: need at least two replicas");
  const double mean_exact = 2.0 * samples.R; // (2R)^d with d = 1

  double sigma = 0.0;
  switch (mode) {
    case SigmaMode::empirical: {
      double m = 0.0;
      for (double v : samples.raw) m += v;
      m /= static_cast<double>(n);
      double ss = 0.0;
      for (double v : samples.raw) ss += (v - m) * (v - m);
      sigma = std::sqrt(ss / static_cast<double>(n - 1));
      break;
    }
    case SigmaMode::chaos1:
      sigma = std::sqrt(chaos1_variance(samples.R, samples.t, samples.params));
      break;
    case SigmaMode::limit:
      sigma = std::sqrt(variance_limit(samples.R, samples.t, samples.params));
      break;
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw NumericalError("center_and_scale: degenerate variance");

  ScaledSamples out;
  out.sigma = sigma;
  out.mode = mode;
  out.z.reserve(n);
  // Empirical mode centers on the sample mean so the output is an exact
  // z-score; oracle modes center on the exact mean (2R)^d.
  const double center = mode == SigmaMode::empirical
                            ? [&] {
                                double m = 0.0;
                                for (double v : samples.raw) m += v;
                                return m / static_cast<double>(n);
                              }()
                            : mean_exact;
  for (double v : samples.raw) out.z.push_back((v - center) / sigma);
  return out;
}

double chaos1_variance(double R, double t, const ModelParams& params) {
  params.validate();
  if (!(R > 0.0)) throw ConfigError("chaos1_variance: R must be positive");
  if (t == 0.0) return 0.0;
  if (!(t > 0.0)) throw ConfigError("chaos1_variance: t must be nonnegative");
  const double beta = params.beta;
  const double c = riesz_fourier_constant(params.d, beta);

  if (params.d == 1) {
    // (c/pi) int_0^inf 4 sin^2(xi R) (1 - e^{-t xi^2}) xi^{beta-5} dxi,
    // split at the box scale 1/R; the tail uses sin^2 = (1 - cos)/2 so the
    // oscillatory half goes through the Fourier rule.
    const Integrand head = [R, t, beta](double xi) {
      if (xi < 1e-100) return 0.0;
      const double s = std::sin(xi * R);
      return 4.0 * s * s * (-std::expm1(-t * xi * xi)) *
             std::pow(xi, beta - 5.0);
    };
    const Integrand envelope = [t, beta](double xi) {
      return 2.0 * (-std::expm1(-t * xi * xi)) * std::pow(xi, beta - 5.0);
    };
    const double split = 1.0 / R;
    const double h = integrate_singular(head, {0.0, split}, 0.0, 1e-10);
    const double smooth = integrate_to_inf(envelope, split, 0.0, 1e-10);
    const double osc = integrate_cos_to_inf(envelope, split, 2.0 * R, 1e-12);
    return c / M_PI * (h + smooth - osc);
  }

  // d = 2: tensor quadrature over the first quadrant (integrand is even in
  // each coordinate), relative tolerance 1e-6.
  const auto one_hat_sq = [R](double xi) {
    if (std::fabs(xi) < 1e-100) return 4.0 * R * R;
    const double s = 2.0 * std::sin(xi * R) / xi;
    return s * s;
  };
  const Integrand outer = [&](double xi1) {
    const Integrand inner = [&, xi1](double xi2) {
      const double r2 = xi1 * xi1 + xi2 * xi2;
      if (r2 < 1e-200) return 0.0;
      return one_hat_sq(xi1) * one_hat_sq(xi2) * (-std::expm1(-t * r2)) *
             std::pow(r2, 0.5 * (beta - 2.0) - 1.0);
    };
    const double split = 1.0 / R;
    return integrate_singular(inner, {0.0, split}, 0.0, 1e-8) +
           integrate_to_inf(inner, split, 0.0, 1e-8);
  };
  const double split = 1.0 / R;
  const double quadrant = integrate_singular(outer, {0.0, split}, 0.0, 1e-7) +
                          integrate_to_inf(outer, split, 0.0, 1e-7);
  return std::pow(2.0 * M_PI, -2.0) * c * 4.0 * quadrant;
}

double variance_limit(double R, double t, const ModelParams& params) {
  params.validate();
  if (!(R > 0.0)) throw ConfigError("variance_limit: R must be positive");
  if (t == 0.0) return 0.0;
  const double k = params.d == 1 ? kbeta_closed_form(params.beta)
                                 : kbeta(params.d, params.beta);
  return k * t * std::pow(R, 2.0 * params.d - params.beta);
}

} // namespace pam
