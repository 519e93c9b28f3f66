#include "pam/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pam/errors.hpp"
#include "pam/quadrature.hpp"
#include "pam/sobol.hpp"

namespace pam {

void ModelParams::validate() const {
  if (d != 1 && d != 2)
    throw ConfigError("ModelParams: d must be 1 or 2");
  const double bmax = d < 2 ? 1.0 : 2.0;
  if (!(beta > 0.0 && beta < bmax)) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "ModelParams: beta must lie in (0, %g) for d=%d", bmax, d);
    throw ConfigError(buf);
  }
  if (!(t > 0.0)) throw ConfigError("ModelParams: t must be positive");
}

double heat_kernel(double tau, const double* x, int d) {
  if (!(tau > 0.0)) throw std::domain_error("heat_kernel: tau must be positive");
  double sq = 0.0;
  for (int j = 0; j < d; ++j) sq += x[j] * x[j];
  return std::exp(-sq / (2.0 * tau)) *
         std::pow(2.0 * M_PI * tau, -0.5 * static_cast<double>(d));
}

namespace {

// Antiderivative stack of |.|^{-beta}: G''(u) = u^{-beta} on u > 0.
inline double G(double u, double beta) {
  return std::pow(u, 2.0 - beta) / ((1.0 - beta) * (2.0 - beta));
}

} // namespace

double riesz_cell_integral(double a, double h, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("riesz_cell_integral: beta must lie in (0,1)");
  if (!(h > 0.0)) throw std::domain_error("riesz_cell_integral: h must be positive");
  if (a < 0.0) throw std::domain_error("riesz_cell_integral: offset must be nonnegative");
  const double m = a / h;
  if (std::fabs(m - std::round(m)) > 1e-9)
    throw std::domain_error("riesz_cell_integral: offset must be a multiple of h");
  if (std::round(m) == 0.0) return 2.0 * G(h, beta);
  return G(a + h, beta) - 2.0 * G(a, beta) + G(a - h, beta);
}

RieszCellTable RieszCellTable::build(double h, double beta, int n_offsets) {
  if (n_offsets < 1)
    throw std::domain_error("RieszCellTable: need at least one offset");
  RieszCellTable t;
  t.h = h;
  t.beta = beta;
  t.entries.reserve(static_cast<std::size_t>(n_offsets));
  for (int m = 0; m < n_offsets; ++m)
    t.entries.push_back(riesz_cell_integral(m * h, h, beta));
  return t;
}

double RieszCellTable::at(long offset) const {
  const std::size_t m = static_cast<std::size_t>(std::labs(offset));
  if (m >= entries.size())
    throw std::out_of_range("RieszCellTable: offset outside table");
  return entries[m];
}

double kbeta_closed_form(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("kbeta_closed_form: beta must lie in (0,1) for d=1");
  return std::pow(2.0, 3.0 - beta) / ((1.0 - beta) * (2.0 - beta));
}

double kbeta(int d, double beta, double* se) {
  if (se != nullptr) *se = 0.0;
  if (d == 1) {
    if (!(beta > 0.0 && beta < 1.0))
      throw std::domain_error("kbeta: beta must lie in (0,1) for d=1");
    // Difference-density reduction: k = 2 int_0^2 (2-u) u^{-beta} du.
    const Integrand f = [beta](double u) {
      return (2.0 - u) * std::pow(u, -beta);
    };
    return 2.0 * integrate_singular(f, {0.0, 2.0}, 0.0, 1e-12);
  }
  if (d == 2) {
    if (!(beta > 0.0 && beta < 2.0))
      throw std::domain_error("kbeta: beta must lie in (0,2) for d=2");
    // Polar reduction of int_{[-2,2]^2} (2-|u1|)(2-|u2|) |u|^{-beta} du with
    // the radial integral done in closed form; QMC is over (alpha, w) with
    // the r^{1-beta} density flattened by w -> rmax * w^{1/(2-beta)}.
    const double p = 2.0 - beta;
    const auto f = [beta, p](const double* u) {
      const double alpha = u[0] * (M_PI / 4.0);
      const double c = std::cos(alpha), s = std::sin(alpha);
      const double rmax = 2.0 / c; // alpha <= pi/4 so cos is the max
      const double r = rmax * std::pow(u[1], 1.0 / p);
      const double g = (2.0 - r * c) * (2.0 - r * s);
      return (M_PI / 4.0) * (std::pow(rmax, p) / p) * g;
    };
    const QmcEstimate est = qmc_mean(2, 1u << 18, 8, 0x6b657461u, 2, f);
    if (se != nullptr) *se = 8.0 * est.se;
    return 8.0 * est.mean;
  }
  throw std::domain_error("kbeta: d must be 1 or 2");
}

double riesz_fourier_constant(int d, double beta) {
  if (!(d >= 1)) throw std::domain_error("riesz_fourier_constant: d must be >= 1");
  if (!(beta > 0.0 && beta < static_cast<double>(d)))
    throw std::domain_error("riesz_fourier_constant: beta must lie in (0,d)");
  return std::pow(2.0, d - beta) * std::pow(M_PI, 0.5 * d) *
         std::tgamma(0.5 * (d - beta)) / std::tgamma(0.5 * beta);
}

double riesz_inverse_transform(double beta, double x, double t) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("riesz_inverse_transform: beta must lie in (0,1)");
  if (!(x > 0.0 && t > 0.0))
    throw std::domain_error("riesz_inverse_transform: x and t must be positive");
  const double c = riesz_fourier_constant(1, beta);
  const Integrand head = [beta, t, x](double xi) {
    return std::pow(xi, beta - 1.0) * std::exp(-0.5 * t * xi * xi) *
           std::cos(x * xi);
  };
  const Integrand tail_env = [beta, t](double xi) {
    return std::pow(xi, beta - 1.0) * std::exp(-0.5 * t * xi * xi);
  };
  const double split = 1.0;
  const double head_val = integrate_singular(head, {0.0, split}, 0.0, 1e-11);
  const double tail_val = integrate_cos_to_inf(tail_env, split, x, 1e-11);
  return (c / M_PI) * (head_val + tail_val);
}

} // namespace pam
