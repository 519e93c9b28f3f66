#pragma once

// Heat kernel, Riesz-kernel cell integrals, the box-pair constant k_beta,
// and the Fourier-side constant of the Riesz kernel. Everything here is a
// pure function; all Fourier formulas in the code base use the convention
// fhat(xi) = integral of f(x) exp(-i x.xi) dx, inverse carrying (2pi)^-d.

#include <vector>

namespace pam {

struct ModelParams {
  int d = 1;
  double beta = 0.5;
  double t = 1.0;

  // Throws ConfigError unless d in {1,2}, 0 < beta < min(2,d), t > 0.
  void validate() const;
};

// Gaussian heat kernel p_tau(x) = (2 pi tau)^{-d/2} exp(-|x|^2 / (2 tau)).
// Throws std::domain_error for tau <= 0.
double heat_kernel(double tau, const double* x, int d);

inline double heat_kernel1(double tau, double x) {
  return heat_kernel(tau, &x, 1);
}

// Exact value of the cell-pair integral
// int_0^h int_0^h |x - y + a|^{-beta} dx dy   (d = 1),
// for cell offset a = m*h, m >= 0. Throws std::domain_error outside
// 0 < beta < 1 or when a is not a multiple of h.
double riesz_cell_integral(double a, double h, double beta);

// Offset-indexed table of cell-pair integrals. Entries are positive,
// symmetric in offset sign, and decreasing in |offset|.
struct RieszCellTable {
  double h = 0.0;
  double beta = 0.0;
  std::vector<double> entries; // entries[m] for offset m*h

  static RieszCellTable build(double h, double beta, int n_offsets);
  double at(long offset) const; // |offset| < entries.size()
};

// Closed form of k_beta in d = 1: 2^{3-beta} / ((1-beta)(2-beta)).
double kbeta_closed_form(double beta);

// k_beta = int over Q_1^2 of |x1 - x2|^{-beta}. d = 1 uses adaptive
// quadrature of the reduced 1-d form; d = 2 uses QMC over the reduced polar
// form with the standard error written to *se when given (d = 1 writes 0).
double kbeta(int d, double beta, double* se = nullptr);

// Constant c_{d,beta} with  FT(|x|^{-beta})(xi) = c_{d,beta} |xi|^{beta-d}:
// c = 2^{d-beta} pi^{d/2} Gamma((d-beta)/2) / Gamma(beta/2).
double riesz_fourier_constant(int d, double beta);

// Numerical inverse of the transform, mollified by a heat factor
// exp(-t xi^2 / 2): value of (c/pi) int_0^inf xi^{beta-1} e^{-t xi^2/2}
// cos(x xi) dxi in d = 1; recovers |x|^{-beta} as t -> 0.
double riesz_inverse_transform(double beta, double x, double t);

} // namespace pam
