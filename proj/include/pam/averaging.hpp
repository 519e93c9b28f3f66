#pragma once

// Spatial integrals over the nested boxes Q_R, the centered and normalized
// statistic built from them, and two deterministic variance oracles: the
// first-chaos Fourier integral and the large-R limit k_beta t R^{2d-beta}.

#include <cstdint>
#include <vector>

#include "pam/kernels.hpp"
#include "pam/solver.hpp"

namespace pam {

// Midpoint-rule integral of the field over Q_R = [-R, R]. R must be a
// positive multiple of h and Q_R must fit inside the torus; both are
// enforced.
double spatial_integral(const Field& field, double R);

struct AverageSamples {
  double R = 0.0;
  double t = 0.0;
  ModelParams params;
  std::vector<double> raw; // replica values of the Q_R integral, replica order
};

enum class SigmaMode { empirical, chaos1, limit };

const char* sigma_mode_name(SigmaMode mode);
SigmaMode sigma_mode_from_name(const std::string& name);

struct ScaledSamples {
  double sigma = 0.0;   // denominator actually used
  SigmaMode mode = SigmaMode::empirical;
  std::vector<double> z; // (raw - (2R)^d) / sigma
};

// Centers by the exact mean (2R)^d and scales by the mode's denominator.
// empirical uses the unbiased sample standard deviation (sample variance of
// the output is then exactly 1). Throws NumericalError on zero variance.
ScaledSamples center_and_scale(const AverageSamples& samples, SigmaMode mode);

// First-chaos variance Sigma_1(R,t) via the Fourier form
//   (2pi)^{-d} c_{d,beta} int |1hat_{Q_R}(xi)|^2 (1-e^{-t|xi|^2})
//                              |xi|^{beta-d-2} dxi,
// 1hat_{Q_R}(xi) = prod_j 2 sin(xi_j R)/xi_j. Relative tolerance 1e-6 or
// better; d = 1 adaptive, d = 2 tensor quadrature.
double chaos1_variance(double R, double t, const ModelParams& params);

// Asymptotic variance k_beta * t * R^{2d - beta}.
double variance_limit(double R, double t, const ModelParams& params);

} // namespace pam
