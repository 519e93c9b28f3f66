#include "pam/simd.hpp"

namespace pam::simd::scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void noise_multiply(const double* u, const double* dw, double scale,
                    double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i] * (1.0 + scale * dw[i]);
}

} // namespace pam::simd::scalar
