#pragma once

// Runtime-dispatched data-parallel kernels for the hot inner loops: field
// noise application, reductions, and weighted accumulation. A scalar
// reference implementation always exists; AVX2/NEON variants are selected
// once at startup when the CPU supports them. Environment variable
// PAM_SIMD=scalar|avx2|neon forces a path (invalid or unsupported values
// fall back to the best available path).

#include <cstddef>

namespace pam::simd {

enum class Isa { scalar, avx2, neon };

Isa active();
const char* isa_name(Isa isa);

// sum of x[0..n)
double sum(const double* x, std::size_t n);

// dot product of x and y
double dot(const double* x, const double* y, std::size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// out[i] = u[i] * (1 + scale * dw[i]); the solver's noise half-step
void noise_multiply(const double* u, const double* dw, double scale,
                    double* out, std::size_t n);

// Reference implementations, exposed so variant kernels can be equivalence
// tested against them.
namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void noise_multiply(const double* u, const double* dw, double scale,
                    double* out, std::size_t n);
} // namespace scalar

} // namespace pam::simd
