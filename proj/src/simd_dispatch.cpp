#include "pam/simd.hpp"

#include <cstdlib>
#include <cstring>

#if defined(PAM_BUILD_AVX2)
namespace pam::simd::avx2 {
double sum(const double*, std::size_t);
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void noise_multiply(const double*, const double*, double, double*, std::size_t);
} // namespace pam::simd::avx2
#endif

#if defined(PAM_BUILD_NEON)
namespace pam::simd::neon {
double sum(const double*, std::size_t);
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void noise_multiply(const double*, const double*, double, double*, std::size_t);
} // namespace pam::simd::neon
#endif

namespace pam::simd {

namespace {

struct Table {
  Isa isa;
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*noise_multiply)(const double*, const double*, double, double*, std::size_t);
};

constexpr Table kScalar{Isa::scalar, scalar::sum, scalar::dot, scalar::axpy,
                        scalar::noise_multiply};

bool cpu_has_avx2() {
#if defined(PAM_BUILD_AVX2) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Table pick(Isa want) {
#if defined(PAM_BUILD_AVX2)
  if (want == Isa::avx2 && cpu_has_avx2())
    return Table{Isa::avx2, avx2::sum, avx2::dot, avx2::axpy, avx2::noise_multiply};
#endif
#if defined(PAM_BUILD_NEON)
  if (want == Isa::neon)
    return Table{Isa::neon, neon::sum, neon::dot, neon::axpy, neon::noise_multiply};
#endif
  if (want == Isa::scalar) return kScalar;
  // best available
#if defined(PAM_BUILD_AVX2)
  if (cpu_has_avx2())
    return Table{Isa::avx2, avx2::sum, avx2::dot, avx2::axpy, avx2::noise_multiply};
#endif
#if defined(PAM_BUILD_NEON)
  return Table{Isa::neon, neon::sum, neon::dot, neon::axpy, neon::noise_multiply};
#else
  return kScalar;
#endif
}

Table detect() {
  const char* env = std::getenv("PAM_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return pick(Isa::scalar);
    if (std::strcmp(env, "avx2") == 0) return pick(Isa::avx2);
    if (std::strcmp(env, "neon") == 0) return pick(Isa::neon);
  }
  return pick(static_cast<Isa>(-1));
}

const Table& table() {
  static const Table t = detect();
  return t;
}

} // namespace

Isa active() { return table().isa; }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    default: return "scalar";
  }
}

double sum(const double* x, std::size_t n) { return table().sum(x, n); }

double dot(const double* x, const double* y, std::size_t n) {
  return table().dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  table().axpy(a, x, y, n);
}

void noise_multiply(const double* u, const double* dw, double scale,
                    double* out, std::size_t n) {
  table().noise_multiply(u, dw, scale, out, n);
}

} // namespace pam::simd
