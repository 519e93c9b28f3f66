#include "pam/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace pam {

namespace {

// FFTW planner state is global and not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

} // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("RealFft: size must be >= 2");
  real_buf_ = fftw_alloc_real(n);
  fftw_complex* c = fftw_alloc_complex(n / 2 + 1);
  cplx_buf_ = c;
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_buf_, c,
                                   FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, real_buf_,
                                   FFTW_ESTIMATE);
  if (plan_fwd_ == nullptr || plan_bwd_ == nullptr)
    throw std::runtime_error("RealFft: planning failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(real_buf_);
  fftw_free(static_cast<fftw_complex*>(cplx_buf_));
}

void RealFft::forward(const double* in, std::complex<double>* out) {
  std::memcpy(real_buf_, in, n_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, cplx_buf_, (n_ / 2 + 1) * sizeof(std::complex<double>));
}

void RealFft::backward(const std::complex<double>* in, double* out) {
  std::memcpy(cplx_buf_, in, (n_ / 2 + 1) * sizeof(std::complex<double>));
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(out, real_buf_, n_ * sizeof(double));
}

} // namespace pam
