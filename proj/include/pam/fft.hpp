#pragma once

// Real 1-d FFT pair of fixed size, wrapping FFTW with deterministic
// (estimate-only) planning. Plan creation is serialized internally; a
// constructed object is safe for use from one thread at a time, so each
// worker owns its own instance. Transforms are unnormalized:
// backward(forward(x)) == n * x.

#include <complex>
#include <cstddef>

namespace pam {

class RealFft {
public:
  explicit RealFft(std::size_t n);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  // real[n] -> complex[n/2+1]
  void forward(const double* in, std::complex<double>* out);

  // complex[n/2+1] -> real[n], destroys nothing of the caller's input
  void backward(const std::complex<double>* in, double* out);

private:
  std::size_t n_;
  double* real_buf_;
  void* cplx_buf_; // fftw_complex[n/2+1]
  void* plan_fwd_;
  void* plan_bwd_;
};

} // namespace pam
