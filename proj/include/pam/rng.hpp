#pragma once

// Counter-based random numbers. Every consumer owns an RngStream identified
// by (seed, stream, lane); streams with distinct identifiers are independent
// and their output never depends on scheduling or on other streams. Stream
// id allocation across the code base:
//
//   solver noise        stream = replica id,        lane = time step
//   bootstrap resampling stream = 2^32 + R index,   lane = resample index
//   QMC digital shifts  stream = integrand/param hash, lane = shift index
//   sampler self-tests  stream = caller-chosen tag
//
// The generator is Philox4x64 with 10 rounds; blocks are verified bit-exactly
// against an independent reference implementation in the test suite.

#include <array>
#include <cstdint>

namespace pam {

// One 4x64 block of the Philox4x64-10 bijection.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 2>& key,
                                        const std::array<std::uint64_t, 4>& counter);

class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t lane = 0)
      : key_{seed, stream}, lane_(lane) {}

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform();

  // Standard normal via Box-Muller; generated in pairs, second value cached.
  double normal();

  // Fills out[0..n) with standard normals. Leaves the pair cache untouched.
  void normal_fill(double* out, std::size_t n);

  std::uint64_t next_u64();

private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::uint64_t lane_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buf_{};
  unsigned buf_pos_ = 4; // empty
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Inverse standard normal CDF (Wichura's PPND16 rational approximation),
// |error| well below 1e-12 on (0,1). Domain error outside (0,1).
double inverse_normal_cdf(double p);

// Standard normal CDF.
double normal_cdf(double z);

// Standard normal density.
double normal_pdf(double z);

} // namespace pam
