#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "pam/rng.hpp"
#include "pam/simd.hpp"

using namespace pam;

namespace {

// Lengths around every vector-width boundary plus the degenerate ones.
const std::vector<std::size_t> kLengths = {0,  1,  2,  3,  4,   5,   7,
                                           8,  15, 16, 17, 31,  32,  33,
                                           63, 64, 65, 100, 255, 256, 257, 500};

std::vector<double> random_vec(std::size_t n, std::uint64_t stream) {
  std::vector<double> v(n);
  RngStream rng(42, stream);
  if (n) rng.normal_fill(v.data(), n);
  return v;
}

// FMA-based variants round differently from the scalar path; the bound is a
// few ulps of the accumulated magnitude, not exact equality.
double magnitude_sum(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

} // namespace

TEST_CASE("active isa reports a valid name") {
  const simd::Isa isa = simd::active();
  const char* name = simd::isa_name(isa);
  REQUIRE(name != nullptr);
  CHECK((std::string(name) == "scalar" || std::string(name) == "avx2" ||
         std::string(name) == "neon"));
}

TEST_CASE("sum matches scalar reference on all boundary lengths") {
  for (std::size_t n : kLengths) {
    const auto x = random_vec(n, 100 + n);
    const double ref = simd::scalar::sum(x.data(), n);
    const double got = simd::sum(x.data(), n);
    const double tol = 1e-12 * (1.0 + magnitude_sum(x));
    CHECK(std::fabs(got - ref) <= tol);
  }
}

TEST_CASE("sum of empty range is exactly zero") {
  CHECK(simd::sum(nullptr, 0) == 0.0);
  CHECK(simd::scalar::sum(nullptr, 0) == 0.0);
}

TEST_CASE("dot matches scalar reference on all boundary lengths") {
  for (std::size_t n : kLengths) {
    const auto x = random_vec(n, 200 + n);
    const auto y = random_vec(n, 300 + n);
    const double ref = simd::scalar::dot(x.data(), y.data(), n);
    const double got = simd::dot(x.data(), y.data(), n);
    double mag = 1.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::fabs(x[i] * y[i]);
    CHECK(std::fabs(got - ref) <= 1e-12 * mag);
  }
}

TEST_CASE("axpy matches scalar reference elementwise") {
  const double a = -0.37;
  for (std::size_t n : kLengths) {
    const auto x = random_vec(n, 400 + n);
    auto y_ref = random_vec(n, 500 + n);
    auto y_got = y_ref;
    simd::scalar::axpy(a, x.data(), y_ref.data(), n);
    simd::axpy(a, x.data(), y_got.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const double tol = 4e-16 * (std::fabs(y_ref[i]) + std::fabs(a * x[i]));
      CHECK(std::fabs(y_got[i] - y_ref[i]) <= tol);
    }
  }
}

TEST_CASE("noise_multiply matches scalar reference elementwise") {
  const double scale = 2.5;
  for (std::size_t n : kLengths) {
    const auto u = random_vec(n, 600 + n);
    const auto dw = random_vec(n, 700 + n);
    std::vector<double> out_ref(n), out_got(n);
    simd::scalar::noise_multiply(u.data(), dw.data(), scale, out_ref.data(), n);
    simd::noise_multiply(u.data(), dw.data(), scale, out_got.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const double tol =
          4e-16 * (std::fabs(out_ref[i]) + std::fabs(u[i]) * (1.0 + std::fabs(scale * dw[i])));
      CHECK(std::fabs(out_got[i] - out_ref[i]) <= tol);
    }
  }
}

TEST_CASE("scalar kernels compute the textbook results") {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y = {0.5, -1.0, 2.0, 0.25};
  CHECK(simd::scalar::sum(x.data(), 4) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(simd::scalar::dot(x.data(), y.data(), 4) ==
        doctest::Approx(0.5 - 2.0 + 6.0 + 1.0).epsilon(1e-15));

  std::vector<double> z = y;
  simd::scalar::axpy(2.0, x.data(), z.data(), 4);
  CHECK(z[0] == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(z[3] == doctest::Approx(8.25).epsilon(1e-15));

  std::vector<double> out(4);
  simd::scalar::noise_multiply(x.data(), y.data(), 0.5, out.data(), 4);
  // out[i] = u[i] * (1 + 0.5 * dw[i])
  CHECK(out[0] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out[2] == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(out[3] == doctest::Approx(4.5).epsilon(1e-15));
}
