#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "pam/errors.hpp"
#include "pam/kernels.hpp"
#include "pam/noise.hpp"

using namespace pam;

namespace {

NoiseGrid small_grid() {
  NoiseGrid g;
  g.n_cells = 16;
  g.h = 0.25;
  g.dt = 0.01;
  return g;
}

} // namespace

TEST_CASE("NoiseGrid validation") {
  NoiseGrid g = small_grid();
  CHECK_NOTHROW(g.validate());
  CHECK(g.L() == doctest::Approx(2.0).epsilon(1e-15));

  g.n_cells = 12; // not a power of two
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g.n_cells = 4; // below the minimum
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g = small_grid();
  g.h = 0.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g = small_grid();
  g.dt = 0.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("covariance row periodizes to the nearest image") {
  const NoiseGrid g = small_grid();
  const double beta = 0.5;
  const auto row = cell_covariance_row(g, beta);
  REQUIRE(row.size() == static_cast<std::size_t>(g.n_cells));
  for (int m = 0; m < g.n_cells; ++m) {
    const int image = std::min(m, g.n_cells - m);
    CHECK(row[m] ==
          doctest::Approx(riesz_cell_integral(image * g.h, g.h, beta))
              .epsilon(1e-14));
  }
  // Symmetric and maximal on the diagonal.
  for (int m = 1; m < g.n_cells; ++m) {
    CHECK(row[m] == row[(g.n_cells - m) % g.n_cells]);
    CHECK(row[0] > row[m]);
  }
}

TEST_CASE("dense covariance is the circulant of the row") {
  const NoiseGrid g = small_grid();
  const auto row = cell_covariance_row(g, 0.5);
  const auto cov = cell_covariance(g, 0.5);
  const int n = g.n_cells;
  REQUIRE(cov.size() == static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      CHECK(cov[j * n + k] == row[(k - j + n) % n]);
}

TEST_CASE("cholesky factor whitens its own samples") {
  const NoiseGrid g = small_grid();
  const int n = g.n_cells;
  CholeskySampler sampler(cell_covariance(g, 0.5), n);
  CHECK(sampler.size() == n);

  RngStream rng(99, 5);
  const auto inc = sampler.sample(g.dt, rng, 7);
  CHECK(inc.step == 7);
  REQUIRE(inc.values.size() == static_cast<std::size_t>(n));

  // Forward substitution by the stored factor recovers iid N(0, dt) draws;
  // their scaled square sum is chi-square with n dof. The 0.999 quantile of
  // chi2(16) is 39.25; a fixed seed keeps this deterministic.
  const auto& L = sampler.factor();
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    double acc = inc.values[i];
    for (int j = 0; j < i; ++j) acc -= L[i * n + j] * w[j];
    w[i] = acc / L[i * n + i];
  }
  double q = 0.0;
  for (double v : w) q += v * v / g.dt;
  CHECK(q > 0.0);
  CHECK(q < 39.25);
}

TEST_CASE("indefinite matrix is rejected with the pivot value") {
  // [[1, 2], [2, 1]] has eigenvalues 3 and -1.
  std::vector<double> bad = {1.0, 2.0, 2.0, 1.0};
  CHECK_THROWS_AS(CholeskySampler(bad, 2), NumericalError);
}

TEST_CASE("circulant eigenvalues are positive on the standard grid") {
  const NoiseGrid g = small_grid();
  CirculantSampler sampler(g, 0.5);
  CHECK(sampler.clamped_eigenvalues() == 0);
  const auto& eig = sampler.eigenvalues();
  REQUIRE(eig.size() == static_cast<std::size_t>(g.n_cells));
  for (double v : eig) CHECK(v > 0.0);
  // Eigenvalue sum equals n times the diagonal entry (trace identity).
  double sum = 0.0;
  for (double v : eig) sum += v;
  const auto row = cell_covariance_row(g, 0.5);
  CHECK(sum == doctest::Approx(g.n_cells * row[0]).epsilon(1e-12));
}

TEST_CASE("both samplers reproduce the covariance within Monte Carlo error") {
  NoiseGrid g = small_grid();
  const double beta = 0.5;
  const int n = g.n_cells;
  const int n_samples = 20000;
  const auto row = cell_covariance_row(g, beta);

  auto run_check = [&](auto&& draw) {
    // Accumulate E[X_0 X_m] against the exact dt * row[m].
    std::vector<double> acc(n, 0.0), acc2(n, 0.0);
    for (int s = 0; s < n_samples; ++s) {
      const NoiseIncrement inc = draw(s);
      for (int m = 0; m < n; ++m) {
        const double p = inc.values[0] * inc.values[m];
        acc[m] += p;
        acc2[m] += p * p;
      }
    }
    double worst = 0.0;
    for (int m = 0; m < n; ++m) {
      const double mean = acc[m] / n_samples;
      const double var = acc2[m] / n_samples - mean * mean;
      const double se = std::sqrt(var / n_samples);
      worst = std::max(worst, std::fabs(mean - g.dt * row[m]) / se);
    }
    return worst;
  };

  CirculantSampler circ(g, beta);
  RngStream rng_c(7, 1);
  const double worst_c = run_check([&](int s) {
    return circ.sample(rng_c, static_cast<std::uint64_t>(s));
  });
  CHECK(worst_c <= 5.0);

  CholeskySampler chol(cell_covariance(g, beta), n);
  RngStream rng_d(7, 2);
  const double worst_d = run_check([&](int s) {
    return chol.sample(g.dt, rng_d, static_cast<std::uint64_t>(s));
  });
  CHECK(worst_d <= 5.0);
}

TEST_CASE("increments are independent across steps") {
  // Lag-1 cross covariance of the white-in-time increments vanishes.
  NoiseGrid g = small_grid();
  CirculantSampler sampler(g, 0.5);
  RngStream rng(31, 1);
  const int n_pairs = 20000;
  double acc = 0.0, acc2 = 0.0;
  NoiseIncrement prev = sampler.sample(rng, 0);
  for (int s = 1; s <= n_pairs; ++s) {
    NoiseIncrement cur = sampler.sample(rng, static_cast<std::uint64_t>(s));
    const double p = prev.values[0] * cur.values[0];
    acc += p;
    acc2 += p * p;
    prev = std::move(cur);
  }
  const double mean = acc / n_pairs;
  const double se = std::sqrt((acc2 / n_pairs - mean * mean) / n_pairs);
  CHECK(std::fabs(mean) <= 5.0 * se);
}

TEST_CASE("circulant sampling is deterministic per stream state") {
  NoiseGrid g = small_grid();
  CirculantSampler a(g, 0.5), b(g, 0.5);
  RngStream ra(123, 4), rb(123, 4);
  const auto ia = a.sample(ra, 9);
  const auto ib = b.sample(rb, 9);
  REQUIRE(ia.values.size() == ib.values.size());
  for (std::size_t i = 0; i < ia.values.size(); ++i)
    CHECK(ia.values[i] == ib.values[i]);
}

TEST_CASE("noise dump writes the documented binary layout") {
  NoiseGrid g = small_grid();
  CirculantSampler sampler(g, 0.5);
  RngStream rng(5, 1);
  const auto inc = sampler.sample(rng, 3);

  const std::string path = "noise_dump_test.bin";
  write_noise_dump(path, g, inc);

  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  char magic[8];
  in.read(magic, 8);
  CHECK(std::string(magic, 8) == "PAMNOISE");
  std::uint32_t d = 0, n = 0;
  in.read(reinterpret_cast<char*>(&d), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  CHECK(d == 1);
  CHECK(n == static_cast<std::uint32_t>(g.n_cells));
  double dt = 0.0;
  std::uint64_t step = 0;
  in.read(reinterpret_cast<char*>(&dt), 8);
  in.read(reinterpret_cast<char*>(&step), 8);
  CHECK(dt == g.dt);
  CHECK(step == 3);
  std::vector<double> vals(g.n_cells);
  in.read(reinterpret_cast<char*>(vals.data()), g.n_cells * 8);
  CHECK(in.good());
  for (int i = 0; i < g.n_cells; ++i) CHECK(vals[i] == inc.values[i]);
  std::remove(path.c_str());
}
