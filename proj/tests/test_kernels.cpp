#include "doctest.h"

#include <cmath>
#include <limits>

#include "pam/errors.hpp"
#include "pam/kernels.hpp"
#include "pam/quadrature.hpp"

using namespace pam;

TEST_CASE("ModelParams validation enforces the admissible region") {
  ModelParams p;
  p.d = 1;
  p.beta = 0.5;
  p.t = 0.25;
  CHECK_NOTHROW(p.validate());
  p.d = 2;
  p.beta = 1.5;
  CHECK_NOTHROW(p.validate());

  auto bad = [](int d, double beta, double t) {
    ModelParams q;
    q.d = d;
    q.beta = beta;
    q.t = t;
    CHECK_THROWS_AS(q.validate(), ConfigError);
  };
  bad(3, 0.5, 1.0);   // unsupported dimension
  bad(0, 0.5, 1.0);
  bad(1, 0.0, 1.0);   // beta at the open endpoint
  bad(1, 1.0, 1.0);   // beta must stay below min(2,d)
  bad(2, 2.0, 1.0);
  bad(1, -0.5, 1.0);
  bad(1, 0.5, 0.0);   // t must be positive
  bad(1, 0.5, -1.0);
}

TEST_CASE("heat kernel values and normalization") {
  CHECK(heat_kernel1(1.0, 0.0) ==
        doctest::Approx(0.39894228040143268).epsilon(1e-14));
  const double x2[2] = {1.0, 0.0};
  CHECK(heat_kernel(2.0, x2, 2) ==
        doctest::Approx(0.061974997154826483).epsilon(1e-13));

  // Mass 1 and the semigroup identity int p_tau(y)^2 dy = p_{2 tau}(0).
  const double tau = 0.37;
  const double mass = integrate(
      [&](double y) { return heat_kernel1(tau, y); }, -40.0, 40.0, 0.0, 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  const double sq = integrate(
      [&](double y) {
        const double p = heat_kernel1(tau, y);
        return p * p;
      },
      -40.0, 40.0, 0.0, 1e-12);
  CHECK(sq == doctest::Approx(heat_kernel1(2.0 * tau, 0.0)).epsilon(1e-10));

  CHECK_THROWS(heat_kernel1(0.0, 1.0));
  CHECK_THROWS(heat_kernel1(-1.0, 1.0));
}

TEST_CASE("riesz_cell_integral matches frozen exact values") {
  // Second difference of G(u) = u^{2-beta}/((1-beta)(2-beta)), evaluated
  // independently in extended precision.
  CHECK(riesz_cell_integral(0.0, 1.0, 0.5) ==
        doctest::Approx(2.6666666666666667).epsilon(1e-14));
  CHECK(riesz_cell_integral(1.0, 1.0, 0.5) ==
        doctest::Approx(1.1045694996615868).epsilon(1e-13));
  CHECK(riesz_cell_integral(2.0, 1.0, 0.5) ==
        doctest::Approx(0.71906423095233558).epsilon(1e-13));
  CHECK(riesz_cell_integral(0.0, 1.0, 0.25) ==
        doctest::Approx(1.5238095238095238).epsilon(1e-14));
  CHECK(riesz_cell_integral(0.0, 1.0, 0.75) ==
        doctest::Approx(6.4).epsilon(1e-14));
  CHECK(riesz_cell_integral(0.0, 0.05, 0.5) ==
        doctest::Approx(0.029814239699997196).epsilon(1e-13));
  CHECK(riesz_cell_integral(0.05, 0.05, 0.5) ==
        doctest::Approx(0.012349462435581195).epsilon(1e-13));

  CHECK_THROWS(riesz_cell_integral(0.0, 1.0, 1.0));
  CHECK_THROWS(riesz_cell_integral(0.0, 1.0, 0.0));
  CHECK_THROWS(riesz_cell_integral(0.5, 1.0, 0.5)); // offset not a multiple
}

TEST_CASE("riesz_cell_integral approximates the kernel at large offsets") {
  // Far from the singularity the cell pair behaves like h^2 |a|^{-beta}.
  const double h = 0.05;
  const double beta = 0.5;
  for (double m : {40.0, 100.0, 400.0}) {
    const double a = m * h;
    const double cell = riesz_cell_integral(a, h, beta);
    CHECK(cell == doctest::Approx(h * h * std::pow(a, -beta)).epsilon(1e-4));
  }
}

TEST_CASE("cell table telescopes to the box-pair integral") {
  // Sum over all cell pairs of Q_N*h equals int over the box pair, which is
  // 2*G(N*h) with G(u) = u^{2-beta}/((1-beta)(2-beta))  (d = 1).
  const double h = 0.1;
  const double beta = 0.5;
  const int N = 40;
  const auto table = RieszCellTable::build(h, beta, N + 1);
  CHECK(table.h == h);
  CHECK(table.beta == beta);
  double total = 0.0;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) total += table.at(j - k);
  const double u = N * h;
  const double exact = 2.0 * std::pow(u, 2.0 - beta) / ((1.0 - beta) * (2.0 - beta));
  CHECK(total == doctest::Approx(exact).epsilon(1e-12));

  // Symmetry and monotone decay.
  CHECK(table.at(-3) == table.at(3));
  for (int m = 0; m + 1 <= N; ++m) CHECK(table.at(m) > table.at(m + 1));
}

TEST_CASE("kbeta closed form matches frozen values") {
  CHECK(kbeta_closed_form(0.1) ==
        doctest::Approx(4.3650666270727832).epsilon(1e-14));
  CHECK(kbeta_closed_form(0.25) ==
        doctest::Approx(5.1254638644035934).epsilon(1e-14));
  CHECK(kbeta_closed_form(0.5) ==
        doctest::Approx(7.5424723326565069).epsilon(1e-14));
  CHECK(kbeta_closed_form(0.75) ==
        doctest::Approx(15.22185107203483).epsilon(1e-14));
  CHECK(kbeta_closed_form(0.9) ==
        doctest::Approx(38.973580455865206).epsilon(1e-14));
}

TEST_CASE("kbeta quadrature agrees with the closed form in d = 1") {
  for (double beta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    double se = -1.0;
    const double v = kbeta(1, beta, &se);
    CHECK(se == 0.0);
    CHECK(std::fabs(v - kbeta_closed_form(beta)) <= 1e-8);
  }
}

TEST_CASE("kbeta in d = 2 reproduces the reference value") {
  double se = -1.0;
  const double v = kbeta(2, 1.0, &se);
  CHECK(se > 0.0);
  CHECK(se < 2e-4);
  // Reference computed by adaptive quadrature of the reduced 2-d form.
  CHECK(std::fabs(v - 23.785676785979) <= std::max(6.0 * se, 1e-6));
}

TEST_CASE("riesz_fourier_constant matches frozen values") {
  CHECK(riesz_fourier_constant(1, 0.25) ==
        doctest::Approx(0.93789333955376829).epsilon(1e-13));
  CHECK(riesz_fourier_constant(1, 0.5) ==
        doctest::Approx(2.5066282746310005).epsilon(1e-13)); // sqrt(2 pi)
  CHECK(riesz_fourier_constant(1, 0.75) ==
        doctest::Approx(6.6992535741526919).epsilon(1e-13));
  CHECK(riesz_fourier_constant(2, 1.0) ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-13));
  CHECK(riesz_fourier_constant(2, 0.5) ==
        doctest::Approx(3.0032921893612594).epsilon(1e-13));
  CHECK(riesz_fourier_constant(2, 1.5) ==
        doctest::Approx(13.145047206596874).epsilon(1e-13));
}

TEST_CASE("riesz_inverse_transform recovers the kernel as t -> 0") {
  const double beta = 0.5;
  CHECK(riesz_inverse_transform(beta, 1.0, 0.3) ==
        doctest::Approx(1.2557410870816).epsilon(1e-10));
  CHECK(riesz_inverse_transform(beta, 2.0, 1.0) ==
        doctest::Approx(0.85923989525).epsilon(1e-9));
  CHECK(riesz_inverse_transform(beta, 0.5, 0.05) ==
        doctest::Approx(1.6484891789889).epsilon(1e-10));

  // Heat averaging of the convex kernel lies above it and decreases to it
  // as the mollification time vanishes.
  const double x = 1.5;
  const double exact = std::pow(x, -beta);
  double prev = std::numeric_limits<double>::infinity();
  for (double t : {0.1, 0.01, 0.001}) {
    const double v = riesz_inverse_transform(beta, x, t);
    CHECK(v < prev);
    CHECK(v > exact);
    prev = v;
  }
  CHECK(prev == doctest::Approx(exact).epsilon(5e-3));
}
