#pragma once

// Thin adaptive-quadrature layer. All routines throw NumericalError when the
// integrator fails to reach tolerance, carrying the achieved error estimate.
// Each call owns its workspace, so concurrent use is safe.

#include <functional>
#include <vector>

namespace pam {

using Integrand = std::function<double(double)>;

// Adaptive integral over [a, b].
double integrate(const Integrand& f, double a, double b, double epsabs = 0.0,
                 double epsrel = 1e-10);

// Adaptive integral with known interior singular points; pts must contain
// both endpoints in increasing order.
double integrate_singular(const Integrand& f, const std::vector<double>& pts,
                          double epsabs = 0.0, double epsrel = 1e-10);

// Adaptive integral over [a, infinity).
double integrate_to_inf(const Integrand& f, double a, double epsabs = 0.0,
                        double epsrel = 1e-10);

// Fourier integral over [a, infinity) of envelope(x) * cos(omega x) for a
// decaying envelope; handles the slowly converging oscillatory tail.
double integrate_cos_to_inf(const Integrand& envelope, double a, double omega,
                            double epsabs = 1e-10);

} // namespace pam
