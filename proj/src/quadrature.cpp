#include "pam/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <cstdio>
#include <memory>

#include "pam/errors.hpp"

namespace pam {

namespace {

constexpr std::size_t kLimit = 8192;

void disable_gsl_abort() {
  static const auto once = [] {
    gsl_set_error_handler_off();
    return 0;
  }();
  (void)once;
}

double trampoline(double x, void* p) {
  return (*static_cast<const Integrand*>(p))(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

using Workspace =
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

Workspace make_workspace() {
  return Workspace(gsl_integration_workspace_alloc(kLimit));
}

[[noreturn]] void fail(const char* what, int status, double abserr) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %s (achieved abserr=%.3e)", what,
                gsl_strerror(status), abserr);
  throw NumericalError(buf);
}

// Roundoff complaints on singular integrands are tolerated as long as the
// reported error is within an order of magnitude of the requested one.
void check(const char* what, int status, double result, double abserr,
           double epsabs, double epsrel) {
  if (status == 0) return;
  const double budget =
      10.0 * std::max(epsabs, std::fabs(result) * epsrel);
  if (abserr <= budget && std::isfinite(result)) return;
  fail(what, status, abserr);
}

} // namespace

double integrate(const Integrand& f, double a, double b, double epsabs,
                 double epsrel) {
  disable_gsl_abort();
  gsl_function gf{trampoline, const_cast<Integrand*>(&f)};
  auto w = make_workspace();
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qags(&gf, a, b, epsabs, epsrel, kLimit,
                                          w.get(), &result, &abserr);
  check("integrate", status, result, abserr, epsabs, epsrel);
  return result;
}

double integrate_singular(const Integrand& f, const std::vector<double>& pts,
                          double epsabs, double epsrel) {
  disable_gsl_abort();
  gsl_function gf{trampoline, const_cast<Integrand*>(&f)};
  auto w = make_workspace();
  double result = 0.0, abserr = 0.0;
  std::vector<double> p = pts;
  const int status =
      gsl_integration_qagp(&gf, p.data(), p.size(), epsabs, epsrel, kLimit,
                           w.get(), &result, &abserr);
  check("integrate_singular", status, result, abserr, epsabs, epsrel);
  return result;
}

double integrate_to_inf(const Integrand& f, double a, double epsabs,
                        double epsrel) {
  disable_gsl_abort();
  gsl_function gf{trampoline, const_cast<Integrand*>(&f)};
  auto w = make_workspace();
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qagiu(&gf, a, epsabs, epsrel, kLimit,
                                           w.get(), &result, &abserr);
  check("integrate_to_inf", status, result, abserr, epsabs, epsrel);
  return result;
}

double integrate_cos_to_inf(const Integrand& envelope, double a, double omega,
                            double epsabs) {
  disable_gsl_abort();
  gsl_function gf{trampoline, const_cast<Integrand*>(&envelope)};
  auto w = make_workspace();
  auto cw = make_workspace();
  gsl_integration_qawo_table* table =
      gsl_integration_qawo_table_alloc(omega, 1.0, GSL_INTEG_COSINE, 48);
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qawf(&gf, a, epsabs, kLimit, w.get(),
                                          cw.get(), table, &result, &abserr);
  gsl_integration_qawo_table_free(table);
  if (status != 0 && !(abserr <= 100.0 * epsabs && std::isfinite(result)))
    fail("integrate_cos_to_inf", status, abserr);
  return result;
}

} // namespace pam
