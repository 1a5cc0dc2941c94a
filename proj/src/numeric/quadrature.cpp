#include "covop/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>
#include <string>

#include "covop/errors.hpp"

namespace covop {

namespace {

double trampoline(double x, void* params) { return (*static_cast<const std::function<double(double)>*>(params))(x); }

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

struct TableDeleter {
  void operator()(gsl_integration_qaws_table* t) const { gsl_integration_qaws_table_free(t); }
};

void check(int status, const char* what) {
  if (status == GSL_SUCCESS || status == GSL_EROUND) return;
  throw QuadratureBudgetExceeded(std::string(what) + ": " + gsl_strerror(status));
}

gsl_function wrap(const std::function<double(double)>& g) {
  gsl_function f;
  f.function = &trampoline;
  f.params = const_cast<std::function<double(double)>*>(&g);
  return f;
}

}  // namespace

void quiet_gsl_errors() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

QuadResult integrate_power_weight(const std::function<double(double)>& g, double alpha, double b, double epsabs,
                                  double epsrel, std::size_t limit) {
  quiet_gsl_errors();
  if (!(alpha > -1.0)) throw DomainError("power weight must have exponent > -1");
  std::unique_ptr<gsl_integration_qaws_table, TableDeleter> table(gsl_integration_qaws_table_alloc(alpha, 0.0, 0, 0));
  Workspace ws(gsl_integration_workspace_alloc(limit));
  gsl_function f = wrap(g);
  QuadResult r;
  check(gsl_integration_qaws(&f, 0.0, b, table.get(), epsabs, epsrel, limit, ws.get(), &r.value, &r.abserr),
        "power-weight quadrature");
  return r;
}

QuadResult integrate(const std::function<double(double)>& g, double a, double b, double epsabs, double epsrel,
                     std::size_t limit) {
  quiet_gsl_errors();
  Workspace ws(gsl_integration_workspace_alloc(limit));
  gsl_function f = wrap(g);
  QuadResult r;
  check(gsl_integration_qag(&f, a, b, epsabs, epsrel, limit, GSL_INTEG_GAUSS31, ws.get(), &r.value, &r.abserr),
        "adaptive quadrature");
  return r;
}

QuadResult integrate_to_infinity(const std::function<double(double)>& g, double a, double epsabs, double epsrel,
                                 std::size_t limit) {
  quiet_gsl_errors();
  Workspace ws(gsl_integration_workspace_alloc(limit));
  gsl_function f = wrap(g);
  QuadResult r;
  check(gsl_integration_qagiu(&f, a, epsabs, epsrel, limit, ws.get(), &r.value, &r.abserr), "semi-infinite quadrature");
  return r;
}

}  // namespace covop
