#include "entrans/quadrature.hpp"

#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "entrans/errors.hpp"

namespace entrans {

namespace {

constexpr std::size_t kWorkspaceSize = 4096;

double call_trampoline(double x, void* params)
{
    const auto& f = *static_cast<const std::function<double(double)>*>(params);
    return f(x);
}

struct Workspace {
    gsl_integration_workspace* w;
    Workspace() : w(gsl_integration_workspace_alloc(kWorkspaceSize))
    {
        // Error codes are handled at the call sites; the default handler aborts.
        gsl_set_error_handler_off();
    }
    ~Workspace() { gsl_integration_workspace_free(w); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

[[noreturn]] void fail(const char* what, int status)
{
    throw numerical_error(std::string(what) + ": " + gsl_strerror(status));
}

} // namespace

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol)
{
    Workspace ws;
    gsl_function gf{&call_trampoline, const_cast<std::function<double(double)>*>(&f)};
    double result = 0.0, abserr = 0.0;
    const int status =
        gsl_integration_qags(&gf, a, b, abs_tol, rel_tol, kWorkspaceSize, ws.w, &result, &abserr);
    if (status != GSL_SUCCESS)
        fail("integrate_finite", status);
    return result;
}

double integrate_semi_infinite(const std::function<double(double)>& f, double lower,
                               double abs_tol, double rel_tol)
{
    Workspace ws;
    gsl_function gf{&call_trampoline, const_cast<std::function<double(double)>*>(&f)};
    double result = 0.0, abserr = 0.0;
    const int status = gsl_integration_qagiu(&gf, lower, abs_tol, rel_tol, kWorkspaceSize,
                                             ws.w, &result, &abserr);
    if (status != GSL_SUCCESS)
        fail("integrate_semi_infinite", status);
    return result;
}

} // namespace entrans
