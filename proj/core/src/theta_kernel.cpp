#include "epstein/theta_kernel.hpp"

#include <cmath>

#include "detail/theta_series.hpp"

namespace epstein {

namespace {

void check_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(fn) + ": argument must be positive and finite");
}

void check_point(KernelPoint p, const char* fn) {
    if (!(p.t > 0.0) || p.t > 1.0 || !std::isfinite(p.t))
        throw std::domain_error(std::string(fn) + ": t must lie in (0, 1]");
    check_positive(p.delta, fn);
}

} // namespace

double theta3(double x) {
    check_positive(x, "theta3");
    return detail::theta3_any(x);
}

double theta3_weighted(double x) {
    check_positive(x, "theta3_weighted");
    return detail::theta3_weighted_any(x);
}

double theta_kernel(double t, double delta) {
    return detail::kernel_value(t, delta);
}

double theta_kernel(KernelPoint p) {
    check_point(p, "theta_kernel");
    return detail::kernel_value(p.t, p.delta);
}

double theta_kernel_ddelta(double t, double delta) {
    return detail::kernel_ddelta_value(t, delta);
}

double theta_kernel_ddelta(KernelPoint p) {
    check_point(p, "theta_kernel_ddelta");
    return detail::kernel_ddelta_value(p.t, p.delta);
}

} // namespace epstein
