#include "epstein/quadrature.hpp"

#include "detail/panel_quad.hpp"

namespace epstein {

IntegralResult integrate_kernel(const WeightSpec& w, double delta, const QuadratureSpec& q) {
    auto r = detail::integrate_weighted<double>(w, delta, q, false);
    return {r.value, r.err_bound};
}

IntegralResult integrate_kernel_ddelta(const WeightSpec& w, double delta,
                                       const QuadratureSpec& q) {
    auto r = detail::integrate_weighted<double>(w, delta, q, true);
    return {r.value, r.err_bound};
}

} // namespace epstein
