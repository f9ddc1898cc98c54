#ifndef EPSTEIN_QUADRATURE_HPP
#define EPSTEIN_QUADRATURE_HPP

#include "epstein/errors.hpp"

namespace epstein {

enum class Trig { cos, sin, one };
enum class Hyp { cosh, sinh, one };

// Weight of the kernel integrals over t in (0,1]:
//   t^{half_power} (ln t)^{log_power} trig(rho_y ln t) hyp(drho_x ln t)
struct WeightSpec {
    double half_power = -0.5;  // -1/2 or +1/2
    int log_power = 0;         // 0..3
    Trig trig = Trig::one;
    double rho_y = 0.0;        // trig phase
    Hyp hyp = Hyp::one;
    double drho_x = 0.0;       // hyp rate
};

struct QuadratureSpec {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_panels = 4096;
};

struct IntegralResult {
    double value = 0.0;
    double err_bound = 0.0;
};

// integral over (0,1] of  t^{half_power} (ln t)^{log_power}
//   trig(rho_y ln t) hyp(drho_x ln t) K(t, delta)  dt
//
// Evaluated in the u = -ln t variable on oscillation-aware panels of
// fixed Gauss-Legendre order; the certified error bound comes from one
// panel-doubling comparison.  Deterministic for fixed inputs and bit-stable
// per platform.  Throws ToleranceError when the bound cannot be met within
// max_panels.
IntegralResult integrate_kernel(const WeightSpec& w, double delta, const QuadratureSpec& q);

// Same weight family against the kernel dK/ddelta instead of K.
IntegralResult integrate_kernel_ddelta(const WeightSpec& w, double delta, const QuadratureSpec& q);

} // namespace epstein

#endif
