#ifndef EPSTEIN_EPSTEIN_ZETA_HPP
#define EPSTEIN_EPSTEIN_ZETA_HPP

#include <array>
#include <complex>

#include "epstein/quadrature.hpp"

namespace epstein {

using Complex = std::complex<double>;

struct ZetaValue {
    Complex value;
    double err_bound = 0.0;
};

// Left-hand sides of the coupled real equations whose simultaneous root is
// an off-critical zero: f1 = Re Z, f2 = Im Z at s = 1/2 + drho_x + i rho_y.
struct ResidualPair {
    double f1 = 0.0;
    double f2 = 0.0;
};

using Jacobian2 = std::array<std::array<double, 2>, 2>;

// Completed lattice zeta Z(s, delta) = (delta/pi)^s Gamma(s) zeta2(s, delta),
// evaluated through its analytic continuation
//   Z = -1/2 (1/(1-s) + 1/s) + 1/2 integral_0^1 (t^{s-1} + t^{-s}) K(t,delta) dt.
// Valid on the whole plane except the simple poles s = 0, 1.
// Satisfies Z(s,delta) = Z(1-s,delta) and Z(s,delta) = Z(s,1/delta).
ZetaValue completed_zeta(Complex s, double delta, const QuadratureSpec& q = {});

// zeta2(s, delta) = (pi/delta)^s Z(s, delta) / Gamma(s); the lattice sum
// continued to the whole plane except s = 1.  zeta2(0, delta) = -1/2 exactly.
ZetaValue epstein_zeta(Complex s, double delta, const QuadratureSpec& q = {});

// Truncated direct lattice sum over the square window |j|,|k| <= radius,
// convergent for re(s) > 1; test oracle, never used by production paths.
struct DirectSum {
    Complex value;
    double trunc_bound;
};
DirectSum direct_sum(Complex s, double delta, int radius);

// Real residual whose root in rho_y is a critical zero at s = 1/2 + i rho_y:
//   -2/(1 + 4 rho_y^2) + integral t^{-1/2} cos(rho_y ln t) K dt.
double critical_residual(double rho_y, double delta, const QuadratureSpec& q = {});

// The pair (f1, f2); both vanish iff (1/2 + drho_x, rho_y) is a zero.
// Requires |drho_x| < 8 (off-critical curves wander outside the critical
// strip, so the domain is wider than the strip itself).
ResidualPair offcritical_residuals(double drho_x, double rho_y, double delta,
                                   const QuadratureSpec& q = {});

// Analytic Jacobian of (f1, f2) with respect to (drho_x, rho_y), obtained by
// differentiating under the integral; the structure is Cauchy-Riemann:
//   [[re g, -im g], [im g, re g]] with g = dZ/ds.
Jacobian2 residual_jacobian(double drho_x, double rho_y, double delta,
                            const QuadratureSpec& q = {});

} // namespace epstein

#endif
