#ifndef EPSTEIN_APPROX_MODEL_HPP
#define EPSTEIN_APPROX_MODEL_HPP

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "epstein/special_functions.hpp"

namespace epstein {

enum class ApproxRegime { small_delta, large_delta };

struct ApproxZero {
    Complex rho;
    double delta = 0.0;
    ApproxRegime regime = ApproxRegime::small_delta;
    double residual = 0.0;
};

// Residual of the closed-form zero equation valid for small (delta < 1) or
// large (delta > 1) anisotropy:
//   small: (delta/pi)^{2 rho - 1} + Gamma(1/2-rho) zeta(1-2 rho)
//                                   / (Gamma(rho-1/2) zeta(2 rho - 1))
//   large: the reciprocal form with (pi delta)^{2 rho - 1}.
Complex approx_equation_residual(Complex rho, double delta);

// All rho_y in (0, rho_y_max] solving the critical-line form of the
// approximate equation, located by tracking the continuous phase difference
// of the two unimodular sides (no root can be skipped).
std::vector<double> approx_critical_zeros(double delta, double rho_y_max);

// n-th member of the equidistant spectrum the approximate equation tends to:
//   pi n / |ln(delta/pi)|  for delta < 1, and the delta <-> 1/delta mirror
//   pi n / ln(pi delta)    for delta > 1.
double equidistant_spectrum(double delta, int n);

// exp(EulerGamma) / (4 pi): closed form of the real-zero boundary.
double analytic_delta_c();

// Conjugate real roots (rho_x, 1 - rho_x) of the approximate equation at
// rho_y = 0; empty for delta >= analytic_delta_c() (after delta <-> 1/delta
// canonicalization).
std::optional<std::pair<double, double>> approx_real_offcritical(double delta);

} // namespace epstein

#endif
