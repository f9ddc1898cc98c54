#include "epstein/epstein_zeta.hpp"

#include <cmath>
#include <numbers>

#include "epstein/special_functions.hpp"
#include "detail/panel_quad.hpp"

namespace epstein {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(Complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

void check_strip(double drho_x) {
    // off-critical curves leave the critical strip (|drho_x| reaches ~1.4 on
    // the first traced curve); bound chosen well inside the kernel-decay
    // domain of the quadrature
    if (!(std::abs(drho_x) < 8.0))
        throw std::domain_error("offcritical residuals: |drho_x| must be < 8");
}

} // namespace

ZetaValue completed_zeta(Complex s, double delta, const QuadratureSpec& q) {
    if (s == Complex(0.0, 0.0) || s == Complex(1.0, 0.0))
        throw PoleError("completed_zeta: simple pole at s = 0 and s = 1");
    const double dx = s.real() - 0.5;
    const double tau = s.imag();
    // t^{s-1} + t^{-s} = 2 t^{-1/2} [cosh(dx ln t) cos(tau ln t)
    //                                + i sinh(dx ln t) sin(tau ln t)]
    IntegralResult re_part =
        integrate_kernel({-0.5, 0, Trig::cos, tau, Hyp::cosh, dx}, delta, q);
    IntegralResult im_part =
        integrate_kernel({-0.5, 0, Trig::sin, tau, Hyp::sinh, dx}, delta, q);
    Complex explicit_term = -0.5 * (1.0 / (1.0 - s) + 1.0 / s);
    return {explicit_term + Complex(re_part.value, im_part.value),
            re_part.err_bound + im_part.err_bound};
}

ZetaValue epstein_zeta(Complex s, double delta, const QuadratureSpec& q) {
    if (s == Complex(1.0, 0.0))
        throw PoleError("epstein_zeta: simple pole at s = 1");
    if (s == Complex(0.0, 0.0))
        return {Complex(-0.5, 0.0), 0.0}; // Gamma pole cancels the Z pole
    if (is_nonpositive_integer(s))
        return {Complex(0.0, 0.0), 0.0};  // trivial zeros: 1/Gamma vanishes
    ZetaValue z = completed_zeta(s, delta, q);
    Complex prefactor = std::exp(s * std::log(kPi / delta)) / complex_gamma(s);
    return {z.value * prefactor, z.err_bound * std::abs(prefactor)};
}

DirectSum direct_sum(Complex s, double delta, int radius) {
    if (!(s.real() > 1.0))
        throw std::domain_error("direct_sum: diverges for re(s) <= 1");
    if (radius < 10)
        throw std::invalid_argument("direct_sum: radius must be >= 10");
    if (!(delta > 0.0))
        throw std::domain_error("direct_sum: delta must be positive");
    const double d2 = delta * delta;
    Complex axes = 0.0;
    for (int j = 1; j <= radius; ++j) {
        double jj = static_cast<double>(j) * j;
        axes += std::exp(-s * std::log(jj));
        axes += std::exp(-s * std::log(d2 * jj));
    }
    Complex quadrant = 0.0;
    for (int j = 1; j <= radius; ++j) {
        double jj = static_cast<double>(j) * j;
        for (int k = 1; k <= radius; ++k) {
            quadrant += std::exp(-s * std::log(jj + d2 * k * k));
        }
    }
    // integral-comparison tail bound for the square window
    const double sigma = s.real();
    const double dmin = std::min({delta, 1.0 / delta, 1.0});
    double bound = 4.0 * (2.0 * kPi / dmin) *
                   std::pow(radius * dmin, 2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0);
    return {axes + 2.0 * quadrant, bound};
}

double critical_residual(double rho_y, double delta, const QuadratureSpec& q) {
    IntegralResult integral =
        integrate_kernel({-0.5, 0, Trig::cos, rho_y, Hyp::cosh, 0.0}, delta, q);
    return -2.0 / (1.0 + 4.0 * rho_y * rho_y) + integral.value;
}

ResidualPair offcritical_residuals(double drho_x, double rho_y, double delta,
                                   const QuadratureSpec& q) {
    check_strip(drho_x);
    // extended precision: near an edge both residuals and the Jacobian decay
    // together, so double-precision quadrature bias would dominate the solve
    QuadratureSpec qx{std::min(q.abs_tol, 1e-18), std::min(q.rel_tol, 1e-18), 32768};
    detail::IntegralOf<long double> re_part = detail::integrate_weighted<long double>(
        {-0.5, 0, Trig::cos, rho_y, Hyp::cosh, drho_x}, delta, qx, false);
    detail::IntegralOf<long double> im_part = detail::integrate_weighted<long double>(
        {-0.5, 0, Trig::sin, rho_y, Hyp::sinh, drho_x}, delta, qx, false);
    std::complex<long double> s(0.5L + static_cast<long double>(drho_x),
                                static_cast<long double>(rho_y));
    std::complex<long double> explicit_term =
        -0.5L * (1.0L / (1.0L - s) + 1.0L / s);
    return {static_cast<double>(explicit_term.real() + re_part.value),
            static_cast<double>(explicit_term.imag() + im_part.value)};
}

Jacobian2 residual_jacobian(double drho_x, double rho_y, double delta,
                            const QuadratureSpec& q) {
    check_strip(drho_x);
    QuadratureSpec qx{std::min(q.abs_tol, 1e-18), std::min(q.rel_tol, 1e-18), 32768};
    // g = dZ/ds = -1/2 (1/(1-s)^2 - 1/s^2)
    //     + integral t^{-1/2} ln t [sinh cos + i cosh sin] K dt
    detail::IntegralOf<long double> re_part = detail::integrate_weighted<long double>(
        {-0.5, 1, Trig::cos, rho_y, Hyp::sinh, drho_x}, delta, qx, false);
    detail::IntegralOf<long double> im_part = detail::integrate_weighted<long double>(
        {-0.5, 1, Trig::sin, rho_y, Hyp::cosh, drho_x}, delta, qx, false);
    std::complex<long double> s(0.5L + static_cast<long double>(drho_x),
                                static_cast<long double>(rho_y));
    std::complex<long double> g =
        -0.5L * (1.0L / ((1.0L - s) * (1.0L - s)) - 1.0L / (s * s)) +
        std::complex<long double>(re_part.value, im_part.value);
    return {{{static_cast<double>(g.real()), static_cast<double>(-g.imag())},
             {static_cast<double>(g.imag()), static_cast<double>(g.real())}}};
}

} // namespace epstein
