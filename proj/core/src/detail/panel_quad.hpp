#ifndef EPSTEIN_DETAIL_PANEL_QUAD_HPP
#define EPSTEIN_DETAIL_PANEL_QUAD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "epstein/quadrature.hpp"
#include "theta_series.hpp"

namespace epstein::detail {

template <class Real>
struct Gauss16T {
    std::array<Real, 16> x;
    std::array<Real, 16> w;
};

// Legendre P16 roots by Newton iteration; runs once per scalar type.
template <class Real>
Gauss16T<Real> make_gauss16() {
    using std::abs;
    using std::cos;
    Gauss16T<Real> g{};
    const int n = 16;
    for (int i = 0; i < n / 2; ++i) {
        Real x = cos(RealTraits<Real>::pi() * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real p1 = 1, p2 = 0;
        for (int it = 0; it < 200; ++it) {
            p1 = 1;
            p2 = 0;
            for (int j = 0; j < n; ++j) {
                Real p3 = p2;
                p2 = p1;
                p1 = ((Real(2) * Real(j) + Real(1)) * x * p2 - Real(j) * p3) / Real(j + 1);
            }
            Real dp = Real(n) * (x * p1 - p2) / (x * x - Real(1));
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < Real(8) * RealTraits<Real>::eps()) break;
        }
        {
            p1 = 1;
            p2 = 0;
            for (int j = 0; j < n; ++j) {
                Real p3 = p2;
                p2 = p1;
                p1 = ((Real(2) * Real(j) + Real(1)) * x * p2 - Real(j) * p3) / Real(j + 1);
            }
        }
        Real dp = Real(n) * (x * p1 - p2) / (x * x - Real(1));
        Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
        g.x[static_cast<std::size_t>(i)] = -x;
        g.w[static_cast<std::size_t>(i)] = w;
        g.x[static_cast<std::size_t>(n - 1 - i)] = x;
        g.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return g;
}

template <class Real>
const Gauss16T<Real>& gauss16() {
    static const Gauss16T<Real> g = make_gauss16<Real>();
    return g;
}

inline void validate_weight(const WeightSpec& w, double delta, const QuadratureSpec& q) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::domain_error("integrate_kernel: delta must be positive");
    if (w.half_power != -0.5 && w.half_power != 0.5)
        throw std::domain_error("integrate_kernel: half_power must be -1/2 or +1/2");
    if (w.log_power < 0 || w.log_power > 3)
        throw std::domain_error("integrate_kernel: log_power must be 0..3");
    if (!(std::abs(w.drho_x) < 32.0))
        throw std::domain_error("integrate_kernel: |drho_x| too large for the kernel decay");
    if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0))
        throw std::domain_error("integrate_kernel: tolerances must be positive");
}

// envelope of |integrand(u)|, used only to pick the truncation point
inline double integrand_envelope(double u, const WeightSpec& w, double dmin,
                                 bool deriv_kernel) {
    double kern = 2.0 * std::exp(u - std::numbers::pi * dmin * std::exp(u)) +
                  2.0 * std::exp(u - std::numbers::pi * std::exp(u) / dmin);
    if (deriv_kernel)
        kern *= std::numbers::pi * std::exp(u) / (dmin * dmin);
    double poly = (w.log_power == 0) ? 1.0 : std::pow(u, w.log_power);
    return std::exp(-(1.0 + w.half_power) * u + std::abs(w.drho_x) * u) * poly * kern;
}

template <class Real>
Real panel_pass(const WeightSpec& w, Real delta, Real upper, int panels, bool deriv_kernel) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::sin;
    using std::sinh;
    const Gauss16T<Real>& g = gauss16<Real>();
    const Real width = upper / Real(panels);
    const Real hp = Real(w.half_power);
    const Real phase = Real(w.rho_y);
    const Real rate = Real(w.drho_x);
    Real total = 0;
    for (int p = 0; p < panels; ++p) {
        Real mid = (Real(p) + Real(0.5)) * width;
        Real half = Real(0.5) * width;
        Real acc = 0;
        for (int i = 0; i < 16; ++i) {
            Real u = mid + half * g.x[static_cast<std::size_t>(i)];
            Real t = exp(-u);
            Real kern = deriv_kernel ? kernel_ddelta_value(t, delta) : kernel_value(t, delta);
            Real f = exp(-(Real(1) + hp) * u) * kern;
            if (w.log_power == 1) f *= u;
            else if (w.log_power == 2) f *= u * u;
            else if (w.log_power == 3) f *= u * u * u;
            if (w.trig == Trig::cos) f *= cos(phase * u);
            else if (w.trig == Trig::sin) f *= sin(phase * u);
            if (w.hyp == Hyp::cosh) f *= cosh(rate * u);
            else if (w.hyp == Hyp::sinh) f *= sinh(rate * u);
            acc += g.w[static_cast<std::size_t>(i)] * f;
        }
        total += acc * half;
    }
    return total;
}

template <class Real>
struct IntegralOf {
    Real value;
    double err_bound;
};

template <class Real>
IntegralOf<Real> integrate_weighted(const WeightSpec& w, double delta, const QuadratureSpec& q,
                                    bool deriv_kernel) {
    using std::abs;
    validate_weight(w, delta, q);
    if ((w.trig == Trig::sin && w.rho_y == 0.0) || (w.hyp == Hyp::sinh && w.drho_x == 0.0))
        return {Real(0), 0.0};

    const double dmin = std::min(delta, 1.0 / delta);

    double upper = std::max(1.0, std::log(4.0 / (std::numbers::pi * dmin)));
    while (upper < 60.0 && integrand_envelope(upper, w, dmin, deriv_kernel) > 0.1 * q.abs_tol)
        upper += 0.25;

    double width = std::numbers::pi / std::max(std::abs(w.rho_y), 1.0);
    width = std::min(width, 4.0 / std::max(std::abs(w.drho_x), 1.0));
    int panels = std::max(4, static_cast<int>(std::ceil(upper / width)));
    if (panels > q.max_panels)
        throw ToleranceError("integrate_kernel: panel budget exhausted before first pass", 0.0,
                             std::numeric_limits<double>::infinity());

    // sign bookkeeping for the t -> u substitution: (ln t)^m = (-u)^m,
    // sin(rho ln t) = -sin(rho u), sinh(d ln t) = -sinh(d u)
    Real sign = (w.log_power % 2 == 0) ? Real(1) : Real(-1);
    if (w.trig == Trig::sin) sign = -sign;
    if (w.hyp == Hyp::sinh) sign = -sign;

    const double tail_err = 0.1 * q.abs_tol;
    Real coarse = panel_pass<Real>(w, Real(delta), Real(upper), panels, deriv_kernel);
    for (;;) {
        if (2 * panels > q.max_panels)
            throw ToleranceError("integrate_kernel: tolerance not met within max_panels",
                                 static_cast<double>(sign * coarse),
                                 std::numeric_limits<double>::infinity());
        panels *= 2;
        Real fine = panel_pass<Real>(w, Real(delta), Real(upper), panels, deriv_kernel);
        double fine_mag = std::abs(static_cast<double>(fine));
        double err = static_cast<double>(abs(fine - coarse)) + tail_err;
        err = std::max(err, 4.0 * static_cast<double>(RealTraits<Real>::eps()) * fine_mag);
        if (err <= std::max(q.abs_tol, q.rel_tol * fine_mag))
            return {sign * fine, err};
        coarse = fine;
    }
}

} // namespace epstein::detail

#endif
