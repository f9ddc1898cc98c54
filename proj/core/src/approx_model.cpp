#include "epstein/approx_model.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "detail/root_finding.hpp"

namespace epstein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

Complex gamma_zeta_ratio(Complex rho) {
    // Gamma(1/2 - rho) zeta(1 - 2 rho) / (Gamma(rho - 1/2) zeta(2 rho - 1))
    return complex_gamma(0.5 - rho) * riemann_zeta(1.0 - 2.0 * rho) /
           (complex_gamma(rho - 0.5) * riemann_zeta(2.0 * rho - 1.0));
}

// continuous phase of w(y) = Gamma(i y) zeta(2 i y), unwrapped along a walk
struct PhaseTracker {
    double y = 0.0;
    Complex w;
    double arg = 0.0;

    explicit PhaseTracker(double y0) : y(y0), w(value(y0)), arg(std::arg(w)) {}

    static Complex value(double y) {
        return complex_gamma(Complex(0.0, y)) * riemann_zeta(Complex(0.0, 2.0 * y));
    }

    // advance to y1, accumulating the principal increment (valid for steps
    // small enough that the true change stays below pi)
    void advance(double y1) {
        Complex w1 = value(y1);
        arg += std::arg(w1 * std::conj(w));
        w = w1;
        y = y1;
    }

    double phase_at(double y1) const {
        Complex w1 = value(y1);
        return arg + std::arg(w1 * std::conj(w));
    }
};

} // namespace

Complex approx_equation_residual(Complex rho, double delta) {
    if (!(delta > 0.0))
        throw std::domain_error("approx_equation_residual: delta must be positive");
    if (delta < 1.0) {
        Complex lhs = std::exp((2.0 * rho - 1.0) * std::log(delta / kPi));
        return lhs + gamma_zeta_ratio(rho);
    }
    Complex lhs = std::exp((2.0 * rho - 1.0) * std::log(kPi * delta));
    return lhs + 1.0 / gamma_zeta_ratio(rho);
}

std::vector<double> approx_critical_zeros(double delta, double rho_y_max) {
    if (!(delta > 0.0))
        throw std::domain_error("approx_critical_zeros: delta must be positive");
    double d = std::min(delta, 1.0 / delta);
    const double L = std::log(d / kPi); // < 0
    std::vector<double> zeros;
    if (!(rho_y_max > 0.0)) return zeros;

    // xi(y) = 2 y L - pi + 2 arg w(y); roots of the phase condition are the
    // crossings of integer multiples of 2 pi
    const double y0 = 1e-3;
    PhaseTracker tracker(y0);
    auto xi_from = [&](const PhaseTracker& t, double y) {
        return 2.0 * y * L - kPi + 2.0 * t.phase_at(y);
    };
    double step = std::min(0.02, kPi / (8.0 * (std::abs(L) + 4.0)));
    double xi_prev = 2.0 * y0 * L - kPi + 2.0 * tracker.arg;
    double y_prev = y0;
    while (y_prev < rho_y_max) {
        double y_next = std::min(y_prev + step, rho_y_max);
        PhaseTracker before = tracker;
        tracker.advance(y_next);
        double xi_next = 2.0 * y_next * L - kPi + 2.0 * tracker.arg;
        // multiples of 2 pi crossed in this cell
        double klo = std::ceil(std::min(xi_prev, xi_next) / (2.0 * kPi) - 1e-12);
        double khi = std::floor(std::max(xi_prev, xi_next) / (2.0 * kPi) + 1e-12);
        for (double k = klo; k <= khi; k += 1.0) {
            double target = 2.0 * kPi * k;
            if ((xi_prev - target) * (xi_next - target) > 0.0) continue;
            auto g = [&](double y) { return xi_from(before, y) - target; };
            double root = detail::brent_root(g, y_prev, y_next, xi_prev - target,
                                             xi_next - target, 1e-13);
            if (root > y0 && root <= rho_y_max &&
                (zeros.empty() || root - zeros.back() > 1e-9))
                zeros.push_back(root);
        }
        y_prev = y_next;
        xi_prev = xi_next;
    }
    return zeros;
}

double equidistant_spectrum(double delta, int n) {
    if (!(delta > 0.0))
        throw std::domain_error("equidistant_spectrum: delta must be positive");
    if (n == 0)
        throw std::invalid_argument("equidistant_spectrum: n must be nonzero");
    if (delta <= 1.0)
        return kPi * n / std::abs(std::log(delta / kPi));
    return kPi * n / std::log(kPi * delta);
}

double analytic_delta_c() {
    return std::exp(kEulerGamma) / (4.0 * kPi);
}

std::optional<std::pair<double, double>> approx_real_offcritical(double delta) {
    if (!(delta > 0.0))
        throw std::domain_error("approx_real_offcritical: delta must be positive");
    double d = std::min(delta, 1.0 / delta);
    if (d >= analytic_delta_c())
        return std::nullopt;
    auto g = [&](double drx) {
        Complex r = approx_equation_residual(Complex(0.5 + drx, 0.0), d);
        return r.real();
    };
    // between the trivial root at 0 and the strip border the residual
    // changes sign exactly once for d < delta_c
    double lo = 1e-7;
    double hi = 0.5 - 1e-7;
    double glo = g(lo);
    double ghi = g(hi);
    if ((glo > 0.0) == (ghi > 0.0))
        return std::nullopt;
    double root = detail::brent_root(g, lo, hi, glo, ghi, 1e-15);
    return std::make_pair(0.5 - root, 0.5 + root);
}

} // namespace epstein
