#ifndef EPSTEIN_TESTS_HELPERS_HPP
#define EPSTEIN_TESTS_HELPERS_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

// Test-side oracles, independent of the library implementation paths they
// check.

namespace testing_oracles {

using Complex = std::complex<double>;

// Alternating series sum_{k>=0} (-1)^k a(k) by iterated averaging of partial
// sums (van Wijngaarden); slow but implementation-independent.
inline Complex alternating_sum(const std::function<Complex(int)>& a, int terms = 96) {
    std::vector<Complex> row(static_cast<std::size_t>(terms));
    Complex partial = 0.0;
    double sign = 1.0;
    for (int k = 0; k < terms; ++k) {
        partial += sign * a(k);
        row[static_cast<std::size_t>(k)] = partial;
        sign = -sign;
    }
    for (int level = terms - 1; level > 0; --level)
        for (int i = 0; i < level; ++i)
            row[static_cast<std::size_t>(i)] =
                0.5 * (row[static_cast<std::size_t>(i)] + row[static_cast<std::size_t>(i) + 1]);
    return row[0];
}

// eta(s) = sum (-1)^{k} (k+1)^{-s}; zeta via the eta prefactor
inline Complex zeta_eta_oracle(Complex s) {
    Complex eta = alternating_sum([&](int k) { return std::exp(-s * std::log(k + 1.0)); });
    return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

// log Gamma by the Stirling series at a shifted argument plus the recurrence
// Gamma(z+1) = z Gamma(z); independent of the Lanczos path.
inline Complex log_gamma_stirling(Complex z) {
    static const double b[] = {1.0 / 12,      -1.0 / 360,     1.0 / 1260,
                               -1.0 / 1680,   1.0 / 1188,     -691.0 / 360360,
                               1.0 / 156,     -3617.0 / 122400};
    Complex shift = 0.0;
    while (z.real() < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    Complex res = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
    Complex zp = z;
    for (double coeff : b) {
        res += coeff / zp;
        zp *= z * z;
    }
    return res - shift;
}

inline Complex gamma_stirling(Complex z) {
    return std::exp(log_gamma_stirling(z));
}

// centered finite difference
template <class F>
double centered_diff(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// adaptive Simpson on [a, b]
namespace detail {
template <class F>
double simpson_rec(F&& f, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12, int depth = 48) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, depth);
}

// least squares y ~ p0*x0 + p1*x1 for the two-basis fits used around edges
struct Fit2 {
    double p0, p1;
};
inline Fit2 fit2(const std::vector<double>& x0, const std::vector<double>& x1,
                 const std::vector<double>& y) {
    double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        a00 += x0[i] * x0[i];
        a01 += x0[i] * x1[i];
        a11 += x1[i] * x1[i];
        b0 += x0[i] * y[i];
        b1 += x1[i] * y[i];
    }
    double det = a00 * a11 - a01 * a01;
    return {(b0 * a11 - b1 * a01) / det, (a00 * b1 - a01 * b0) / det};
}

// simple linear regression slope of y against x
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

} // namespace testing_oracles

#endif
