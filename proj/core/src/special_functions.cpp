#include "epstein/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace epstein {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(Complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// sin(pi*z) with the real part reduced mod 2 so the argument of std::sin
// stays small; avoids accuracy loss from large multiples of pi.
Complex sin_pi(Complex z) {
    double r = z.real() - 2.0 * std::round(0.5 * z.real());
    return std::sin(kPi * Complex(r, z.imag()));
}

// Lanczos coefficients, g = 7, 9 terms.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

Complex gamma_lanczos(Complex s) {
    // valid for re(s) >= 0.5
    const double g = 7.0;
    Complex x = s - 1.0;
    Complex acc = kLanczos[0];
    for (int k = 1; k < 9; ++k)
        acc += kLanczos[k] / (x + static_cast<double>(k));
    Complex base = x + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(base, x + 0.5) * std::exp(-base) * acc;
}

Complex cpow_real(double base, Complex e) {
    return std::exp(e * std::log(base));
}

// Chebyshev-style acceleration weights for alternating series
// (d_k of the Borwein eta algorithm).
std::vector<double> alternating_weights(int n) {
    std::vector<double> d(static_cast<std::size_t>(n) + 1);
    double term = 1.0 / n; // (n-1)!/n!
    double acc = term;
    d[0] = static_cast<double>(n) * acc;
    for (int i = 0; i + 1 <= n; ++i) {
        term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
        acc += term;
        d[static_cast<std::size_t>(i) + 1] = static_cast<double>(n) * acc;
    }
    return d;
}

// eta-series zeta, re(s) >= 0.5, away from zeros of 1 - 2^{1-s}
Complex zeta_eta_accelerated(Complex s, Complex divisor) {
    int n = 24 + static_cast<int>(std::ceil(0.9 * std::abs(s.imag())));
    if (n > 250) n = 250;
    const std::vector<double> d = alternating_weights(n);
    Complex sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        sum += sign * (d[static_cast<std::size_t>(k)] - d[static_cast<std::size_t>(n)]) *
               cpow_real(k + 1.0, -s);
        sign = -sign;
    }
    return -sum / (d[static_cast<std::size_t>(n)] * divisor);
}

// Euler-Maclaurin zeta, re(s) >= 0.5.  Used where the eta prefactor is
// nearly singular (re(s) close to 1, im(s) close to 2*pi*k/ln 2).
Complex zeta_euler_maclaurin(Complex s) {
    static const std::array<double, 14> kB2j = {
        1.0 / 6,    -1.0 / 30,       1.0 / 42,     -1.0 / 30,
        5.0 / 66,   -691.0 / 2730,   7.0 / 6,      -3617.0 / 510,
        43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
        8553103.0 / 6, -23749461029.0 / 870,
    };
    const int M = 14;
    int N = std::max(25, static_cast<int>(std::ceil((std::abs(s) + 2.0 * M) / 1.8)));
    Complex sum = 0.0;
    for (int k = 1; k <= N; ++k)
        sum += cpow_real(static_cast<double>(k), -s);
    const double lnN = std::log(static_cast<double>(N));
    sum += std::exp((1.0 - s) * lnN) / (s - 1.0);
    sum -= 0.5 * std::exp(-s * lnN);
    Complex poch = s;              // s (s+1) ... (s+2j-2)
    double fact = 2.0;             // (2j)!
    Complex npow = std::exp((-s - 1.0) * lnN);
    const double n2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    for (int j = 1; j <= M; ++j) {
        sum += kB2j[static_cast<std::size_t>(j) - 1] / fact * poch * npow;
        if (j == M) break;
        poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        npow *= n2;
    }
    return sum;
}

Complex zeta_right_half(Complex s) {
    Complex divisor = 1.0 - cpow_real(2.0, 1.0 - s);
    if (std::abs(divisor) < 0.25)
        return zeta_euler_maclaurin(s);
    return zeta_eta_accelerated(s, divisor);
}

// accelerated beta series, re(s) >= 0.5
Complex beta_right_half(Complex s) {
    int n = 40 + static_cast<int>(std::ceil(1.6 * std::abs(s.imag())));
    if (n > 250) n = 250;
    const std::vector<double> d = alternating_weights(n);
    Complex sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        sum += sign * (d[static_cast<std::size_t>(k)] - d[static_cast<std::size_t>(n)]) *
               cpow_real(2.0 * k + 1.0, -s);
        sign = -sign;
    }
    return -sum / d[static_cast<std::size_t>(n)];
}

} // namespace

Complex complex_gamma(Complex s) {
    if (is_nonpositive_integer(s))
        throw PoleError("complex_gamma: pole at non-positive integer");
    if (s.real() >= 0.5)
        return gamma_lanczos(s);
    // Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
    return kPi / (sin_pi(s) * gamma_lanczos(1.0 - s));
}

Complex riemann_zeta(Complex s) {
    if (s == Complex(1.0, 0.0))
        throw PoleError("riemann_zeta: pole at s = 1");
    if (s == Complex(0.0, 0.0))
        return Complex(-0.5, 0.0); // reflection would hit the s = 1 pole
    if (s.real() >= 0.5)
        return zeta_right_half(s);
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    Complex w = 1.0 - s;
    return cpow_real(2.0, s) * cpow_real(kPi, s - 1.0) * sin_pi(0.5 * s) *
           complex_gamma(w) * zeta_right_half(w);
}

Complex dirichlet_beta(Complex s) {
    if (s.real() >= 0.5)
        return beta_right_half(s);
    // beta(1 - w) = (pi/2)^{-w} sin(pi w / 2) Gamma(w) beta(w), w = 1 - s
    Complex w = 1.0 - s;
    return cpow_real(0.5 * kPi, -w) * sin_pi(0.5 * w) * complex_gamma(w) *
           beta_right_half(w);
}

} // namespace epstein
