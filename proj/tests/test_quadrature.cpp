#include <doctest.h>

#include <cmath>
#include <numbers>

#include "epstein/epstein_zeta.hpp"
#include "epstein/quadrature.hpp"
#include "epstein/theta_kernel.hpp"
#include "helpers.hpp"

using namespace epstein;
namespace oracle = testing_oracles;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDeltaC = 0.141733239663887;
}

TEST_CASE("plain kernel integral equals 2 at the real-zero boundary") {
    IntegralResult r = integrate_kernel({-0.5, 0, Trig::one, 0.0, Hyp::one, 0.0}, kDeltaC, {});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.err_bound < 1e-12);
}

TEST_CASE("identically zero weights return exact zero") {
    CHECK(integrate_kernel({-0.5, 1, Trig::sin, 0.0, Hyp::one, 0.0}, 0.7, {}).value == 0.0);
    CHECK(integrate_kernel({-0.5, 0, Trig::cos, 2.0, Hyp::sinh, 0.0}, 0.7, {}).value == 0.0);
}

TEST_CASE("assembled at s = 3 the integral matches the direct lattice sum") {
    // completed form at s = 3, delta = 1 against the absolutely convergent sum
    QuadratureSpec q;
    double dx = 2.5;
    IntegralResult icc = integrate_kernel({-0.5, 0, Trig::cos, 0.0, Hyp::cosh, dx}, 1.0, q);
    double z3 = -0.5 * (1.0 / (1.0 - 3.0) + 1.0 / 3.0) + icc.value;
    DirectSum ds = direct_sum({3.0, 0.0}, 1.0, 400);
    double expected = std::pow(1.0 / kPi, 3.0) * 2.0 * ds.value.real(); // Gamma(3) = 2
    CHECK(std::abs(z3 - expected) < 1e-9);
}

TEST_CASE("tolerance halving changes the result by less than the reported bound") {
    QuadratureSpec base{1e-10, 1e-10, 4096};
    QuadratureSpec tight{1e-11, 1e-11, 4096};
    int idx = 0;
    for (double delta : {0.2, 0.7, 1.0, 3.1}) {
        for (WeightSpec w : {WeightSpec{-0.5, 0, Trig::cos, 3.7, Hyp::one, 0.0},
                             WeightSpec{-0.5, 1, Trig::sin, 9.2, Hyp::one, 0.0},
                             WeightSpec{-0.5, 0, Trig::cos, 14.0, Hyp::cosh, 0.3},
                             WeightSpec{0.5, 2, Trig::cos, 5.0, Hyp::one, 0.0},
                             WeightSpec{-0.5, 3, Trig::sin, 7.7, Hyp::sinh, 0.2}}) {
            IntegralResult coarse = integrate_kernel(w, delta, base);
            IntegralResult fine = integrate_kernel(w, delta, tight);
            CHECK(std::abs(coarse.value - fine.value) <= coarse.err_bound);
            ++idx;
        }
    }
    CHECK(idx == 20);
}

TEST_CASE("delta inversion invariance") {
    for (WeightSpec w : {WeightSpec{-0.5, 0, Trig::cos, 6.0, Hyp::one, 0.0},
                         WeightSpec{-0.5, 2, Trig::cos, 11.0, Hyp::one, 0.0},
                         WeightSpec{0.5, 1, Trig::sin, 4.0, Hyp::one, 0.0}}) {
        IntegralResult a = integrate_kernel(w, 0.45, {});
        IntegralResult b = integrate_kernel(w, 1.0 / 0.45, {});
        CHECK(std::abs(a.value - b.value) <= 1e-13);
    }
}

TEST_CASE("substitution consistency against a raw-t adaptive Simpson oracle") {
    // same integral evaluated in the raw t variable; the region below t0
    // contributes less than the kernel tail bound
    WeightSpec w{-0.5, 0, Trig::cos, 2.5, Hyp::one, 0.0};
    double delta = 0.8;
    auto integrand = [&](double t) {
        return std::cos(2.5 * std::log(t)) / std::sqrt(t) * theta_kernel(t, delta);
    };
    double t0 = 1e-4;
    double raw = oracle::adaptive_simpson(integrand, t0, 1.0, 1e-13);
    IntegralResult lib = integrate_kernel(w, delta, {});
    // below t0 the integrand is bounded by 2 t^{-3/2} e^{-pi delta / t}
    double tail = 4.0 * std::pow(t0, -1.5) * std::exp(-kPi * delta / t0);
    CHECK(std::abs(raw - lib.value) <= 1e-10 + tail);
}

TEST_CASE("tolerance failure carries the best estimate") {
    QuadratureSpec q{1e-14, 1e-14, 8};
    try {
        (void)integrate_kernel({-0.5, 0, Trig::cos, 21.0, Hyp::one, 0.0}, 0.14, q);
        FAIL("expected ToleranceError");
    } catch (const ToleranceError& e) {
        CHECK(std::isinf(e.err_bound));
    }
}

TEST_CASE("weight validation") {
    CHECK_THROWS_AS(
        (void)integrate_kernel({-0.25, 0, Trig::one, 0.0, Hyp::one, 0.0}, 1.0, {}),
        std::domain_error);
    CHECK_THROWS_AS(
        (void)integrate_kernel({-0.5, 4, Trig::one, 0.0, Hyp::one, 0.0}, 1.0, {}),
        std::domain_error);
    CHECK_THROWS_AS(
        (void)integrate_kernel({-0.5, 0, Trig::one, 0.0, Hyp::cosh, 33.0}, 1.0, {}),
        std::domain_error);
    CHECK_THROWS_AS(
        (void)integrate_kernel({-0.5, 0, Trig::one, 0.0, Hyp::one, 0.0}, -1.0, {}),
        std::domain_error);
}
