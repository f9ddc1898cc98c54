#include <doctest.h>

#include <cmath>
#include <numbers>

#include "epstein/critical_zeros.hpp"
#include "epstein/special_functions.hpp"
#include "helpers.hpp"

using namespace epstein;
namespace oracle = testing_oracles;

namespace {
const double kDelta7 = 1.0 / std::sqrt(7.0);
constexpr double kDeltaC = 0.141733239663887;
}

TEST_CASE("scan finds the eight reference zeros below 15") {
    auto brackets = scan_critical(kDelta7, 0.5, 15.0, 0.05);
    REQUIRE(brackets.size() == 8);
    const double expected[] = {1.133090035457,  4.475738283729, 6.845491712491,
                               7.931630248198,  10.19781031911, 11.16018454312,
                               12.48960334303,  14.13472514173};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(brackets[i].lo <= expected[i]);
        CHECK(expected[i] <= brackets[i].hi);
    }
}

TEST_CASE("scan corner cases") {
    CHECK(scan_critical(0.7, 3.0, 3.0, 0.05).empty()); // empty range
    // at the on-axis edge the residual touches zero without a sign change
    CHECK(scan_critical(kDeltaC, -0.5, 0.5, 0.05).empty());
    CHECK_THROWS_AS((void)scan_critical(0.7, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("refine reproduces the reference zeros") {
    auto brackets = scan_critical(kDelta7, 0.5, 15.0, 0.05);
    REQUIRE(brackets.size() == 8);
    ZeroRecord first = refine_critical(brackets.front(), kDelta7);
    CHECK(first.rho_y == doctest::Approx(1.133090035457).epsilon(1e-9));
    CHECK(first.rho_x == 0.5);
    CHECK(first.residual <= 1e-11);
    ZeroRecord last = refine_critical(brackets.back(), kDelta7);
    CHECK(std::abs(last.rho_y - 14.13472514173) < 1e-8);
}

TEST_CASE("square lattice first zero agrees with the factorized product") {
    // at delta = 1 the spectrum factorizes through zeta and beta; the lowest
    // zero belongs to the beta factor near 6.02
    auto brackets = scan_critical(1.0, 0.5, 7.0, 0.05);
    REQUIRE(!brackets.empty());
    ZeroRecord z = refine_critical(brackets.front(), 1.0);
    Complex s(0.5, z.rho_y);
    Complex product = riemann_zeta(s) * dirichlet_beta(s);
    CHECK(std::abs(product) < 1e-9);
    // an independent coarse scan of |zeta*beta| dips at the same place
    double best_y = 0.0;
    double best = 1e300;
    for (double y = 0.5; y <= 7.0; y += 0.05) {
        double v = std::abs(riemann_zeta(Complex(0.5, y)) * dirichlet_beta(Complex(0.5, y)));
        if (v < best) {
            best = v;
            best_y = y;
        }
    }
    CHECK(std::abs(best_y - z.rho_y) <= 0.05);
}

TEST_CASE("tracing meets turning points that solve to edges") {
    // curve through the zero near 10.198: its fold sits at one edge
    auto b5 = scan_critical(kDelta7, 10.0, 10.4, 0.05);
    REQUIRE(!b5.empty());
    ZeroRecord z5 = refine_critical(b5.front(), kDelta7);
    StepControl ctrl;
    ctrl.direction = +1;
    ctrl.max_steps = 3000;
    ctrl.rho_y_min = 0.3;
    ctrl.rho_y_max = 20.0;
    CurveTrace t5 = trace_critical_curve(z5, 0.05, 0.9, ctrl);
    REQUIRE(!t5.turning_points.empty());
    const ZeroRecord& flag = t5.points[t5.turning_points.front()];
    EdgeZero e = solve_edge(flag.delta, flag.rho_y);
    CHECK(e.delta_star == doctest::Approx(0.578095740200051).epsilon(1e-10));
    CHECK(e.rho_y_star == doctest::Approx(11.2961629757333).epsilon(1e-10));
    // the flag sits within the local continuation step of the solved edge
    CHECK(std::hypot(flag.delta - e.delta_star, flag.rho_y - e.rho_y_star) <
          2.0 * ctrl.max_step);
    // every curve point satisfies the residual bound and the spacing bound
    for (std::size_t i = 1; i < t5.points.size(); ++i) {
        CHECK(t5.points[i].residual <= 1e-11);
        CHECK(std::hypot(t5.points[i].delta - t5.points[i - 1].delta,
                         t5.points[i].rho_y - t5.points[i - 1].rho_y) <=
              1.6 * ctrl.max_step);
    }
}

TEST_CASE("curve through the on-axis edge continues into negative rho_y") {
    auto b = scan_critical(0.1455, 0.05, 0.6, 0.02);
    REQUIRE(!b.empty());
    ZeroRecord seed = refine_critical(b.front(), 0.1455);
    StepControl ctrl;
    ctrl.direction = -1; // march toward the fold at smaller delta
    ctrl.max_steps = 800;
    ctrl.rho_y_min = -0.6;
    ctrl.rho_y_max = 1.0;
    ctrl.max_step = 5e-3;
    CurveTrace t = trace_critical_curve(seed, 0.13, 0.16, ctrl);
    double min_rho = 1e300;
    for (const ZeroRecord& p : t.points) min_rho = std::min(min_rho, p.rho_y);
    CHECK(min_rho < -0.2); // passed through the axis, reflection-symmetric branch
    REQUIRE(!t.turning_points.empty());
    const ZeroRecord& flag = t.points[t.turning_points.front()];
    CHECK(flag.delta == doctest::Approx(kDeltaC).epsilon(1e-4));
}

TEST_CASE("closed curve detection on a genuinely closed circuit") {
    auto b = scan_critical(kDelta7, 12.3, 12.7, 0.05);
    REQUIRE(!b.empty());
    ZeroRecord seed = refine_critical(b.front(), kDelta7);
    StepControl ctrl;
    ctrl.direction = +1;
    ctrl.max_steps = 20000;
    ctrl.rho_y_min = 0.3;
    ctrl.rho_y_max = 21.0;
    CurveTrace t = trace_critical_curve(seed, 0.05, 0.9, ctrl);
    CHECK(t.closed);
    CHECK(t.points.size() > 100);
    double end_dist = std::hypot(t.points.back().delta - seed.delta,
                                 t.points.back().rho_y - seed.rho_y);
    CHECK(end_dist < 0.05);
}

TEST_CASE("open curves are not flagged closed") {
    auto b = scan_critical(kDelta7, 10.0, 10.4, 0.05);
    ZeroRecord z = refine_critical(b.front(), kDelta7);
    StepControl ctrl;
    ctrl.direction = -1;
    ctrl.max_steps = 400;
    CurveTrace t = trace_critical_curve(z, 0.3, 0.9, ctrl);
    CHECK(!t.closed);
}

TEST_CASE("edge solves from coarse seeds") {
    EdgeZero e2a = solve_edge(0.80, 9.2);
    CHECK(e2a.delta_star == doctest::Approx(0.798382429865856).epsilon(1e-12));
    CHECK(e2a.rho_y_star == doctest::Approx(9.17479405815734).epsilon(1e-12));
    CHECK(e2a.side == EdgeSide::right);

    EdgeZero e3b = solve_edge(0.69, 12.7);
    CHECK(e3b.delta_star == doctest::Approx(0.688797339793161).epsilon(1e-12));
    CHECK(e3b.rho_y_star == doctest::Approx(12.7134082666419).epsilon(1e-12));
    CHECK(e3b.side == EdgeSide::left);

    EdgeZero e1 = solve_edge(0.14, 0.0);
    CHECK(e1.delta_star == doctest::Approx(kDeltaC).epsilon(1e-12));
    CHECK(e1.rho_y_star == 0.0);
    CHECK(e1.side == EdgeSide::left);
}

TEST_CASE("edge coefficients at the reference left edge") {
    EdgeZero e = solve_edge(0.6888, 12.7134);
    auto [a, b, c, d] = edge_coefficients(e);
    CHECK(std::sqrt(-a / c) == doctest::Approx(4.87411).epsilon(1.1e-4)); // +-5e-4 absolute
    CHECK(std::abs(std::sqrt(-a / c) - 4.87411) < 5e-4);
    CHECK(std::abs((b - a * d / c) / (2.0 * c) - 22.493) < 5e-2);
    // left edge: -a/c positive
    CHECK(-a / c > 0.0);
}

TEST_CASE("edge coefficients vanish by parity on the axis") {
    EdgeZero e1 = solve_edge(0.1417, 0.0);
    edge_coefficients(e1);
    CHECK(e1.b == 0.0);
    CHECK(e1.d == 0.0);
}

TEST_CASE("jacobian entry of the off-critical system vanishes at an edge") {
    // d f2 / d drho_x at (0, rho_y*, delta*) is the negative of the edge
    // condition, which is zero there
    EdgeZero e = solve_edge(0.6888, 12.7134);
    Jacobian2 jac = residual_jacobian(0.0, e.rho_y_star, e.delta_star);
    CHECK(std::abs(jac[1][0]) < 1e-10);
}

TEST_CASE("edge expansion") {
    EdgeZero e = solve_edge(0.6888, 12.7134);
    edge_coefficients(e);
    auto [up0, down0] = edge_expansion(e, e.delta_star);
    CHECK(up0 == e.rho_y_star);
    CHECK(down0 == e.rho_y_star);
    // prediction against refined zeros on both branches
    double delta = e.delta_star + 1e-4;
    auto [up, down] = edge_expansion(e, delta);
    auto bu = scan_critical(delta, up - 0.02, up + 0.02, 0.004);
    auto bd = scan_critical(delta, down - 0.02, down + 0.02, 0.004);
    REQUIRE(!bu.empty());
    REQUIRE(!bd.empty());
    CHECK(std::abs(refine_critical(bu.front(), delta).rho_y - up) < 1e-4);
    CHECK(std::abs(refine_critical(bd.front(), delta).rho_y - down) < 1e-4);
    CHECK_THROWS_AS((void)edge_expansion(e, e.delta_star - 1e-3), WrongSideError);
}

TEST_CASE("square root law of the branches at an edge") {
    EdgeZero e = solve_edge(0.6888, 12.7134);
    // window below 1e-4: the linear drift term would bias a wider log-log fit
    std::vector<double> lx, ly;
    for (double dd : {1e-6, 3e-6, 1e-5, 3e-5, 1e-4}) {
        double delta = e.delta_star + dd;
        double guess = e.rho_y_star + std::sqrt(-(e.a / e.c) * dd);
        double half = std::max(0.4 * std::sqrt(-(e.a / e.c) * dd), 1e-5);
        auto b = scan_critical(delta, guess - half, guess + half, half / 4.0);
        REQUIRE(!b.empty());
        ZeroRecord z = refine_critical(b.front(), delta);
        lx.push_back(std::log(dd));
        ly.push_back(std::log(std::abs(z.rho_y - e.rho_y_star)));
    }
    double slope = oracle::regression_slope(lx, ly);
    CHECK(std::abs(slope - 0.5) < 0.02);
}

TEST_CASE("zero spectrum is invariant under delta inversion") {
    auto b1 = scan_critical(0.7, 0.5, 8.0, 0.05);
    auto b2 = scan_critical(1.0 / 0.7, 0.5, 8.0, 0.05);
    REQUIRE(b1.size() == b2.size());
    for (std::size_t i = 0; i < b1.size(); ++i) {
        double z1 = refine_critical(b1[i], 0.7).rho_y;
        double z2 = refine_critical(b2[i], 1.0 / 0.7).rho_y;
        CHECK(std::abs(z1 - z2) < 1e-10);
    }
}

TEST_CASE("expansion coefficients are the derivatives of the fold equations") {
    // a = dE1/ddelta, -b = dE2/ddelta, 2c = dE2/drho_y where E1 is the
    // critical residual and E2 its rho_y derivative; check by centered
    // differences at a generic (non-edge) point
    const double delta = 0.71, rho = 9.4, h = 1e-6;
    QuadratureSpec q{1e-14, 1e-14, 8192};
    EdgeZero probe;
    probe.delta_star = delta;
    probe.rho_y_star = rho;
    auto [a, b, c, d] = edge_coefficients(probe, q);

    auto e1 = [&](double dd) { return critical_residual(rho, dd, q); };
    CHECK(std::abs(a - oracle::centered_diff(e1, delta, h)) < 1e-7);

    auto e2_of = [&](double rr, double dd) {
        double onep = 1.0 + 4.0 * rr * rr;
        return 16.0 * rr / (onep * onep) -
               integrate_kernel({-0.5, 1, Trig::sin, rr, Hyp::one, 0.0}, dd, q).value;
    };
    auto e2_d = [&](double dd) { return e2_of(rho, dd); };
    auto e2_r = [&](double rr) { return e2_of(rr, delta); };
    CHECK(std::abs(-b - oracle::centered_diff(e2_d, delta, h)) < 1e-7);
    CHECK(std::abs(2.0 * c - oracle::centered_diff(e2_r, rho, h)) < 1e-7);
}
