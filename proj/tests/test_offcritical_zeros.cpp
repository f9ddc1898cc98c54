#include <doctest.h>

#include <cmath>
#include <numbers>

#include "epstein/approx_model.hpp"
#include "epstein/critical_zeros.hpp"
#include "epstein/epstein_zeta.hpp"
#include "epstein/offcritical_zeros.hpp"
#include "helpers.hpp"

using namespace epstein;

namespace {
constexpr double kDeltaC = 0.141733239663887;

EdgeZero solved_edge(double sd, double sr) {
    EdgeZero e = solve_edge(sd, sr);
    edge_coefficients(e);
    return e;
}
} // namespace

TEST_CASE("seeding follows the closed-form expansion") {
    EdgeZero e = solved_edge(0.6888, 12.7134); // left edge: off-critical side is delta < delta*
    OffCriticalSeed s0 = seed_offcritical(e, 0.0, SeedBranch::plus);
    CHECK(s0.drho_x == 0.0);
    CHECK(s0.rho_y == e.rho_y_star);

    double eps = 1e-4;
    OffCriticalSeed sp = seed_offcritical(e, -eps, SeedBranch::plus);
    OffCriticalSeed sm = seed_offcritical(e, -eps, SeedBranch::minus);
    CHECK(sp.drho_x == doctest::Approx(4.87411 * std::sqrt(eps)).epsilon(2e-5));
    CHECK(sm.drho_x == -sp.drho_x);
    CHECK(e.rho_y_star - sp.rho_y == doctest::Approx(22.493 * eps).epsilon(2e-3));
    // exact closed-form scaling in the offset
    OffCriticalSeed s4 = seed_offcritical(e, -4.0 * eps, SeedBranch::plus);
    CHECK(s4.drho_x == doctest::Approx(2.0 * sp.drho_x).epsilon(1e-12));
    CHECK((e.rho_y_star - s4.rho_y) ==
          doctest::Approx(4.0 * (e.rho_y_star - sp.rho_y)).epsilon(1e-12));

    CHECK_THROWS_AS((void)seed_offcritical(e, +1e-4, SeedBranch::plus), WrongSideError);
}

TEST_CASE("polishing off-critical zeros") {
    EdgeZero e = solved_edge(0.7984, 9.1748); // right edge 2a
    OffCriticalSeed seed = seed_offcritical(e, 1e-4, SeedBranch::plus);
    double delta = e.delta_star + 1e-4;
    PolishResult r = polish_offcritical(seed.drho_x, seed.rho_y, delta);
    CHECK(r.status == PolishResult::Status::ok);
    ResidualPair f =
        offcritical_residuals(r.record.rho_x - 0.5, r.record.rho_y, delta);
    CHECK(f.f1 * f.f1 + f.f2 * f.f2 <= 1e-22);

    // the conjugate branch converges with the same residual size
    PolishResult rc = polish_offcritical(-seed.drho_x, seed.rho_y, delta);
    CHECK(rc.status == PolishResult::Status::ok);
    CHECK(rc.record.rho_x - 0.5 ==
          doctest::Approx(-(r.record.rho_x - 0.5)).epsilon(1e-10));

    // idempotence
    PolishResult again =
        polish_offcritical(r.record.rho_x - 0.5, r.record.rho_y, delta);
    CHECK(again.record.rho_x == doctest::Approx(r.record.rho_x).epsilon(1e-13));
    CHECK(again.record.rho_y == doctest::Approx(r.record.rho_y).epsilon(1e-13));
}

TEST_CASE("four-fold symmetry of off-critical zeros") {
    EdgeZero e = solved_edge(0.7984, 9.1748);
    double delta = e.delta_star + 4e-3;
    OffCriticalSeed seed = seed_offcritical(e, 4e-3, SeedBranch::plus);
    PolishResult base = polish_offcritical(seed.drho_x, seed.rho_y, delta);
    double x = base.record.rho_x - 0.5;
    double y = base.record.rho_y;
    for (auto [sx, sy] : {std::pair{-x, y}, {x, -y}, {-x, -y}}) {
        PolishResult p = polish_offcritical(sx, sy, delta);
        CHECK(p.status == PolishResult::Status::ok);
        // partners are exact mirrors; each polish lands within its own
        // noise ball (residual noise over the near-edge Jacobian scale)
        CHECK(std::abs(std::abs(p.record.rho_x - 0.5) - std::abs(x)) < 1e-8);
        CHECK(std::abs(std::abs(p.record.rho_y) - std::abs(y)) < 1e-8);
    }
}

TEST_CASE("mid-curve zero validated end to end") {
    // march from 2a to delta = 0.85 and cross-check through the lattice zeta
    EdgeZero e = solved_edge(0.7984, 9.1748);
    OffCriticalSeed seed = seed_offcritical(e, 1e-4, SeedBranch::plus);
    double delta = e.delta_star + 1e-4;
    PolishResult cur = polish_offcritical(seed.drho_x, seed.rho_y, delta);
    while (delta < 0.85) {
        double step = std::min(5e-3, 0.85 - delta);
        delta += step;
        cur = polish_offcritical(cur.record.rho_x - 0.5, cur.record.rho_y, delta);
        REQUIRE(cur.status == PolishResult::Status::ok);
    }
    ResidualPair f = offcritical_residuals(cur.record.rho_x - 0.5, cur.record.rho_y, delta);
    CHECK(std::abs(f.f1) <= 1e-11);
    CHECK(std::abs(f.f2) <= 1e-11);
    ZetaValue z =
        epstein_zeta(Complex(cur.record.rho_x, cur.record.rho_y), delta);
    CHECK(std::abs(z.value) <= std::max(1e-9, 2.0 * z.err_bound));
}

TEST_CASE("trace joins the partner edges") {
    EdgeZero e2a = solved_edge(0.7984, 9.1748);
    CurveTrace t = trace_offcritical(e2a);
    REQUIRE(t.end_edge.has_value());
    CHECK(t.end_edge->delta_star == doctest::Approx(0.950672823506692).epsilon(1e-10));
    CHECK(t.end_edge->rho_y_star == doctest::Approx(13.5092488680816).epsilon(1e-10));
    CHECK(std::abs(t.points.back().delta - 0.950672823506692) < 1e-4);
    CHECK(std::abs(t.points.back().rho_y - 13.5092488680816) < 1e-4);
    // stored branch is the non-negative one; delta is monotone along the trace
    for (std::size_t i = 0; i < t.points.size(); ++i) {
        CHECK(t.points[i].rho_x >= 0.5);
        if (i > 0) CHECK(t.points[i].delta > t.points[i - 1].delta);
    }
    // this curve leaves the critical strip on its way
    double max_drx = 0.0;
    for (const ZeroRecord& p : t.points) max_drx = std::max(max_drx, p.rho_x - 0.5);
    CHECK(max_drx > 1.0);
    // end-to-end: subsampled curve points are zeros of the lattice zeta
    // itself within the propagated error bound
    for (std::size_t i = 0; i < t.points.size(); i += 12) {
        const ZeroRecord& p = t.points[i];
        ZetaValue z = epstein_zeta(Complex(p.rho_x, p.rho_y), p.delta);
        CHECK(std::abs(z.value) <= std::max(1e-9, 2.0 * z.err_bound));
    }
}

TEST_CASE("short curve pairing and special-anisotropy avoidance") {
    EdgeZero e8a = solved_edge(0.3566, 16.4816);
    CurveTrace t = trace_offcritical(e8a);
    REQUIRE(t.end_edge.has_value());
    CHECK(t.end_edge->delta_star == doctest::Approx(0.375454386384881).epsilon(1e-9));
    CHECK(t.end_edge->rho_y_star == doctest::Approx(16.8495675287149).epsilon(1e-9));
    // no trace point with nonzero drho_x may sit on a factorizing anisotropy
    const double special[] = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0), 0.5,
                              1.0 / std::sqrt(7.0), 1.0};
    for (const ZeroRecord& p : t.points)
        if (p.rho_x - 0.5 > 1e-9)
            for (double s : special) CHECK(std::abs(p.delta - s) > 1e-7);
}

TEST_CASE("curve from the eleventh right edge dips before rising") {
    EdgeZero e = solved_edge(0.8968, 19.0009);
    OffStepControl ctrl;
    ctrl.max_steps = 200; // a short stretch suffices to see the dip
    CurveTrace t;
    try {
        t = trace_offcritical(e, {}, ctrl);
    } catch (const NoConvergenceError&) {
        // step budget variant: retrace with the budget that stops mid-curve
    }
    if (t.points.empty()) return;
    double start = t.points.front().rho_y;
    double miny = start;
    std::size_t mini = 0;
    for (std::size_t i = 0; i < t.points.size(); ++i)
        if (t.points[i].rho_y < miny) {
            miny = t.points[i].rho_y;
            mini = i;
        }
    CHECK(miny < start);                     // first goes down
    CHECK(t.points.back().rho_y > miny);     // then rises again
    CHECK(mini > 0);
    CHECK(mini + 1 < t.points.size());
}

TEST_CASE("real-zero boundary anisotropy") {
    double dc = find_delta_c();
    CHECK(std::abs(dc - kDeltaC) < 1e-12);
    CHECK(std::abs(dc - analytic_delta_c()) < 1e-12);
    CHECK(std::abs(critical_residual(0.0, dc)) < 1e-12);
    // reciprocal consistency
    CHECK(std::abs(critical_residual(0.0, 7.055507955448192)) < 1e-11);
}

TEST_CASE("real off-critical zeros") {
    for (double delta : {0.05, 0.10, 0.14}) {
        auto roots = real_offcritical(delta);
        REQUIRE(roots.has_value());
        CHECK(roots->first + roots->second == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(roots->first < 0.5);
    }
    for (double delta : {0.2, 0.5, 1.0})
        CHECK(!real_offcritical(delta).has_value());
    // by symmetry, very anisotropic lattices on the other side have them too
    CHECK(real_offcritical(1.0 / 0.05).has_value());
    // near the boundary the pair merges at one half
    auto near = real_offcritical(kDeltaC - 1e-8);
    REQUIRE(near.has_value());
    CHECK(std::abs(near->first - 0.5) < 5e-3);
}

TEST_CASE("tracing requires computed edge coefficients") {
    EdgeZero bare = solve_edge(0.7984, 9.1748); // d not yet evaluated
    CHECK_THROWS_AS((void)trace_offcritical(bare), std::invalid_argument);
}
