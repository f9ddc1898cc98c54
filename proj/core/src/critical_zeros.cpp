#include "epstein/critical_zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/panel_quad.hpp"
#include "detail/qfloat.hpp"
#include "detail/root_finding.hpp"

namespace epstein {

namespace {

// Edge work runs at quad precision: the Jacobian entries of the edge
// system decay like the oscillatory integrals themselves (down to ~1e-14
// at rho_y ~ 21), so double-precision quadrature bias alone would move
// the solved coordinates by ~1e-7 and extended double by ~1e-10.
const QuadratureSpec kEdgeQuad{1e-24, 1e-24, 65536};

detail::qfloat e1_value(double rho_y, double delta, const QuadratureSpec& q) {
    auto i = detail::integrate_weighted<detail::qfloat>(
        {-0.5, 0, Trig::cos, rho_y, Hyp::one, 0.0}, delta, q, false);
    detail::qfloat r(rho_y);
    return detail::qfloat(-2) / (detail::qfloat(1) + detail::qfloat(4) * r * r) + i.value;
}

// d/d(rho_y) of the critical residual; vanishing together with it defines
// an edge.
detail::qfloat e2_value(double rho_y, double delta, const QuadratureSpec& q) {
    auto i = detail::integrate_weighted<detail::qfloat>(
        {-0.5, 1, Trig::sin, rho_y, Hyp::one, 0.0}, delta, q, false);
    detail::qfloat r(rho_y);
    detail::qfloat onep = detail::qfloat(1) + detail::qfloat(4) * r * r;
    return detail::qfloat(16) * r / (onep * onep) - i.value;
}

detail::qfloat coeff_a_value(double rho_y, double delta, const QuadratureSpec& q) {
    return detail::integrate_weighted<detail::qfloat>(
               {-0.5, 0, Trig::cos, rho_y, Hyp::one, 0.0}, delta, q, true)
        .value;
}

detail::qfloat coeff_b_value(double rho_y, double delta, const QuadratureSpec& q) {
    return detail::integrate_weighted<detail::qfloat>(
               {-0.5, 1, Trig::sin, rho_y, Hyp::one, 0.0}, delta, q, true)
        .value;
}

detail::qfloat coeff_c_value(double rho_y, double delta, const QuadratureSpec& q) {
    auto i = detail::integrate_weighted<detail::qfloat>(
        {-0.5, 2, Trig::cos, rho_y, Hyp::one, 0.0}, delta, q, false);
    detail::qfloat r(rho_y);
    detail::qfloat onep = detail::qfloat(1) + detail::qfloat(4) * r * r;
    return detail::qfloat(8) * (detail::qfloat(1) - detail::qfloat(12) * r * r) /
               (onep * onep * onep) -
           detail::qfloat(0.5) * i.value;
}

detail::qfloat coeff_d_value(double rho_y, double delta, const QuadratureSpec& q) {
    auto i = detail::integrate_weighted<detail::qfloat>(
        {-0.5, 3, Trig::sin, rho_y, Hyp::one, 0.0}, delta, q, false);
    detail::qfloat r(rho_y);
    detail::qfloat onep = detail::qfloat(1) + detail::qfloat(4) * r * r;
    return detail::qfloat(128) * r * (detail::qfloat(1) - detail::qfloat(4) * r * r) /
               (onep * onep * onep * onep) -
           i.value / detail::qfloat(6);
}

EdgeSide classify_side(double a, double c) {
    return (-a / c > 0.0) ? EdgeSide::left : EdgeSide::right;
}

// reduced edge solve on the rho_y = 0 axis (the rho_y derivative condition
// is identically satisfied there)
EdgeZero solve_edge_on_axis(double seed_delta, const QuadratureSpec&) {
    auto f = [&](double d) { return static_cast<double>(e1_value(0.0, d, kEdgeQuad)); };
    double lo = seed_delta * 0.9;
    double hi = seed_delta * 1.1;
    double flo = f(lo), fhi = f(hi);
    for (int grow = 0; grow < 40 && (flo > 0.0) == (fhi > 0.0); ++grow) {
        lo *= 0.92;
        hi *= 1.08;
        flo = f(lo);
        fhi = f(hi);
    }
    double root = detail::brent_root(f, lo, hi, flo, fhi, 1e-15);
    EdgeZero e;
    e.delta_star = root;
    e.rho_y_star = 0.0;
    e.a = static_cast<double>(coeff_a_value(0.0, root, kEdgeQuad));
    e.b = 0.0; // sin weight vanishes identically at rho_y* = 0
    e.c = static_cast<double>(coeff_c_value(0.0, root, kEdgeQuad));
    e.d = 0.0;
    e.side = classify_side(e.a, e.c);
    return e;
}

// Corrector pieces of the curve tracer run in long double: the residual
// gradient vanishes at edges, so double-precision quadrature noise would
// stall the corrector whenever a curve passes a fold.
const QuadratureSpec kTraceQuad{1e-16, 1e-16, 32768};

double trace_residual(double rho_y, double delta) {
    auto i = detail::integrate_weighted<long double>(
        {-0.5, 0, Trig::cos, rho_y, Hyp::one, 0.0}, delta, kTraceQuad, false);
    long double r = rho_y;
    return static_cast<double>(-2.0L / (1.0L + 4.0L * r * r) + i.value);
}

double trace_residual_ddelta(double rho_y, double delta) {
    return static_cast<double>(detail::integrate_weighted<long double>(
                                   {-0.5, 0, Trig::cos, rho_y, Hyp::one, 0.0}, delta,
                                   kTraceQuad, true)
                                   .value);
}

double trace_residual_drho(double rho_y, double delta) {
    auto i = detail::integrate_weighted<long double>(
        {-0.5, 1, Trig::sin, rho_y, Hyp::one, 0.0}, delta, kTraceQuad, false);
    long double r = rho_y;
    long double onep = 1.0L + 4.0L * r * r;
    return static_cast<double>(16.0L * r / (onep * onep) - i.value);
}

} // namespace

std::vector<Bracket> scan_critical(double delta, double rho_y_min, double rho_y_max,
                                   double grid_step, const QuadratureSpec& q) {
    if (!(grid_step > 0.0))
        throw std::invalid_argument("scan_critical: grid_step must be positive");
    std::vector<Bracket> out;
    if (rho_y_max <= rho_y_min) return out;
    double prev_x = rho_y_min;
    double prev_f = critical_residual(prev_x, delta, q);
    while (prev_x < rho_y_max) {
        double x = std::min(prev_x + grid_step, rho_y_max);
        double fx = critical_residual(x, delta, q);
        if (prev_f == 0.0 || (prev_f > 0.0) != (fx > 0.0))
            out.push_back({prev_x, x});
        prev_x = x;
        prev_f = fx;
    }
    return out;
}

ZeroRecord refine_critical(const Bracket& bracket, double delta, const QuadratureSpec&) {
    // extended-precision residual: the derivative of the residual decays
    // with rho_y, so double-precision noise alone would cost ~1e-8 in the
    // located root near rho_y ~ 14
    auto f = [&](double r) { return trace_residual(r, delta); };
    double fa = f(bracket.lo);
    double fb = f(bracket.hi);
    double root = detail::brent_root(f, bracket.lo, bracket.hi, fa, fb, 1e-14);
    double res = std::abs(f(root));
    if (res > 1e-11)
        throw NoConvergenceError("refine_critical: residual above acceptance threshold");
    return {delta, 0.5, root, ZeroKind::critical, res};
}

CurveTrace trace_critical_curve(const ZeroRecord& seed, double delta_lo, double delta_hi,
                                const StepControl& ctrl, const QuadratureSpec& q) {
    CurveTrace trace;
    trace.kind = ZeroKind::critical;

    double d = seed.delta;
    double r = seed.rho_y;

    // tangent from the gradient of the residual at the seed
    double gd = trace_residual_ddelta(r, d);
    double gr = trace_residual_drho(r, d);
    double norm = std::hypot(gd, gr);
    if (norm == 0.0)
        throw NoConvergenceError("trace_critical_curve: degenerate seed gradient");
    double td = -gr / norm;
    double tr = gd / norm;
    double orient = (std::abs(td) > 1e-12) ? (ctrl.direction * td > 0.0 ? 1.0 : -1.0)
                                           : (ctrl.direction * tr > 0.0 ? 1.0 : -1.0);
    td *= orient;
    tr *= orient;

    trace.points.push_back(seed);

    double h = ctrl.initial_step;
    bool left_start = false;

    // turning points are detected with hysteresis: the delta-component of
    // the tangent must be confirmed (|t_d| >= 0.05) on both sides of a sign
    // change, and the flagged point is the delta-extremal one in between
    // (the fold apex); this ignores tangent flicker on near-vertical runs
    int confirmed_dir = (std::abs(td) >= 0.05) ? (td > 0.0 ? 1 : -1) : 0;
    std::size_t extreme_idx = 0;
    double extreme_val = d;

    for (int step = 0; step < ctrl.max_steps; ++step) {
        bool accepted = false;
        double nd = d, nr = r;
        int iters_used = 0;
        while (!accepted) {
            nd = d + h * td;
            nr = r + h * tr;
            bool ok = false;
            for (int it = 0; it < 12; ++it) {
                double f1 = trace_residual(nr, nd);
                double f2 = (nd - d) * td + (nr - r) * tr - h;
                double j11 = trace_residual_ddelta(nr, nd);
                double j12 = trace_residual_drho(nr, nd);
                auto [sd, sr] = detail::solve2x2(j11, j12, td, tr, f1, f2);
                nd -= sd;
                nr -= sr;
                iters_used = it + 1;
                // absolute tolerance for the usual case plus a step-relative
                // one for near-degenerate folds, where the noise floor of
                // residual/gradient exceeds any fixed tolerance
                double step_len = std::hypot(sd, sr);
                if (std::abs(f1) <= ctrl.zero_tol &&
                    step_len <= std::max(3e-8 * (1.0 + h), 0.01 * h)) {
                    ok = true;
                    break;
                }
            }
            if (ok) {
                accepted = true;
            } else {
                h *= 0.5;
                if (h < ctrl.min_step)
                    throw StepCollapseError("trace_critical_curve: step collapsed");
            }
        }

        double res = std::abs(trace_residual(nr, nd));
        trace.points.push_back({nd, 0.5, nr, ZeroKind::critical, res});

        // new tangent from the secant of the last two points
        double sd = nd - d, sr = nr - r;
        double slen = std::hypot(sd, sr);
        double ntd = sd / slen, ntr = sr / slen;
        td = ntd;
        tr = ntr;
        d = nd;
        r = nr;

        std::size_t idx = trace.points.size() - 1;
        if ((confirmed_dir > 0 && d > extreme_val) || (confirmed_dir < 0 && d < extreme_val)) {
            extreme_val = d;
            extreme_idx = idx;
        }
        if (std::abs(ntd) >= 0.05) {
            int s = ntd > 0.0 ? 1 : -1;
            if (confirmed_dir != 0 && s != confirmed_dir)
                trace.turning_points.push_back(extreme_idx);
            if (s != confirmed_dir) {
                confirmed_dir = s;
                extreme_val = d;
                extreme_idx = idx;
            }
        }

        // closure test against the seed
        double dist0 = std::hypot(d - seed.delta, r - seed.rho_y);
        if (left_start && dist0 < std::max(1.5 * h, 4.0 * ctrl.initial_step)) {
            trace.closed = true;
            break;
        }
        if (!left_start && dist0 > std::max(10.0 * ctrl.initial_step, 0.05))
            left_start = true;

        if (d < delta_lo || d > delta_hi || r < ctrl.rho_y_min || r > ctrl.rho_y_max)
            break;

        if (iters_used <= 3)
            h = std::min(2.0 * h, ctrl.max_step);
        else if (iters_used >= 8)
            h = std::max(0.5 * h, ctrl.min_step);
    }
    return trace;
}

EdgeZero solve_edge(double seed_delta, double seed_rho_y, const QuadratureSpec& q) {
    if (!(seed_delta > 0.0))
        throw std::domain_error("solve_edge: seed delta must be positive");
    if (std::abs(seed_rho_y) < 1e-6)
        return solve_edge_on_axis(seed_delta, q);

    double d = seed_delta;
    double r = seed_rho_y;
    bool converged = false;
    double prev_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
        detail::qfloat e1 = e1_value(r, d, kEdgeQuad);
        detail::qfloat e2 = e2_value(r, d, kEdgeQuad);
        detail::qfloat a = coeff_a_value(r, d, kEdgeQuad);
        detail::qfloat b = coeff_b_value(r, d, kEdgeQuad);
        detail::qfloat c = coeff_c_value(r, d, kEdgeQuad);
        // J = [[dE1/dd, dE1/dr], [dE2/dd, dE2/dr]] = [[a, e2], [-b, 2c]];
        // dE1/dr equals the edge condition itself
        detail::qfloat det = a * detail::qfloat(2) * c + e2 * b;
        if (det == detail::qfloat(0) || !std::isfinite(static_cast<double>(det)))
            throw NoConvergenceError("solve_edge: singular Jacobian");
        double sd = static_cast<double>((e1 * detail::qfloat(2) * c - e2 * e2) / det);
        double sr = static_cast<double>((a * e2 + b * e1) / det);
        // keep the iteration local: nearby edges can sit close together
        sd = std::clamp(sd, -0.02, 0.02);
        sr = std::clamp(sr, -0.2, 0.2);
        d -= sd;
        r -= sr;
        if (!(d > 1e-3) || !(d < 1.5) || std::abs(r) > 40.0)
            throw NoConvergenceError("solve_edge: iteration left the search domain");
        double step = std::hypot(sd, sr);
        if (step < 1e-12 * (1.0 + std::abs(d) + std::abs(r))) {
            converged = true;
            break;
        }
        // noise floor of the long double quadrature: steps stop contracting
        if (step < 1e-7 && step >= 0.5 * prev_step) {
            converged = true;
            break;
        }
        prev_step = step;
    }
    if (!converged)
        throw NoConvergenceError("solve_edge: no convergence");
    if (std::abs(r) < 1e-10)
        return solve_edge_on_axis(d, q);

    double e1 = static_cast<double>(e1_value(r, d, kEdgeQuad));
    double e2 = static_cast<double>(e2_value(r, d, kEdgeQuad));
    if (std::abs(e1) > 1e-11 || std::abs(e2) > 1e-11)
        throw NoConvergenceError("solve_edge: residuals above acceptance threshold");

    double a = static_cast<double>(coeff_a_value(r, d, kEdgeQuad));
    double b = static_cast<double>(coeff_b_value(r, d, kEdgeQuad));
    double c = static_cast<double>(coeff_c_value(r, d, kEdgeQuad));
    if (c == 0.0 || !std::isfinite(-a / c))
        throw NoConvergenceError("solve_edge: degenerate edge (c vanishes)");

    EdgeZero e;
    e.delta_star = d;
    e.rho_y_star = std::abs(r);
    e.a = a;
    e.b = (r < 0.0) ? -b : b; // coefficients quoted for the rho_y > 0 representative
    e.c = c;
    e.d = std::numeric_limits<double>::quiet_NaN();
    e.side = classify_side(a, c);
    return e;
}

std::array<double, 4> edge_coefficients(EdgeZero& e, const QuadratureSpec&) {
    e.a = static_cast<double>(coeff_a_value(e.rho_y_star, e.delta_star, kEdgeQuad));
    e.b = static_cast<double>(coeff_b_value(e.rho_y_star, e.delta_star, kEdgeQuad));
    e.c = static_cast<double>(coeff_c_value(e.rho_y_star, e.delta_star, kEdgeQuad));
    e.d = static_cast<double>(coeff_d_value(e.rho_y_star, e.delta_star, kEdgeQuad));
    return {e.a, e.b, e.c, e.d};
}

std::pair<double, double> edge_expansion(const EdgeZero& e, double delta) {
    double dd = delta - e.delta_star;
    double arg = -(e.a / e.c) * dd;
    if (arg < 0.0)
        throw WrongSideError("edge_expansion: no real branches on this side of the edge");
    double sqrt_term = std::sqrt(arg);
    double linear = 0.5 / e.c * (e.b - e.a * e.d / e.c) * dd;
    return {e.rho_y_star + sqrt_term + linear, e.rho_y_star - sqrt_term + linear};
}

} // namespace epstein
