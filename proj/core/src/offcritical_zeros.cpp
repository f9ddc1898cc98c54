#include "epstein/offcritical_zeros.hpp"

#include <algorithm>
#include <cmath>

#include "detail/root_finding.hpp"

namespace epstein {

namespace {

double norm2(const ResidualPair& f) { return f.f1 * f.f1 + f.f2 * f.f2; }

// signed offset pointing from the edge toward its off-critical side
double offcritical_direction(const EdgeZero& e) {
    return e.side == EdgeSide::left ? -1.0 : +1.0;
}

} // namespace

OffCriticalSeed seed_offcritical(const EdgeZero& e, double d_delta, SeedBranch branch) {
    if (!std::isfinite(e.d))
        throw std::invalid_argument("seed_offcritical: edge coefficients not computed");
    double arg = (e.a / e.c) * d_delta;
    if (d_delta != 0.0 && arg < 0.0)
        throw WrongSideError("seed_offcritical: d_delta points to the critical side");
    double drx = std::sqrt(std::max(arg, 0.0));
    if (branch == SeedBranch::minus) drx = -drx;
    double dry = 0.5 / e.c * (e.b - e.a * e.d / e.c) * d_delta;
    return {e, d_delta, drx, e.rho_y_star + dry};
}

PolishResult polish_offcritical(double drho_x, double rho_y, double delta,
                                const QuadratureSpec& q, double accept_f2) {
    // damped Newton that keeps stepping while the residual improves; the
    // best iterate is returned, so a point already at the noise floor comes
    // back unchanged (idempotence) while crude guesses polish fully even in
    // near-fold regions where the raw residual is tiny everywhere
    double x = drho_x;
    double y = rho_y;
    ResidualPair f = offcritical_residuals(x, y, delta, q);
    double fn = norm2(f);
    double best_x = x, best_y = y, best_fn = fn;
    int iterations = 0;
    for (int it = 1; it <= 40; ++it) {
        Jacobian2 jac = residual_jacobian(x, y, delta, q);
        auto [sx, sy] =
            detail::solve2x2(jac[0][0], jac[0][1], jac[1][0], jac[1][1], f.f1, f.f2);
        double lambda = 1.0;
        double nx = x, ny = y;
        ResidualPair nf = f;
        double nfn = fn;
        bool moved = false;
        for (int damp = 0; damp < 12; ++damp) {
            nx = x - lambda * sx;
            ny = y - lambda * sy;
            if (std::abs(nx) < 8.0) { // stay inside the evaluable domain
                nf = offcritical_residuals(nx, ny, delta, q);
                nfn = norm2(nf);
                if (nfn < fn) {
                    moved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!moved) break; // noise floor (or genuinely stuck)
        x = nx;
        y = ny;
        f = nf;
        fn = nfn;
        iterations = it;
        if (fn < best_fn) {
            best_fn = fn;
            best_x = x;
            best_y = y;
        }
        if (fn <= accept_f2 &&
            std::hypot(sx, sy) <= 1e-11 * (1.0 + std::abs(x) + std::abs(y)))
            break;
    }
    if (best_fn > accept_f2)
        throw NoConvergenceError("polish_offcritical: no convergence");
    if (std::abs(best_x) < 1e-12)
        return {PolishResult::Status::at_critical,
                {delta, 0.5, best_y, ZeroKind::critical, std::sqrt(best_fn)},
                iterations};
    return {PolishResult::Status::ok,
            {delta, 0.5 + best_x, best_y, ZeroKind::off_critical, std::sqrt(best_fn)},
            iterations};
}

CurveTrace trace_offcritical(const EdgeZero& e, const QuadratureSpec& q,
                             const OffStepControl& ctrl) {
    if (!std::isfinite(e.d))
        throw std::invalid_argument("trace_offcritical: edge coefficients not computed");
    CurveTrace trace;
    trace.kind = ZeroKind::off_critical;
    trace.start_edge = e;

    const double dir = offcritical_direction(e);

    // leave the edge with the asymptotic seed
    OffCriticalSeed seed = seed_offcritical(e, dir * ctrl.initial_step, SeedBranch::plus);
    PolishResult first = polish_offcritical(seed.drho_x, seed.rho_y, e.delta_star + seed.d_delta,
                                            q, ctrl.accept_f2);
    if (first.status != PolishResult::Status::ok)
        throw NoConvergenceError("trace_offcritical: seed polished onto the critical line");
    first.record.rho_x = 0.5 + std::abs(first.record.rho_x - 0.5);
    trace.points.push_back(first.record);

    double h = ctrl.initial_step;
    int steps_done = 1;
    bool endgame = false;
    double drx_peak = std::abs(first.record.rho_x - 0.5);

    auto predict = [&](double next_delta) -> std::pair<double, double> {
        const ZeroRecord& last = trace.points.back();
        double x = last.rho_x - 0.5;
        double y = last.rho_y;
        if (trace.points.size() >= 2) {
            const ZeroRecord& prev = trace.points[trace.points.size() - 2];
            double dd = last.delta - prev.delta;
            if (dd != 0.0) {
                double sx = (last.rho_x - prev.rho_x) / dd;
                double sy = (last.rho_y - prev.rho_y) / dd;
                double step = next_delta - last.delta;
                // the branch behaves like sqrt near the source edge; the
                // secant underestimates, which the corrector absorbs
                x += sx * step;
                y += sy * step;
            }
        }
        x = std::clamp(x, -7.9, 7.9); // guesses must stay in the evaluable domain
        return {x, y};
    };

    while (steps_done < ctrl.max_steps) {
        if (h < 5e-7) break; // pinned against the partner edge
        const ZeroRecord& last = trace.points.back();
        const double drx_last = last.rho_x - 0.5;

        // fold-aware step limit: near the partner edge drho_x^2 is linear in
        // delta, so the remaining distance to the fold can be predicted and
        // must never be overstepped (beyond it the polisher lands on
        // critical-line points whose tiny drho_x is numerically undecidable)
        if (trace.points.size() >= 2 && drx_last < 0.2) {
            const ZeroRecord& prev = trace.points[trace.points.size() - 2];
            double x1 = prev.rho_x - 0.5;
            double q1 = x1 * x1;
            double q2 = drx_last * drx_last;
            double dm = dir * (last.delta - prev.delta);
            if (dm > 0.0) {
                double slope = (q2 - q1) / dm;
                if (slope < 0.0) {
                    double remaining = -q2 / slope;
                    if (remaining < 1e-6) break; // terminal point at the fold
                    h = std::min(h, 0.5 * remaining);
                    if (h < 5e-7) break;
                }
            }
        }

        double next_delta = last.delta + dir * h;
        if (next_delta <= ctrl.runaway_lo || next_delta >= ctrl.runaway_hi)
            throw RunawayError("trace_offcritical: delta left the admissible window");

        auto [gx, gy] = predict(next_delta);
        bool stepped = false;
        int iters = 0;
        try {
            PolishResult r = polish_offcritical(gx, gy, next_delta, q, ctrl.accept_f2);
            double drx = std::abs(r.record.rho_x - 0.5);
            // reject landings that overstep the fold or hop across to another
            // curve: on the descent one step may consume at most half of the
            // remaining drho_x^2 budget, so the fold is approached
            // geometrically and never crossed
            bool descending = drx_last < 0.95 * drx_peak;
            bool collapsed = r.status == PolishResult::Status::at_critical ||
                             drx < std::max(1e-6, 0.4 * drx_last) ||
                             (descending && drx * drx < 0.5 * drx_last * drx_last);
            if (!collapsed) {
                r.record.rho_x = 0.5 + drx;
                trace.points.push_back(r.record);
                ++steps_done;
                iters = r.iterations;
                drx_peak = std::max(drx_peak, drx);
                stepped = true;
            }
        } catch (const NoConvergenceError&) {
            stepped = false;
        }

        if (!stepped) {
            if (drx_last < 0.1) endgame = true; // near-fold: only shrink from here
            h *= 0.5;
            continue;
        }
        if (!endgame) {
            // step schedule: a few fixed tiny steps leaving the edge, then
            // adaptive steps driven by the Newton iteration count
            if (steps_done <= ctrl.fixed_steps)
                h = ctrl.initial_step;
            else if (iters <= 3)
                h = std::clamp(2.0 * h, ctrl.min_adaptive, ctrl.max_adaptive);
            else if (iters >= 8)
                h = std::clamp(0.5 * h, ctrl.min_adaptive, ctrl.max_adaptive);
            else
                h = std::clamp(h, ctrl.min_adaptive, ctrl.max_adaptive);
        }
        // in the endgame h only ever shrinks, homing in on the fold
    }
    if (steps_done >= ctrl.max_steps)
        throw NoConvergenceError("trace_offcritical: step budget exhausted");

    // identify the partner edge from the terminal point (best effort: the
    // partner can sit outside the well-behaved window, e.g. above rho_y ~ 21)
    const ZeroRecord& terminal = trace.points.back();
    try {
        EdgeZero partner = solve_edge(terminal.delta, terminal.rho_y, q);
        edge_coefficients(partner, q);
        trace.end_edge = partner;
    } catch (const NoConvergenceError&) {
        trace.end_edge.reset();
    }
    return trace;
}

double find_delta_c(const QuadratureSpec& q) {
    auto f = [&](double d) { return critical_residual(0.0, d, q); };
    double lo = 0.1, hi = 0.2;
    double flo = f(lo), fhi = f(hi);
    return detail::brent_root(f, lo, hi, flo, fhi, 1e-15);
}

std::optional<std::pair<double, double>> real_offcritical(double delta,
                                                          const QuadratureSpec& q) {
    if (!(delta > 0.0))
        throw std::domain_error("real_offcritical: delta must be positive");
    double d = std::min(delta, 1.0 / delta);
    auto f = [&](double drx) {
        IntegralResult i =
            integrate_kernel({-0.5, 0, Trig::one, 0.0, Hyp::cosh, drx}, d, q);
        return -(1.0 / (1.0 + 2.0 * drx) + 1.0 / (1.0 - 2.0 * drx)) + i.value;
    };
    double f0 = f(0.0);
    if (std::abs(f0) < 1e-12)
        return std::make_pair(0.5, 0.5); // branch point: the pair merges at 1/2
    if (f0 < 0.0)
        return std::nullopt; // inside the gap: no real off-critical zeros
    double hi = 0.4999;
    double fhi = f(hi);
    if (fhi > 0.0)
        throw NoConvergenceError("real_offcritical: failed to bracket the root");
    double root = detail::brent_root(f, 0.0, hi, f0, fhi, 1e-15);
    if (std::abs(f(root)) > 1e-11)
        throw NoConvergenceError("real_offcritical: residual above acceptance threshold");
    return std::make_pair(0.5 - root, 0.5 + root);
}

} // namespace epstein
