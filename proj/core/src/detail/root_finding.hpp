#ifndef EPSTEIN_DETAIL_ROOT_FINDING_HPP
#define EPSTEIN_DETAIL_ROOT_FINDING_HPP

#include <cmath>
#include <limits>
#include <utility>

#include "epstein/errors.hpp"

namespace epstein::detail {

// Bracket-preserving Brent root finder.  fa, fb must have opposite signs.
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb,
                  double xtol = 1e-14, int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent_root: endpoints do not bracket a root");
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0)
            return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;
        } else {
            double s = fb / fa, p, qq;
            if (a == c) {
                p = 2.0 * m * s;
                qq = 1.0 - s;
            } else {
                double r1 = fa / fc, r2 = fb / fc;
                p = s * (2.0 * m * r1 * (r1 - r2) - (b - a) * (r2 - 1.0));
                qq = (r1 - 1.0) * (r2 - 1.0) * (s - 1.0);
            }
            if (p > 0.0) qq = -qq; else p = -p;
            if (2.0 * p < std::min(3.0 * m * qq - std::abs(tol * qq), std::abs(e * qq))) {
                e = d; d = p / qq;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if (fb == 0.0) return b;
    }
    throw NoConvergenceError("brent_root: no convergence");
}

// Solve the 2x2 system J x = r.
inline std::pair<double, double> solve2x2(double j11, double j12, double j21, double j22,
                                          double r1, double r2) {
    double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det))
        throw NoConvergenceError("solve2x2: singular Jacobian");
    return {(r1 * j22 - r2 * j12) / det, (j11 * r2 - j21 * r1) / det};
}

} // namespace epstein::detail

#endif
