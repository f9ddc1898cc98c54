#ifndef EPSTEIN_DETAIL_THETA_SERIES_HPP
#define EPSTEIN_DETAIL_THETA_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace epstein::detail {

// Theta series and the subtracted kernel, templated on the scalar type so
// precision-critical solvers can run the same formulas in extended or quad
// precision.  Math calls are unqualified: ADL picks up wrapper overloads.

template <class Real>
struct RealTraits {
    static Real pi() { return std::numbers::pi_v<Real>; }
    static Real eps() { return std::numeric_limits<Real>::epsilon(); }
};

// tail(y) = theta3(e^{-pi y}) - 1 = 2 sum_{j>=1} e^{-pi j^2 y}; intended y >= 1.
template <class Real>
Real theta3_tail(Real y) {
    using std::exp;
    Real q = exp(-RealTraits<Real>::pi() * y);
    if (q == Real(0)) return Real(0);
    const Real cutoff = Real(0.01) * RealTraits<Real>::eps();
    Real q2 = q * q;
    Real qj = q;      // q^{j^2}
    Real qodd = q;    // q^{2j-1}
    Real sum = 0;
    for (int j = 1; j <= 64; ++j) {
        sum += qj;
        if (qj < cutoff * (Real(1) + sum)) break;
        qodd *= q2;   // q^{2j+1}
        qj *= qodd;   // q^{(j+1)^2}
    }
    return Real(2) * sum;
}

// 2 sum_{j>=1} j^2 e^{-pi j^2 y}; intended y >= 1.
template <class Real>
Real theta3_weighted_direct(Real y) {
    using std::exp;
    Real q = exp(-RealTraits<Real>::pi() * y);
    if (q == Real(0)) return Real(0);
    const Real cutoff = Real(0.01) * RealTraits<Real>::eps();
    Real q2 = q * q;
    Real qj = q;
    Real qodd = q;
    Real sum = 0;
    for (int j = 1; j <= 64; ++j) {
        sum += Real(j) * Real(j) * qj;
        if (qj * Real(j) * Real(j) < cutoff * (Real(1) + sum)) break;
        qodd *= q2;
        qj *= qodd;
    }
    return Real(2) * sum;
}

template <class Real>
Real theta3_any(Real x) {
    using std::sqrt;
    if (x >= Real(1))
        return Real(1) + theta3_tail(x);
    return (Real(1) + theta3_tail(Real(1) / x)) / sqrt(x);
}

template <class Real>
Real theta3_weighted_any(Real x) {
    using std::sqrt;
    if (x >= Real(1))
        return theta3_weighted_direct(x);
    Real ix = Real(1) / x;
    Real rx = sqrt(x);
    // x^{-3/2} and x^{-5/2} without pow
    Real x32 = Real(1) / (x * rx);
    Real x52 = x32 / x;
    return Real(0.5) / RealTraits<Real>::pi() * x32 * (Real(1) + theta3_tail(ix)) -
           x52 * theta3_weighted_direct(ix);
}

// K(t, delta) = theta3(e^{-pi t delta}) theta3(e^{-pi t/delta}) - 1/t,
// arranged so the 1/t subtraction never cancels.
template <class Real>
Real kernel_value(Real t, Real delta) {
    using std::min;
    using std::max;
    using std::sqrt;
    Real dlo = min(delta, Real(1) / delta);
    Real dhi = max(delta, Real(1) / delta);
    Real xlo = t * dlo;
    Real xhi = t * dhi;
    if (xhi < Real(1)) {
        // both factors transform; xlo*xhi == t^2 so the 1/t cancels exactly
        Real a = theta3_tail(Real(1) / xlo);
        Real b = theta3_tail(Real(1) / xhi);
        return (a + b + a * b) / t;
    }
    if (xlo < Real(1)) {
        Real flo = (Real(1) + theta3_tail(Real(1) / xlo)) / sqrt(xlo);
        Real fhi = Real(1) + theta3_tail(xhi);
        return flo * fhi - Real(1) / t;
    }
    return (Real(1) + theta3_tail(xlo)) * (Real(1) + theta3_tail(xhi)) - Real(1) / t;
}

// dK/ddelta; the O(t^{-2}) modular pieces cancel algebraically and are
// removed before evaluation.
template <class Real>
Real kernel_ddelta_value(Real t, Real delta) {
    Real x1 = t * delta;
    Real x2 = t / delta;
    if (x1 < Real(1) && x2 < Real(1)) {
        Real a1 = theta3_tail(Real(1) / x1);
        Real a2 = theta3_tail(Real(1) / x2);
        Real w1 = theta3_weighted_direct(Real(1) / x1);
        Real w2 = theta3_weighted_direct(Real(1) / x2);
        return RealTraits<Real>::pi() / (t * t) *
               ((Real(1) + a2) * w1 / (delta * delta) - (Real(1) + a1) * w2);
    }
    Real th1 = theta3_any(x1);
    Real th2 = theta3_any(x2);
    Real v1 = theta3_weighted_any(x1);
    Real v2 = theta3_weighted_any(x2);
    return RealTraits<Real>::pi() * t * (th1 * v2 / (delta * delta) - th2 * v1);
}

} // namespace epstein::detail

#endif
