#ifndef EPSTEIN_DETAIL_QFLOAT_HPP
#define EPSTEIN_DETAIL_QFLOAT_HPP

#include <quadmath.h>

namespace epstein::detail {

// Thin arithmetic wrapper over __float128 so the templated quadrature and
// theta-series code can run at quad precision through unqualified (ADL)
// math calls.  Needed because the edge-system Jacobian entries decay to
// ~1e-14 at rho_y ~ 20 and the solve must resolve residuals well below
// extended-double roundoff.
struct qfloat {
    __float128 v = 0;
    qfloat() = default;
    qfloat(double d) : v(d) {}
    qfloat(long double d) : v(d) {}
    qfloat(int i) : v(i) {}
    explicit qfloat(__float128 x) : v(x) {}
    explicit operator double() const { return static_cast<double>(v); }
    explicit operator long double() const { return static_cast<long double>(v); }
};

inline qfloat operator+(qfloat a, qfloat b) { return qfloat(a.v + b.v); }
inline qfloat operator-(qfloat a, qfloat b) { return qfloat(a.v - b.v); }
inline qfloat operator*(qfloat a, qfloat b) { return qfloat(a.v * b.v); }
inline qfloat operator/(qfloat a, qfloat b) { return qfloat(a.v / b.v); }
inline qfloat operator-(qfloat a) { return qfloat(-a.v); }
inline qfloat& operator+=(qfloat& a, qfloat b) { a.v += b.v; return a; }
inline qfloat& operator-=(qfloat& a, qfloat b) { a.v -= b.v; return a; }
inline qfloat& operator*=(qfloat& a, qfloat b) { a.v *= b.v; return a; }
inline qfloat& operator/=(qfloat& a, qfloat b) { a.v /= b.v; return a; }
inline bool operator<(qfloat a, qfloat b) { return a.v < b.v; }
inline bool operator>(qfloat a, qfloat b) { return a.v > b.v; }
inline bool operator<=(qfloat a, qfloat b) { return a.v <= b.v; }
inline bool operator>=(qfloat a, qfloat b) { return a.v >= b.v; }
inline bool operator==(qfloat a, qfloat b) { return a.v == b.v; }
inline bool operator!=(qfloat a, qfloat b) { return a.v != b.v; }

inline qfloat fma_mul_add(qfloat a, qfloat b, qfloat c) { return qfloat(fmaq(a.v, b.v, c.v)); }
inline qfloat exp(qfloat a) { return qfloat(expq(a.v)); }
inline qfloat sqrt(qfloat a) { return qfloat(sqrtq(a.v)); }
inline qfloat cos(qfloat a) { return qfloat(cosq(a.v)); }
inline qfloat sin(qfloat a) { return qfloat(sinq(a.v)); }
inline qfloat cosh(qfloat a) { return qfloat(coshq(a.v)); }
inline qfloat sinh(qfloat a) { return qfloat(sinhq(a.v)); }
inline qfloat abs(qfloat a) { return qfloat(fabsq(a.v)); }
inline qfloat min(qfloat a, qfloat b) { return a.v < b.v ? a : b; }
inline qfloat max(qfloat a, qfloat b) { return a.v > b.v ? a : b; }

} // namespace epstein::detail

#include "theta_series.hpp"

namespace epstein::detail {

template <>
struct RealTraits<qfloat> {
    // avoid the Q-literal macros so strict -std modes compile too
    static qfloat pi() {
        static const __float128 v = strtoflt128("3.14159265358979323846264338327950288", nullptr);
        return qfloat(v);
    }
    static qfloat eps() { return qfloat(ldexpq(1, -112)); }
};

} // namespace epstein::detail

#endif

