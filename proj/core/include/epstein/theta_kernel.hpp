#ifndef EPSTEIN_THETA_KERNEL_HPP
#define EPSTEIN_THETA_KERNEL_HPP

#include "epstein/errors.hpp"

namespace epstein {

// A point of the kernel integrand: integration variable t in (0,1] and
// lattice anisotropy delta > 0 (aspect ratio of the rectangular lattice).
struct KernelPoint {
    double t;
    double delta;
};

// theta3(e^{-pi x}) = sum_j e^{-pi j^2 x}, x > 0.
//
// For x < 1 the series is evaluated through the modular identity
//   theta3(e^{-pi x}) = x^{-1/2} theta3(e^{-pi/x})
// so the nome never exceeds e^{-pi}; at most six series terms are needed.
double theta3(double x);

// vartheta(e^{-pi x}) = sum_j j^2 e^{-pi j^2 x} = q d(theta3)/dq at q = e^{-pi x}.
//
// For x < 1 uses the derivative of the modular identity:
//   vartheta(e^{-pi x}) = (1/(2 pi)) x^{-3/2} theta3(e^{-pi/x})
//                         - x^{-5/2} vartheta(e^{-pi/x}).
double theta3_weighted(double x);

// K(t, delta) = theta3(e^{-pi t delta}) theta3(e^{-pi t / delta}) - 1/t.
//
// Computed cancellation-free: when both nome arguments transform, the
// modular prefactors combine to exactly 1/t and the subtraction is done
// term by term, so no digits are lost as t -> 0.  Symmetric under
// delta <-> 1/delta by construction.
double theta_kernel(double t, double delta);
double theta_kernel(KernelPoint p);

// dK/ddelta at (t, delta):
//   pi t [ theta3(e^{-pi t delta}) delta^{-2} vartheta(e^{-pi t/delta})
//          - theta3(e^{-pi t/delta}) vartheta(e^{-pi t delta}) ].
// The two leading modular contributions cancel algebraically; they are
// removed analytically so the small-t evaluation stays accurate.
double theta_kernel_ddelta(double t, double delta);
double theta_kernel_ddelta(KernelPoint p);

} // namespace epstein

#endif
