#ifndef EPSTEIN_SPECIAL_FUNCTIONS_HPP
#define EPSTEIN_SPECIAL_FUNCTIONS_HPP

#include <complex>

#include "epstein/errors.hpp"

namespace epstein {

using Complex = std::complex<double>;

// Gamma function for complex argument.  Lanczos approximation in the right
// half plane, reflection formula for re(s) < 1/2.  Relative accuracy is
// about 1e-14 for |s| <= 50.  Throws PoleError at non-positive integers.
Complex complex_gamma(Complex s);

// Riemann zeta for complex argument.  Accelerated alternating series plus
// the functional equation for re(s) < 1/2; an Euler-Maclaurin fallback
// covers the points where the eta-series prefactor 1 - 2^{1-s} degenerates.
// Intended accuracy domain: -30 <= re(s) <= 30, |im(s)| <= 50.
// Throws PoleError at s = 1.
Complex riemann_zeta(Complex s);

// Dirichlet beta (the alternating sum over odd integers).  Entire function;
// accelerated alternating series with its own reflection formula for
// re(s) < 1/2.
Complex dirichlet_beta(Complex s);

} // namespace epstein

#endif
