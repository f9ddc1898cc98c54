#ifndef EPSTEIN_CRITICAL_ZEROS_HPP
#define EPSTEIN_CRITICAL_ZEROS_HPP

#include <utility>
#include <vector>

#include "epstein/epstein_zeta.hpp"
#include "epstein/zeros.hpp"

namespace epstein {

// Interval of the rho_y grid across which the critical residual changes sign.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

// Controls for pseudo-arclength continuation of critical curves.
struct StepControl {
    double initial_step = 1e-3;
    double min_step = 1e-9;
    double max_step = 2e-2;
    int max_steps = 20000;
    int direction = +1;        // initial orientation in delta
    double rho_y_min = -1.0;
    double rho_y_max = 25.0;
    double zero_tol = 1e-11;   // |residual| accepted along the curve
};

// Grid scan for sign changes of critical_residual in rho_y at fixed delta.
// Misses only roots closer together than grid_step.
std::vector<Bracket> scan_critical(double delta, double rho_y_min, double rho_y_max,
                                   double grid_step, const QuadratureSpec& q = {});

// Polish one bracketed root to |residual| <= 1e-11 (bracket-preserving
// bisection/secant hybrid).
ZeroRecord refine_critical(const Bracket& bracket, double delta,
                           const QuadratureSpec& q = {});

// Pseudo-arclength continuation of the curve rho_y(delta) through a refined
// seed.  Turning points (sign change of d delta along the curve) are crossed
// and flagged; the trace stops at the delta bounds, the rho_y bounds, or on
// returning to its start (closed = true).
CurveTrace trace_critical_curve(const ZeroRecord& seed, double delta_lo, double delta_hi,
                                const StepControl& ctrl = {}, const QuadratureSpec& q = {});

// Newton solve of the edge conditions (critical residual and its rho_y
// derivative both zero).  Seeds with rho_y == 0 use the reduced on-axis
// equation.  Fills delta_star, rho_y_star, side and the a, b, c coefficients.
EdgeZero solve_edge(double seed_delta, double seed_rho_y, const QuadratureSpec& q = {});

// The four expansion coefficients of the curve around an edge; stores them
// back into e and returns (a, b, c, d).
std::array<double, 4> edge_coefficients(EdgeZero& e, const QuadratureSpec& q = {});

// Two-sided square-root expansion of a critical curve around the edge:
//   rho_y* +- sqrt(-(a/c)(delta - delta*)) + (b - a d/c)/(2c) (delta - delta*).
// Throws WrongSideError when delta is on the side with no real branches.
std::pair<double, double> edge_expansion(const EdgeZero& e, double delta);

} // namespace epstein

#endif
