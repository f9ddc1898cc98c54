#ifndef EPSTEIN_OFFCRITICAL_ZEROS_HPP
#define EPSTEIN_OFFCRITICAL_ZEROS_HPP

#include <optional>
#include <utility>

#include "epstein/critical_zeros.hpp"
#include "epstein/zeros.hpp"

namespace epstein {

// First off-critical point predicted by the local expansion at an edge.
struct OffCriticalSeed {
    EdgeZero edge;
    double d_delta = 0.0; // signed offset from delta_star
    double drho_x = 0.0;
    double rho_y = 0.0;
};

enum class SeedBranch { plus, minus };

struct PolishResult {
    enum class Status { ok, at_critical } status = Status::ok;
    ZeroRecord record;
    int iterations = 0;
};

// Step schedule for off-critical continuation: a handful of tiny fixed steps
// leaving the edge, then adaptive steps within [min_adaptive, max_adaptive].
struct OffStepControl {
    double initial_step = 1e-4;
    int fixed_steps = 5;
    double min_adaptive = 1e-3;
    double max_adaptive = 1e-2;
    int max_steps = 4000;
    double runaway_lo = 1e-3;
    double runaway_hi = 1.0;
    double accept_f2 = 1e-22;  // accepted value of f1^2 + f2^2
};

// Leading-order seed for the off-critical curve leaving edge e:
//   drho_x = +-sqrt((a/c)(delta - delta*)),
//   drho_y = (b - a d/c)/(2c) (delta - delta*).
// d_delta must point to the off-critical side (away from the critical
// branches); otherwise WrongSideError.
OffCriticalSeed seed_offcritical(const EdgeZero& e, double d_delta, SeedBranch branch);

// Damped 2D Newton on (f1, f2) at fixed delta, accepted at
// f1^2 + f2^2 <= accept_f2.  |drho_x| < 1e-12 at convergence reports
// Status::at_critical (the curve has reached a partner edge).  Note that
// off-critical curves are not confined to the critical strip: |drho_x|
// exceeds 1 along some of them.
PolishResult polish_offcritical(double drho_x, double rho_y, double delta,
                                const QuadratureSpec& q = {},
                                double accept_f2 = 1e-22);

// March the off-critical curve from edge e until it lands back on the
// critical line; the terminal point is identified as an edge via solve_edge
// and stored in end_edge.  Stores the drho_x >= 0 branch; the conjugate
// curve follows by symmetry.  Throws RunawayError if delta leaves
// (runaway_lo, runaway_hi) with no termination.
CurveTrace trace_offcritical(const EdgeZero& e, const QuadratureSpec& q = {},
                             const OffStepControl& ctrl = {});

// The anisotropy below which a conjugate pair of real zeros exists: the
// root of  -2 + integral t^{-1/2} K(t, delta) dt  in (0.1, 0.2).
double find_delta_c(const QuadratureSpec& q = {});

// The conjugate pair of real zeros (rho_x, 1 - rho_x) at rho_y = 0, present
// for delta < delta_c (deltas > 1 are first mapped to 1/delta).  Returns
// nullopt inside the gap (delta_c, 1/delta_c): a documented empty result,
// not an error.
std::optional<std::pair<double, double>> real_offcritical(double delta,
                                                          const QuadratureSpec& q = {});

} // namespace epstein

#endif
