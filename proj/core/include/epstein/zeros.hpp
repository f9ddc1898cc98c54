#ifndef EPSTEIN_ZEROS_HPP
#define EPSTEIN_ZEROS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace epstein {

enum class ZeroKind { critical, off_critical, real_off_critical };
enum class EdgeSide { left, right };

std::string to_string(ZeroKind k);
std::string to_string(EdgeSide s);

// One located zero of the lattice zeta function.
// kind == critical        => rho_x == 1/2 exactly
// kind == real_off_critical => rho_y == 0 exactly
struct ZeroRecord {
    double delta = 0.0;
    double rho_x = 0.5;
    double rho_y = 0.0;
    ZeroKind kind = ZeroKind::critical;
    double residual = 0.0;
};

// A merge point of two nearest critical zeros: the tangent d(rho_y)/d(delta)
// diverges there.  a,b,c,d are the local expansion coefficients; they are
// NaN until edge_coefficients() has run (solve_edge fills a,b,c).
struct EdgeZero {
    double delta_star = 0.0;
    double rho_y_star = 0.0;
    EdgeSide side = EdgeSide::left;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

// An ordered zero curve plus endpoint metadata.
struct CurveTrace {
    ZeroKind kind = ZeroKind::critical;
    std::vector<ZeroRecord> points;
    std::optional<EdgeZero> start_edge;
    std::optional<EdgeZero> end_edge;
    bool closed = false;
    std::vector<std::size_t> turning_points; // indices into points
};

} // namespace epstein

#endif
