#ifndef EPSTEIN_EDGE_CATALOG_HPP
#define EPSTEIN_EDGE_CATALOG_HPP

#include <optional>
#include <span>
#include <string_view>

namespace epstein {

// Seed coordinates (4 decimals, enough to land in the Newton basin) for the
// named edge zeros in the window 0 < delta <= 1, 0 <= rho_y <= 21.  solve_edge
// refines them to full precision.
struct NamedEdgeSeed {
    std::string_view name;
    double delta;
    double rho_y;
};

std::span<const NamedEdgeSeed> edge_catalog();

std::optional<NamedEdgeSeed> find_edge_seed(std::string_view name);

} // namespace epstein

#endif
