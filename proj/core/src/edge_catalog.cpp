#include "epstein/edge_catalog.hpp"

#include <array>

namespace epstein {

namespace {

constexpr std::array<NamedEdgeSeed, 24> kEdges = {{
    {"1", 0.1417, 0.0},
    {"2a", 0.7984, 9.1748},
    {"2b", 0.9507, 13.5092},
    {"3a", 0.5781, 11.2962},
    {"3b", 0.6888, 12.7134},
    {"4a", 0.7083, 14.3461},
    {"4b", 0.8105, 17.3035},
    {"5a", 0.5778, 15.7904},
    {"5b", 0.6258, 16.7721},
    {"6a", 0.3970, 14.9387},
    {"6b", 0.5000, 16.3629},
    {"7a", 0.6341, 17.8588},
    {"7b", 0.6903, 19.4462},
    {"8a", 0.3566, 16.4816},
    {"8b", 0.3755, 16.8496},
    {"9a", 0.3373, 18.5675},
    {"9b", 0.3743, 19.3629},
    {"10a", 0.5607, 19.8540},
    {"10b", 0.5773, 20.4237},
    {"11a", 0.8968, 19.0009},
    {"12a", 0.7785, 20.0611},
    {"12b", 0.7893, 20.2667},
    {"13a", 0.5784, 20.8178},
    {"14a", 0.3097, 20.1102},
}};

} // namespace

std::span<const NamedEdgeSeed> edge_catalog() {
    return kEdges;
}

std::optional<NamedEdgeSeed> find_edge_seed(std::string_view name) {
    for (const NamedEdgeSeed& e : kEdges)
        if (e.name == name) return e;
    return std::nullopt;
}

} // namespace epstein
