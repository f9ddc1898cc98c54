#include "epstein/zeros.hpp"

namespace epstein {

std::string to_string(ZeroKind k) {
    switch (k) {
        case ZeroKind::critical: return "critical";
        case ZeroKind::off_critical: return "off_critical";
        default: return "real_off_critical";
    }
}

std::string to_string(EdgeSide s) {
    return s == EdgeSide::left ? "left" : "right";
}

} // namespace epstein
