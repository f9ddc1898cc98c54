#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace epstein::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string zero_csv_row(const ZeroRecord& z, long curve_id, const std::string& flags) {
    std::string row;
    row += format_double(z.delta);
    row += ',';
    row += format_double(z.rho_x);
    row += ',';
    row += format_double(z.rho_y);
    row += ',';
    row += to_string(z.kind);
    row += ',';
    row += format_double(z.residual);
    row += ',';
    row += std::to_string(curve_id);
    row += ',';
    row += flags;
    return row;
}

ZeroKind zero_kind_from_string(const std::string& s) {
    if (s == "critical") return ZeroKind::critical;
    if (s == "off_critical") return ZeroKind::off_critical;
    if (s == "real_off_critical") return ZeroKind::real_off_critical;
    throw std::invalid_argument("unknown zero kind: " + s);
}

EdgeSide edge_side_from_string(const std::string& s) {
    if (s == "left") return EdgeSide::left;
    if (s == "right") return EdgeSide::right;
    throw std::invalid_argument("unknown edge side: " + s);
}

void to_json(nlohmann::json& j, const ZeroRecord& z) {
    j = nlohmann::json{{"delta", z.delta},
                       {"rho_x", z.rho_x},
                       {"rho_y", z.rho_y},
                       {"kind", to_string(z.kind)},
                       {"residual", z.residual}};
}

void from_json(const nlohmann::json& j, ZeroRecord& z) {
    z.delta = j.at("delta").get<double>();
    z.rho_x = j.at("rho_x").get<double>();
    z.rho_y = j.at("rho_y").get<double>();
    z.kind = zero_kind_from_string(j.at("kind").get<std::string>());
    z.residual = j.at("residual").get<double>();
}

void to_json(nlohmann::json& j, const EdgeZero& e) {
    j = nlohmann::json{{"delta_star", e.delta_star}, {"rho_y_star", e.rho_y_star},
                       {"side", to_string(e.side)},  {"a", e.a},
                       {"b", e.b},                   {"c", e.c},
                       {"d", e.d}};
}

namespace {
// JSON has no NaN literal; unset coefficients serialize as null
double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}
} // namespace

void from_json(const nlohmann::json& j, EdgeZero& e) {
    e.delta_star = j.at("delta_star").get<double>();
    e.rho_y_star = j.at("rho_y_star").get<double>();
    e.side = edge_side_from_string(j.at("side").get<std::string>());
    e.a = number_or_nan(j.at("a"));
    e.b = number_or_nan(j.at("b"));
    e.c = number_or_nan(j.at("c"));
    e.d = number_or_nan(j.at("d"));
}

void to_json(nlohmann::json& j, const CurveTrace& t) {
    nlohmann::json points = nlohmann::json::array();
    for (const ZeroRecord& p : t.points) {
        nlohmann::json pj;
        to_json(pj, p);
        points.push_back(std::move(pj));
    }
    j = nlohmann::json{{"kind", to_string(t.kind)},
                       {"closed", t.closed},
                       {"points", std::move(points)},
                       {"turning_points", t.turning_points}};
    if (t.start_edge) {
        nlohmann::json ej;
        to_json(ej, *t.start_edge);
        j["start_edge"] = std::move(ej);
    } else {
        j["start_edge"] = nullptr;
    }
    if (t.end_edge) {
        nlohmann::json ej;
        to_json(ej, *t.end_edge);
        j["end_edge"] = std::move(ej);
    } else {
        j["end_edge"] = nullptr;
    }
}

void from_json(const nlohmann::json& j, CurveTrace& t) {
    t.kind = zero_kind_from_string(j.at("kind").get<std::string>());
    t.closed = j.at("closed").get<bool>();
    t.points.clear();
    for (const nlohmann::json& pj : j.at("points")) {
        ZeroRecord z;
        from_json(pj, z);
        t.points.push_back(z);
    }
    t.turning_points = j.at("turning_points").get<std::vector<std::size_t>>();
    if (j.contains("start_edge") && !j.at("start_edge").is_null()) {
        EdgeZero e;
        from_json(j.at("start_edge"), e);
        t.start_edge = e;
    } else {
        t.start_edge.reset();
    }
    if (j.contains("end_edge") && !j.at("end_edge").is_null()) {
        EdgeZero e;
        from_json(j.at("end_edge"), e);
        t.end_edge = e;
    } else {
        t.end_edge.reset();
    }
}

} // namespace epstein::cli
