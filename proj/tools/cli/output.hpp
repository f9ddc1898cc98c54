#ifndef EPSTEIN_CLI_OUTPUT_HPP
#define EPSTEIN_CLI_OUTPUT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "epstein/zeros.hpp"

namespace epstein::cli {

// 17 significant digits: lossless double round-trip in text form.
std::string format_double(double v);

// Zero-record CSV schema shared by scan/trace/real-zeros outputs.
inline constexpr const char* kZeroCsvHeader = "delta,rho_x,rho_y,kind,residual,curve_id,flags";

std::string zero_csv_row(const ZeroRecord& z, long curve_id, const std::string& flags);

// JSON serialization; all fields survive a round trip exactly.
void to_json(nlohmann::json& j, const ZeroRecord& z);
void from_json(const nlohmann::json& j, ZeroRecord& z);
void to_json(nlohmann::json& j, const EdgeZero& e);
void from_json(const nlohmann::json& j, EdgeZero& e);
void to_json(nlohmann::json& j, const CurveTrace& t);
void from_json(const nlohmann::json& j, CurveTrace& t);

ZeroKind zero_kind_from_string(const std::string& s);
EdgeSide edge_side_from_string(const std::string& s);

} // namespace epstein::cli

#endif
