#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>

#include "logposit/metrics.hpp"
#include "logposit/reliability.hpp"

namespace logposit {

// Report schema (see README): JSON carries schema_version, kind, a spec echo
// and the metric values; CSV carries one metric,value,units row per entry
// with the spec echoed as config.* rows. JSON round-trips losslessly.
inline constexpr int report_schema_version = 1;

nlohmann::json to_json(const ErrorReport& report);
nlohmann::json to_json(const FaultReport& report);
ErrorReport error_report_from_json(const nlohmann::json& j);
FaultReport fault_report_from_json(const nlohmann::json& j);

std::string to_csv(const ErrorReport& report);
std::string to_csv(const FaultReport& report);

// Full-precision (shortest round-trip) decimal for a double.
std::string format_double(double v);

}  // namespace logposit
