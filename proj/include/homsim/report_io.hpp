#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "homsim/experiments.hpp"

namespace homsim {

/// Locale-independent decimal rendering, 17 significant digits; round-trips
/// any finite double exactly.
std::string format_double(double value);

/// Header is exactly: tau,coincidence,std_error,model,bandwidth_ratio
std::string curves_to_csv(std::span<const CoincidenceCurve> curves);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::ordered_json& j);

/// Serialized report: stable key order, 2-space indent, trailing newline.
std::string report_to_json_string(const ExperimentReport& report);

}  // namespace homsim
