#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cch2/morse.hpp"
#include "cch2/search.hpp"
#include "cch2/types.hpp"

namespace cch2 {

inline constexpr int kSchemaVersion = 1;

// Accepts {"masses": [...], "points": [{"x":..,"y":..,"w":..}, ...]} or
// {"masses": [...], "chart": [{"theta":..,"phi":..}, ...]}.  Points are
// checked against the hyperboloid constraint.
Configuration configuration_from_json(const nlohmann::json& j);
Configuration load_configuration(const std::string& path);

nlohmann::json configuration_to_json(const Configuration& q);
nlohmann::json record_to_json(const CCRecord& rec);
nlohmann::json spectrum_to_json(const SpectrumReport& s);
nlohmann::json audit_to_json(const MorseAudit& a);
nlohmann::json census_report_to_json(const CensusReport& rep);

// One row per class: class_id, is_geodesic, ordering, lambda, U, residual,
// index, nullity, then x,y,w per body.  Numbers use 17 significant digits.
std::string records_to_csv(const std::vector<CCRecord>& classes);

std::string format_double(double v);  // %.17g

}  // namespace cch2
