#pragma once

#include "carma/mc_study.hpp"
#include "json.hpp"

namespace carma {

inline constexpr int kReportVersion = 1;

nlohmann::json to_json(const GofEntry& entry);
nlohmann::json to_json(const SuiteReport& suite);
nlohmann::json to_json(const CorrelationReport& report);
nlohmann::json to_json(const CovarianceCheck& check);
nlohmann::json to_json(const ConvergenceRow& row);

/// The full report document. Missing optionals are written as null and
/// non-finite numbers as strings ("inf", "-inf", "nan").
nlohmann::json to_json(const MCReport& report);

}  // namespace carma
