#pragma once

#include <string>

#include <json.hpp>

#include "entvar/symexpr.hpp"

namespace entvar {

inline constexpr const char* kToolVersion = "1.0.0";

/// A CLI run result: top-level fields {config, results, summary, version}.
struct Report {
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::array();
    nlohmann::json summary = nlohmann::json::object();

    nlohmann::json document() const;
};

/// {"string": ..., "numeric": ..., "terms": [{gamma_deg, pi2_deg, coefficient}]}.
nlohmann::json exact_to_json(const SymExpr& e);

/// Compact JSON with keys sorted and every float printed with 17 significant digits.
std::string emit_json(const nlohmann::json& value);

/// One CSV row per result; columns are the flattened config fields followed by
/// the flattened result fields (nested keys joined with '.').
std::string emit_csv(const Report& report);

std::string format_double(double x);

}  // namespace entvar
