#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "sokkt/conditions.hpp"
#include "sokkt/config.hpp"
#include "sokkt/model.hpp"
#include "sokkt/oracles.hpp"

namespace sokkt {

// Reports use ordered JSON with schema field "schema": 1; identical inputs
// (including seed) must serialize byte-identically.
using Json = nlohmann::ordered_json;

Json json_vector(const Vector& v);
Json json_config(const Config& cfg);

Json report_header(const std::string& command, const ProblemSpec& p, const Config& cfg);

Json report_condition(const std::string& command, const ProblemSpec& p, const Vector& x,
                      const std::optional<Vector>& direction, const ConditionReport& rep,
                      const Config& cfg);

Json report_grid(const std::string& command, const ProblemSpec& p, const Vector& x,
                 const GridResult& res, const GridOracleConfig& gcfg, const Config& cfg);

// Exit code contract: 0 pass-like, 1 fail-like, 2 inconclusive.
int exit_code_for(Verdict v);

std::string render_text(const Json& report);

}  // namespace sokkt
