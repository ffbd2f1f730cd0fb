#pragma once

#include "fraclab/inequalities.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fraclab::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json to_json(const Refinement& r, const std::string& quantity);

/// Structural check against the shipped schema (schemas/report.schema.json):
/// required keys and types, and every number finite. Returns the problems
/// found, empty when valid.
std::vector<std::string> validate_report(const Json& report);

/// Serialization used for every report file: two-space indent, trailing newline.
std::string dump_report(const Json& report);

}  // namespace fraclab::cli
