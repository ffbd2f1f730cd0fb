#include "fraclab/cli/report.hpp"

#include <cmath>

namespace fraclab::cli {

namespace {

void check_finite(const Json& node, const std::string& path, std::vector<std::string>& problems) {
    if (node.is_number_float()) {
        if (!std::isfinite(node.get<double>())) {
            problems.push_back(path + ": non-finite number");
        }
    } else if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            check_finite(value, path + "." + key, problems);
        }
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            check_finite(node[i], path + "[" + std::to_string(i) + "]", problems);
        }
    }
}

}  // namespace

Json to_json(const Refinement& r, const std::string& quantity) {
    return Json{{"quantity", quantity},
                {"coarse_resolution", r.coarse_resolution},
                {"fine_resolution", r.fine_resolution},
                {"coarse", r.coarse},
                {"fine", r.fine},
                {"gap", r.gap},
                {"unresolved", r.unresolved}};
}

std::vector<std::string> validate_report(const Json& report) {
    std::vector<std::string> problems;
    if (!report.is_object()) {
        return {"report is not an object"};
    }
    for (const char* key : {"config", "results", "refinement", "flags", "meta"}) {
        if (!report.contains(key)) {
            problems.push_back(std::string("missing top-level key '") + key + "'");
        }
    }
    if (!problems.empty()) {
        return problems;
    }
    if (!report["config"].is_object()) problems.push_back("config: not an object");
    if (!report["results"].is_object()) problems.push_back("results: not an object");
    if (!report["refinement"].is_array()) {
        problems.push_back("refinement: not an array");
    } else {
        for (const auto& entry : report["refinement"]) {
            for (const char* key : {"quantity", "coarse_resolution", "fine_resolution", "coarse", "fine", "gap",
                                    "unresolved"}) {
                if (!entry.contains(key)) {
                    problems.push_back(std::string("refinement entry lacks '") + key + "'");
                }
            }
        }
    }
    const Json& flags = report["flags"];
    if (!flags.is_object()) {
        problems.push_back("flags: not an object");
    } else {
        if (!flags.contains("pass") || !(flags["pass"].is_boolean() || flags["pass"].is_null())) {
            problems.push_back("flags.pass: expected boolean or null");
        }
        for (const char* key : {"violation", "unresolved"}) {
            if (!flags.contains(key) || !flags[key].is_boolean()) {
                problems.push_back(std::string("flags.") + key + ": expected boolean");
            }
        }
        if (!flags.contains("warnings") || !flags["warnings"].is_array()) {
            problems.push_back("flags.warnings: expected array");
        }
        if (flags.contains("error") && !flags["error"].is_null() && !flags["error"].is_object()) {
            problems.push_back("flags.error: expected object or null");
        }
    }
    const Json& meta = report["meta"];
    if (!meta.is_object()) {
        problems.push_back("meta: not an object");
    } else {
        if (!meta.contains("schema_version") || meta["schema_version"] != kSchemaVersion) {
            problems.push_back("meta.schema_version: expected " + std::to_string(kSchemaVersion));
        }
        if (!meta.contains("version") || !meta["version"].is_string()) {
            problems.push_back("meta.version: expected string");
        }
        if (!meta.contains("wall_clock_seconds") || !meta["wall_clock_seconds"].is_number()) {
            problems.push_back("meta.wall_clock_seconds: expected number");
        }
    }
    check_finite(report, "$", problems);
    return problems;
}

std::string dump_report(const Json& report) {
    return report.dump(2) + "\n";
}

}  // namespace fraclab::cli
