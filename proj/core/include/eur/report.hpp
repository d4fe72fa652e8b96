#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eur/relations.hpp"

namespace eur {

/// Plot-ready field data; emitted as CSV ("x,value" or "x,p,value").
struct FieldExport {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string path;  // filled in by emit_report
};

struct ScenarioSpec {
    std::string name;
    std::map<std::string, double> params;  // scenario-specific overrides
    std::size_t grid_n = 0;                // 0 = scenario default
    double hbar = 1.0;
    std::uint64_t seed = 7;
    double tol_scale = 1.0;
};

struct Report {
    std::string scenario;
    std::map<std::string, double> params;  // resolved parameters
    std::vector<RelationCheck> checks;
    std::vector<FieldExport> fields;
    double runtime_seconds = 0.0;  // informational; never serialized

    bool all_passed() const;  // no check with status == fail
    std::size_t count(CheckStatus s) const;
};

/// Deterministic JSON, schema
/// {scenario, params, checks:[{name, paper_ref, lhs, rhs, ratio, gap, status}],
///  fields:[{name, path}]}; numbers carry 17 significant digits so emitted
/// values round-trip exactly. Non-finite values serialize as null.
std::string report_to_json(const Report& r);
Report parse_report_json(const std::string& text);

/// CSV with one row per check, same columns as the JSON check records.
std::string report_to_csv(const Report& r);

/// Write the report at `path` (format "json" or "csv") plus one CSV per
/// field export next to it; returns all written paths.
std::vector<std::string> emit_report(Report& r, const std::string& format,
                                     const std::string& path);

}  // namespace eur
