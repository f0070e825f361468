#pragma once

// Structured verification reports: one record per checked claim, JSON-lines
// serialization, and a summary table.  Report JSON is deterministic
// (nlohmann::json orders keys); timing defaults to 0 so that report files are
// byte-identical across runs unless timings are explicitly requested.

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqgeom/version.hpp"

namespace sqgeom::report {

using nlohmann::json;

enum class Outcome { Pass, Fail, Computed, Exceeded };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "Pass";
        case Outcome::Fail: return "Fail";
        case Outcome::Computed: return "Computed";
        case Outcome::Exceeded: return "Exceeded";
    }
    return "?";
}

struct VerificationReport {
    std::string claim_id;
    json parameters = json::object();
    Outcome outcome = Outcome::Computed;
    json values = json::object();
    std::int64_t wall_time_ms = 0;
    std::string tool_version = kVersion;

    json to_json() const {
        return json{{"claim_id", claim_id},
                    {"parameters", parameters},
                    {"outcome", to_string(outcome)},
                    {"values", values},
                    {"wall_time_ms", wall_time_ms},
                    {"tool_version", tool_version}};
    }
};

/// Structural validation mirroring schemas/report.schema.json.
inline bool validate_report_json(const json& j, std::string* error = nullptr) {
    auto fail = [&](const std::string& what) {
        if (error) *error = what;
        return false;
    };
    if (!j.is_object()) return fail("report is not an object");
    for (const char* key : {"claim_id", "parameters", "outcome", "values", "wall_time_ms",
                            "tool_version"})
        if (!j.contains(key)) return fail(std::string("missing field: ") + key);
    if (!j["claim_id"].is_string()) return fail("claim_id must be a string");
    if (!j["parameters"].is_object()) return fail("parameters must be an object");
    if (!j["values"].is_object()) return fail("values must be an object");
    if (!j["wall_time_ms"].is_number_integer()) return fail("wall_time_ms must be an integer");
    if (!j["tool_version"].is_string()) return fail("tool_version must be a string");
    std::string o = j["outcome"].get<std::string>();
    if (o != "Pass" && o != "Fail" && o != "Computed" && o != "Exceeded")
        return fail("outcome must be Pass|Fail|Computed|Exceeded");
    return true;
}

inline void write_jsonl(std::ostream& os, const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) os << r.to_json().dump() << '\n';
}

inline void print_summary(std::ostream& os, const std::vector<VerificationReport>& reports) {
    std::size_t width = 8;
    for (const auto& r : reports) width = std::max(width, r.claim_id.size());
    os << std::left << std::setw(static_cast<int>(width) + 2) << "claim" << std::setw(10)
       << "outcome" << "values\n";
    for (const auto& r : reports) {
        json v = r.values;
        std::string vs = v.dump();
        if (vs.size() > 100) vs = vs.substr(0, 97) + "...";
        os << std::left << std::setw(static_cast<int>(width) + 2) << r.claim_id << std::setw(10)
           << to_string(r.outcome) << vs << '\n';
    }
}

} // namespace sqgeom::report
