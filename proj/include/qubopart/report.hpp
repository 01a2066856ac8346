#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace qubopart {

inline constexpr int kReportSchemaVersion = 1;

/// Machine-readable run report. `body` holds everything reproducible from the
/// command line and seed; `timing` isolates wall-clock measurements so that
/// identical runs emit byte-identical deterministic content.
struct RunReport {
    nlohmann::ordered_json body;
    nlohmann::ordered_json timing;
};

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(const std::string& name);

/// JSON: body with the timing block attached under "timing".
/// CSV: one row per entry of body["results"], columns
/// k,modularity,best_energy,feasible,seconds (graph commands) or
/// n,sum_a,sum_b,d,best_energy,seconds (number partitioning).
void emit_report(const RunReport& report, ReportFormat format, std::ostream& out);

/// Serialized deterministic block only, used by byte-determinism checks.
std::string deterministic_bytes(const RunReport& report);

}  // namespace qubopart
