#include "qubopart/report.hpp"

#include <ostream>
#include <stdexcept>

namespace qubopart {

ReportFormat parse_report_format(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw std::invalid_argument("unknown report format: " + name);
}

void emit_report(const RunReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::json) {
        nlohmann::ordered_json full = report.body;
        full["timing"] = report.timing;
        out << full.dump(2) << '\n';
        if (!out) throw std::runtime_error("failed to write report");
        return;
    }
    const auto& results = report.body.at("results");
    const bool numeric = report.body.at("command") == "numpart";
    out << (numeric ? "n,sum_a,sum_b,d,best_energy,seconds"
                    : "k,modularity,best_energy,feasible,seconds")
        << '\n';
    const auto& seconds = report.timing.at("per_result_sec");
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (numeric) {
            out << r.at("n").get<long long>() << ',' << r.at("sum_a").get<long long>() << ','
                << r.at("sum_b").get<long long>() << ',' << r.at("d").get<long long>() << ','
                << r.at("best_energy").dump() << ',' << seconds[i].dump() << '\n';
        } else {
            out << r.at("k").get<int>() << ',' << r.at("modularity").dump() << ','
                << r.at("best_energy").dump() << ',' << (r.at("feasible").get<bool>() ? 1 : 0)
                << ',' << seconds[i].dump() << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed to write report");
}

std::string deterministic_bytes(const RunReport& report) {
    return report.body.dump(2);
}

}  // namespace qubopart
