#include "hdb/report.hpp"

#include <sstream>

namespace hdb {

ReportDoc report_from_jacobi(std::string command, const JacobiReport& r) {
    ReportDoc out;
    out.command = std::move(command);
    out.seed = r.seed;
    out.pass = r.ok();
    for (const auto& f : r.failures) out.cases.push_back({f.inputs, f.residual});
    out.note = r.note;
    out.trials = r.trials;
    return out;
}

ReportDoc report_from_projector(std::string command, uint64_t seed, const ProjectorReport& r) {
    ReportDoc out;
    out.command = std::move(command);
    out.seed = seed;
    out.pass = r.ok();
    for (const auto& v : r.violations)
        out.cases.push_back({{v.law, v.witness_a, v.witness_b}, "law violated: " + v.law});
    out.trials = r.trials;
    return out;
}

nlohmann::json report_to_json(const ReportDoc& r) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases)
        cases.push_back({{"inputs", c.inputs}, {"residual", c.residual}});
    return nlohmann::json{{"command", r.command},
                          {"seed", r.seed},
                          {"verdict", r.pass ? "pass" : "fail"},
                          {"cases", std::move(cases)},
                          {"elapsed_ms", r.elapsed_ms}};
}

std::string report_to_text(const ReportDoc& r) {
    std::ostringstream out;
    out << r.command << ": " << (r.pass ? "pass" : "FAIL");
    if (r.trials) out << " (" << r.trials << " trials, seed " << r.seed << ")";
    out << "\n";
    if (!r.note.empty()) out << "note: " << r.note << "\n";
    for (const auto& c : r.cases) {
        out << "witness:";
        for (const auto& in : c.inputs) out << " " << in;
        out << "\n  residual: " << c.residual << "\n";
    }
    if (r.elapsed_ms) out << "elapsed: " << r.elapsed_ms << " ms\n";
    return out.str();
}

}  // namespace hdb
