#ifndef HDB_REPORT_HPP
#define HDB_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "hdb/context.hpp"
#include "hdb/derived.hpp"

namespace hdb {

// The CLI's uniform result document. JSON output carries exactly the five
// schema fields; notes and counts appear only in the text rendering.
struct ReportDoc {
    struct Case {
        std::vector<std::string> inputs;
        std::string residual;
    };

    std::string command;
    uint64_t seed = 0;
    bool pass = true;
    std::vector<Case> cases;  // failure witnesses; empty on pass
    int64_t elapsed_ms = 0;   // 0 unless timing was requested (determinism)

    std::string note;    // text rendering only
    size_t trials = 0;   // text rendering only
};

ReportDoc report_from_jacobi(std::string command, const JacobiReport& r);
ReportDoc report_from_projector(std::string command, uint64_t seed, const ProjectorReport& r);

nlohmann::json report_to_json(const ReportDoc& r);
std::string report_to_text(const ReportDoc& r);

}  // namespace hdb

#endif
