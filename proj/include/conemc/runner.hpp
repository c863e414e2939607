#pragma once

// Pipeline orchestration behind the CLI: solve/radial/extract/check/export,
// artifact export, and the diagnostics battery rendered as a key:value
// report. Exit codes: 0 all checks pass, 1 config/solver/io failure,
// 2 check failure.

#include <string>
#include <vector>

#include "conemc/config.hpp"

namespace conemc {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

struct DiagnosticsReport {
    std::vector<std::pair<std::string, std::string>> metadata;  // ordered
    std::vector<CheckResult> checks;
    std::string error_code = "none";
    std::string error_detail;

    bool overall() const;
    std::string render() const;
    void meta(const std::string& key, const std::string& value);
};

struct RunResult {
    int exit_code = 0;
    DiagnosticsReport report;
    std::vector<std::string> files_written;
};

RunResult run(const RunConfig& cfg);

}  // namespace conemc
