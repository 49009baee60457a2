#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qgtk/config.hpp"
#include "qgtk/report.hpp"

namespace qgtk {

struct CheckInfo {
    std::string name;
    std::string description;
    // first report is the headline table; later ones are supporting tables
    std::function<std::vector<VerificationReport>(const RunConfig&)> run;
    bool uses_j = false;  // responds to the j sweep axis
    bool uses_V = false;  // responds to the V sweep axis
};

const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(const std::string& name);
// "all" expands to every registered check, in registry order
std::vector<std::string> expand_suite(const std::vector<std::string>& names);
// throws ConfigError on unknown checks, bad grid sizes, unsupported sweep axes
void validate_config(const RunConfig& c);

struct CheckResult {
    std::string name;
    std::vector<VerificationReport> parts;
    bool pass = true;
    double seconds = 0.0;  // wall time, not written to any output file
};
// runtime errors inside a check become a failed part; ConfigError propagates
CheckResult run_check(const std::string& name, const RunConfig& c);

struct SuiteOutcome {
    std::vector<CheckResult> results;
    bool pass = true;
    std::vector<std::string> failed;
};
SuiteOutcome run_suite(const RunConfig& c);
// sweep_check at each sweep value; results named "<check>@<axis>=<value>", plus sweep.csv on output
SuiteOutcome run_sweep(const RunConfig& c);

// report.csv (check, part, pass, metric, value), one .csv and .dat per part, summary.txt, sweep.csv for sweeps
void write_outputs(const std::string& dir, const SuiteOutcome& out, const RunConfig& c, bool sweep = false);
std::string summary_text(const SuiteOutcome& out);

}  // namespace qgtk
