#pragma once

#include <string>
#include <vector>

namespace qballot {

struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages;
};

/// Exhaustive small-instance verification suites. An empty filter runs all
/// of: support, equivalence, marginal, tv, boxes, multicandidate, crt.
std::vector<SuiteResult> run_verify_suites(const std::string& filter = "");

/// Names accepted by the filter above.
std::vector<std::string> verify_suite_names();

} // namespace qballot
