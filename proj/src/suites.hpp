#pragma once

#include <string>
#include <vector>

#include "report.hpp"

namespace ltc {

// Runs the selected suites concurrently; records are sorted before returning.
IdentityReport run_suites(const RunConfig& cfg);
std::vector<CheckRecord> run_suite(const std::string& suite, const RunConfig& cfg);

}  // namespace ltc
