#pragma once

#include <string>
#include <vector>

#include "curvelab/json_io.hpp"
#include "curvelab/report.hpp"

namespace curvelab {

std::vector<std::string> suite_names();

/// Runs the selected invariant suite ("all" or one of suite_names()) against
/// the config and returns the assembled report. Deterministic for a fixed
/// config and seed, apart from timing fields.
VerificationReport run_suites(const std::string& selector, const VerifyConfig& cfg);

}  // namespace curvelab
