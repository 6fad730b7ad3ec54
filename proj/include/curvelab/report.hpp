#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "curvelab/glue_um.hpp"
#include "curvelab/outcome.hpp"

namespace curvelab {

/// One verification check: a stable id, the identity or inequality it
/// checks (or "plumbing" for artifact machinery), verdict and witnesses.
struct CheckRecord {
  std::string id;
  std::string anchor;
  Verdict verdict = Verdict::inconclusive;
  nlohmann::json witness;
  double ms = 0.0;

  static CheckRecord from_outcome(std::string id, std::string anchor, const CheckOutcome& out,
                                  double ms = 0.0);
};

struct VerificationReport {
  std::string suite;
  uint64_t seed = 0;
  nlohmann::json environment;
  std::vector<CheckRecord> checks;

  int fail_count() const;
  int inconclusive_count() const;

  /// Checks sorted by id; deterministic apart from the timing fields.
  nlohmann::json to_json() const;
};

}  // namespace curvelab
