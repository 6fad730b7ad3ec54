#pragma once

#include <string>
#include <vector>

namespace curvelab {

/// Result of a sampled or exact check: pass/fail plus a bounded list of
/// witness descriptions. Violations are report content, not errors.
struct CheckOutcome {
  bool passed = true;
  long checked = 0;
  long skipped = 0;
  std::vector<std::string> violations;

  void add_violation(std::string witness) {
    passed = false;
    if (violations.size() < 8) violations.push_back(std::move(witness));
  }

  void merge(const CheckOutcome& other) {
    passed = passed && other.passed;
    checked += other.checked;
    skipped += other.skipped;
    for (const auto& v : other.violations)
      if (violations.size() < 8) violations.push_back(v);
  }
};

}  // namespace curvelab
