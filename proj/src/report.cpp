#include "curvelab/report.hpp"

#include <algorithm>

namespace curvelab {

CheckRecord CheckRecord::from_outcome(std::string id, std::string anchor,
                                      const CheckOutcome& out, double ms) {
  CheckRecord rec;
  rec.id = std::move(id);
  rec.anchor = std::move(anchor);
  rec.verdict = out.passed ? Verdict::pass : Verdict::fail;
  rec.witness = nlohmann::json::object();
  rec.witness["checked"] = out.checked;
  if (out.skipped) rec.witness["skipped"] = out.skipped;
  if (!out.violations.empty()) rec.witness["violations"] = out.violations;
  rec.ms = ms;
  return rec;
}

int VerificationReport::fail_count() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.verdict == Verdict::fail) ++n;
  return n;
}

int VerificationReport::inconclusive_count() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.verdict == Verdict::inconclusive) ++n;
  return n;
}

nlohmann::json VerificationReport::to_json() const {
  std::vector<CheckRecord> sorted = checks;
  std::sort(sorted.begin(), sorted.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : sorted) {
    nlohmann::json rec;
    rec["id"] = c.id;
    rec["anchor"] = c.anchor;
    rec["verdict"] = verdict_name(c.verdict);
    rec["witness"] = c.witness;
    rec["ms"] = c.ms;
    arr.push_back(std::move(rec));
  }
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["environment"] = environment;
  j["checks"] = std::move(arr);
  j["fail_count"] = fail_count();
  j["inconclusive_count"] = inconclusive_count();
  return j;
}

}  // namespace curvelab
