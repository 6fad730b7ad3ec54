#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "curvelab/glue_re.hpp"
#include "curvelab/glue_um.hpp"

namespace curvelab {

using nlohmann::json;

/// Thrown on malformed configs and specs; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Magnitudes: exact values serialize as "num/den" strings, except exact
// powers of a known prime which use {"p": p, "exponent": e} (value p^e);
// approximate values serialize as numbers.
json magnitude_to_json(const Magnitude& m, std::optional<unsigned long> p = std::nullopt);
Magnitude magnitude_from_json(const json& j);

json gauge_to_json(const Gauge& g);
Gauge gauge_from_json(const json& j);

json calibration_to_json(const Calibration& c);
Calibration calibration_from_json(const json& j);

json probe_to_json(const HypothesisProbe& p);
HypothesisProbe probe_from_json(const json& j);

Curve<ExactScalar> curve_q_from_json(const json& j, const FieldContext& ctx,
                                     const Domain<ExactScalar>& default_domain);
Curve<double> curve_r_from_json(const json& j, const Domain<double>& default_domain);

UltrametricGlueSpec um_spec_from_json(const json& j);
RealGlueSpec re_spec_from_json(const json& j);

/// Full verify-config: seed, sampler settings, tolerances and the two
/// optional glue specs.
struct VerifyConfig {
  uint64_t seed = 42;
  SamplerConfig sampler;
  double slack = 1e-9;
  std::vector<unsigned long> primes{2, 3, 5};
  std::optional<UltrametricGlueSpec> um;
  std::optional<RealGlueSpec> re;
  json raw;
};

VerifyConfig config_from_json(const json& j);
VerifyConfig config_from_file(const std::string& path);

/// Structural validator for the subset of JSON Schema used by the shipped
/// schema files: type, required, properties, items, enum. Returns an error
/// description, or nothing when the instance conforms.
std::optional<std::string> validate_schema(const json& instance, const json& schema,
                                           const std::string& where = "$");

}  // namespace curvelab
