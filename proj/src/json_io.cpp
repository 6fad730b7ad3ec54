#include "curvelab/json_io.hpp"

#include <fstream>

namespace curvelab {

namespace {

Rational rational_from_json(const json& j, const char* what) {
  try {
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
  throw ConfigError(std::string(what) + ": expected a rational string or integer");
}

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string(what) + ": missing key '" + key + "'");
  return j.at(key);
}

}  // namespace

json magnitude_to_json(const Magnitude& m, std::optional<unsigned long> p) {
  if (!m.is_exact()) return m.as_double();
  if (p && !m.is_zero()) {
    const Rational& v = m.exact_value();
    long e = v.valuation(*p);
    if (v == prime_power(*p, e)) return json{{"p", *p}, {"exponent", e}};
  }
  return m.exact_value().to_string();
}

Magnitude magnitude_from_json(const json& j) {
  if (j.is_string()) return Magnitude::exact(Rational::from_string(j.get<std::string>()));
  if (j.is_number_integer()) return Magnitude::exact(Rational(j.get<long>()));
  if (j.is_number()) return Magnitude::approx(j.get<double>());
  if (j.is_object() && j.contains("p") && j.contains("exponent")) {
    unsigned long p = j.at("p").get<unsigned long>();
    long e = j.at("exponent").get<long>();
    return Magnitude::exact(prime_power(p, e));
  }
  throw ConfigError("magnitude: expected string, number or {p, exponent}");
}

json gauge_to_json(const Gauge& g) {
  json j;
  switch (g.rule()) {
    case Gauge::Rule::abs:
      j["rule"] = "abs";
      break;
    case Gauge::Rule::p_norm:
      j["rule"] = "p_norm";
      j["r"] = g.exponent().to_string();
      break;
    case Gauge::Rule::scaled:
      j["rule"] = "scaled";
      j["factor"] = magnitude_to_json(g.factor());
      j["base"] = gauge_to_json(g.base());
      break;
    case Gauge::Rule::sum: {
      j["rule"] = "sum";
      json terms = json::array();
      for (const auto& part : g.parts()) terms.push_back(gauge_to_json(part));
      j["terms"] = std::move(terms);
      break;
    }
    case Gauge::Rule::sup:
      j["rule"] = "sup";
      j["order"] = g.sup_order();
      j["base"] = gauge_to_json(g.base());
      break;
  }
  return j;
}

Gauge gauge_from_json(const json& j) {
  std::string rule = require(j, "rule", "gauge").get<std::string>();
  if (rule == "abs") return Gauge::abs_on_K();
  if (rule == "p_norm") return Gauge::p_norm(rational_from_json(require(j, "r", "gauge"), "gauge.r"));
  if (rule == "scaled")
    return Gauge::scaled(gauge_from_json(require(j, "base", "gauge")),
                         magnitude_from_json(require(j, "factor", "gauge")));
  if (rule == "sum") {
    std::vector<Gauge> parts;
    for (const auto& t : require(j, "terms", "gauge")) parts.push_back(gauge_from_json(t));
    return Gauge::sum(std::move(parts));
  }
  if (rule == "sup")
    return Gauge::sup_on_curves(require(j, "order", "gauge").get<int>(),
                                gauge_from_json(require(j, "base", "gauge")));
  throw ConfigError("gauge: unknown rule '" + rule + "'");
}

json calibration_to_json(const Calibration& c) {
  json j;
  j["kind"] = c.kind() == Calibration::Kind::strong ? "strong" : "ordinary";
  switch (c.law()) {
    case Calibration::Law::constant:
      j["factor_law"] = "constant";
      j["base"] = gauge_to_json(c.base());
      break;
    case Calibration::Law::pow2_over_r:
      j["factor_law"] = "pow2_over_r";
      j["r"] = c.exponent().to_string();
      j["base"] = gauge_to_json(c.base());
      break;
    case Calibration::Law::shifted:
      j["factor_law"] = "shifted";
      j["n0"] = c.shift_n0();
      j["scale"] = magnitude_to_json(c.shift_scale());
      j["base_calibration"] = calibration_to_json(c.shift_base());
      break;
  }
  return j;
}

Calibration calibration_from_json(const json& j) {
  std::string law = require(j, "factor_law", "calibration").get<std::string>();
  std::string kind_name =
      j.contains("kind") ? j.at("kind").get<std::string>() : std::string("ordinary");
  Calibration::Kind kind =
      kind_name == "strong" ? Calibration::Kind::strong : Calibration::Kind::ordinary;
  if (law == "constant")
    return Calibration::constant(gauge_from_json(require(j, "base", "calibration")), kind);
  if (law == "pow2_over_r")
    return Calibration::pow2_over_r(gauge_from_json(require(j, "base", "calibration")),
                                    rational_from_json(require(j, "r", "calibration"), "r"),
                                    kind);
  if (law == "shifted")
    return Calibration::shifted(
        calibration_from_json(require(j, "base_calibration", "calibration")),
        require(j, "n0", "calibration").get<int>(),
        magnitude_from_json(require(j, "scale", "calibration")));
  throw ConfigError("calibration: unknown factor_law '" + law + "'");
}

json probe_to_json(const HypothesisProbe& p) {
  json j;
  json a = json::array();
  for (const auto& v : p.a_values) a.push_back(v.to_string());
  j["a_values"] = std::move(a);
  j["k_max"] = p.k_max;
  j["m_max"] = p.m_max;
  j["l_max"] = p.l_max;
  j["C"] = p.C.to_string();
  return j;
}

HypothesisProbe probe_from_json(const json& j) {
  HypothesisProbe p;
  if (j.contains("a_values"))
    for (const auto& v : j.at("a_values")) {
      Rational a = rational_from_json(v, "probe.a_values");
      if (!(a > Rational(0))) throw ConfigError("probe: a_values must be positive");
      p.a_values.push_back(a);
    }
  if (j.contains("k_max")) p.k_max = j.at("k_max").get<int>();
  if (j.contains("m_max")) p.m_max = j.at("m_max").get<int>();
  if (j.contains("l_max")) p.l_max = j.at("l_max").get<int>();
  if (j.contains("C")) {
    p.C = rational_from_json(j.at("C"), "probe.C");
    if (!(p.C > Rational(0))) throw ConfigError("probe: C must be positive");
  }
  if (p.k_max < 0 || p.m_max < 0 || p.l_max < 0)
    throw ConfigError("probe: grid bounds must be nonnegative");
  return p;
}

namespace {

template <class K, class MakeScalar>
Curve<K> curve_from_json_impl(const json& j, const Domain<K>& default_domain,
                              MakeScalar make_scalar) {
  if (!j.is_object()) throw ConfigError("curve: expected an object");
  if (j.contains("poly")) {
    const json& p = j.at("poly");
    typename Curve<K>::Coeffs coeffs;
    if (!p.is_array()) throw ConfigError("curve: poly must be an array");
    if (!p.empty() && p.front().is_array()) {
      for (const auto& coord : p) {
        std::vector<K> cs;
        for (const auto& c : coord) cs.push_back(make_scalar(rational_from_json(c, "poly")));
        coeffs.push_back(std::move(cs));
      }
    } else {
      std::vector<K> cs;
      for (const auto& c : p) cs.push_back(make_scalar(rational_from_json(c, "poly")));
      coeffs.push_back(std::move(cs));
    }
    return Curve<K>::polynomial(default_domain, std::move(coeffs));
  }
  if (j.contains("translate"))
    return curve_from_json_impl<K>(j.at("translate"), default_domain, make_scalar)
        .translated(make_scalar(rational_from_json(require(j, "t0", "curve"), "t0")));
  if (j.contains("scale"))
    return curve_from_json_impl<K>(j.at("scale"), default_domain, make_scalar)
        .scaled_arg(make_scalar(rational_from_json(require(j, "a", "curve"), "a")));
  if (j.contains("extend_by_zero"))
    return curve_from_json_impl<K>(j.at("extend_by_zero"), default_domain, make_scalar)
        .extended_by_zero();
  if (j.contains("sum")) {
    std::vector<Curve<K>> parts;
    for (const auto& t : j.at("sum"))
      parts.push_back(curve_from_json_impl<K>(t, default_domain, make_scalar));
    return Curve<K>::sum(std::move(parts));
  }
  if (j.contains("product")) {
    const json& p = j.at("product");
    return Curve<K>::product(
        curve_from_json_impl<K>(require(p, "scalar", "product"), default_domain, make_scalar),
        curve_from_json_impl<K>(require(p, "vector", "product"), default_domain, make_scalar));
  }
  if (j.contains("cutoff")) {
    if constexpr (std::is_same_v<K, double>) {
      const json& p = j.at("cutoff");
      return Curve<double>::cutoff(
          rational_from_json(require(p, "a", "cutoff"), "a").to_double(),
          rational_from_json(require(p, "b", "cutoff"), "b").to_double());
    } else {
      throw ConfigError("curve: cutoff rule is real-only");
    }
  }
  throw ConfigError("curve: unknown rule object");
}

}  // namespace

Curve<ExactScalar> curve_q_from_json(const json& j, const FieldContext& ctx,
                                     const Domain<ExactScalar>& default_domain) {
  return curve_from_json_impl<ExactScalar>(
      j, default_domain, [ctx](const Rational& r) { return ExactScalar(r, ctx); });
}

Curve<double> curve_r_from_json(const json& j, const Domain<double>& default_domain) {
  return curve_from_json_impl<double>(j, default_domain,
                                      [](const Rational& r) { return r.to_double(); });
}

UltrametricGlueSpec um_spec_from_json(const json& j) {
  unsigned long p = require(j, "p", "glue_um").get<unsigned long>();
  FieldContext ctx;
  try {
    ctx = FieldContext::padic(p);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("glue_um: ") + e.what());
  }
  ExactScalar rho(rational_from_json(require(j, "rho", "glue_um"), "rho"), ctx);
  Magnitude arho = abs_value(rho);
  if (rho.is_zero() || !(arho < Magnitude::exact(Rational(1))))
    throw ConfigError("glue_um: need 0 < |rho| < 1");

  UltrametricGlueSpec spec;
  spec.context = ctx;
  spec.rho = rho;
  spec.calibration = calibration_from_json(require(j, "calibration", "glue_um"));
  spec.probe = probe_from_json(require(j, "probe", "glue_um"));

  Magnitude radius = arho;
  for (const auto& pj : require(j, "pieces", "glue_um")) {
    auto dom = Domain<ExactScalar>::ball(ExactScalar::zero(ctx), radius);
    spec.pieces.push_back(curve_q_from_json(pj, ctx, dom));
    radius = radius * arho;
  }
  return spec;
}

RealGlueSpec re_spec_from_json(const json& j) {
  RealGlueSpec spec;
  for (const auto& v : require(j, "s", "glue_re"))
    spec.s.push_back(rational_from_json(v, "glue_re.s"));
  if (j.contains("r"))
    for (const auto& v : j.at("r")) spec.r.push_back(rational_from_json(v, "glue_re.r"));
  spec.calibration = calibration_from_json(require(j, "calibration", "glue_re"));
  spec.probe = probe_from_json(require(j, "probe", "glue_re"));

  const json& pieces = require(j, "pieces", "glue_re");
  size_t idx = 0;
  for (const auto& pj : pieces) {
    if (idx >= spec.s.size()) throw ConfigError("glue_re: more pieces than s_n entries");
    long n = static_cast<long>(idx) + 1;
    Rational r = idx < spec.r.size() ? spec.r[idx]
                                     : spec.s[idx] + Rational(2) / Rational(n * n);
    double rd = r.to_double();
    spec.pieces.push_back(curve_r_from_json(pj, Domain<double>::interval(-rd, rd)));
    ++idx;
  }
  try {
    return normalize_spec(std::move(spec));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("glue_re: ") + e.what());
  }
}

VerifyConfig config_from_json(const json& j) {
  VerifyConfig cfg;
  cfg.raw = j;
  if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
  if (j.contains("sampler")) {
    const json& s = j.at("sampler");
    if (s.contains("padic_depth")) cfg.sampler.padic_depth = s.at("padic_depth").get<int>();
    if (s.contains("point_budget")) cfg.sampler.point_budget = s.at("point_budget").get<int>();
    if (s.contains("tuple_budget")) cfg.sampler.tuple_budget = s.at("tuple_budget").get<int>();
    if (s.contains("min_gap")) cfg.sampler.min_gap = s.at("min_gap").get<double>();
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (t.contains("float_rel_slack")) cfg.slack = t.at("float_rel_slack").get<double>();
  }
  if (j.contains("primes")) {
    cfg.primes.clear();
    for (const auto& p : j.at("primes")) cfg.primes.push_back(p.get<unsigned long>());
  }
  if (j.contains("glue_um")) cfg.um = um_spec_from_json(j.at("glue_um"));
  if (j.contains("glue_re")) cfg.re = re_spec_from_json(j.at("glue_re"));
  cfg.sampler.seed = cfg.seed;
  return cfg;
}

VerifyConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  return config_from_json(j);
}

std::optional<std::string> validate_schema(const json& instance, const json& schema,
                                           const std::string& where) {
  if (schema.contains("type")) {
    std::string t = schema.at("type").get<std::string>();
    bool ok = (t == "object" && instance.is_object()) ||
              (t == "array" && instance.is_array()) ||
              (t == "string" && instance.is_string()) ||
              (t == "number" && instance.is_number()) ||
              (t == "integer" && instance.is_number_integer()) ||
              (t == "boolean" && instance.is_boolean());
    if (!ok) return where + ": expected type " + t;
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema.at("enum"))
      if (v == instance) ok = true;
    if (!ok) return where + ": value not in enum";
  }
  if (schema.contains("required"))
    for (const auto& k : schema.at("required"))
      if (!instance.contains(k.get<std::string>()))
        return where + ": missing required key '" + k.get<std::string>() + "'";
  if (schema.contains("properties") && instance.is_object())
    for (const auto& [key, sub] : schema.at("properties").items())
      if (instance.contains(key))
        if (auto err = validate_schema(instance.at(key), sub, where + "." + key)) return err;
  if (schema.contains("items") && instance.is_array()) {
    size_t i = 0;
    for (const auto& el : instance) {
      if (auto err =
              validate_schema(el, schema.at("items"), where + "[" + std::to_string(i) + "]"))
        return err;
      ++i;
    }
  }
  return std::nullopt;
}

}  // namespace curvelab
