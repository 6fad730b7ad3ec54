#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "curvelab/leibniz.hpp"
#include "curvelab/suites.hpp"

using namespace curvelab;

namespace {

uint64_t pick_seed(const CLI::Option* seed_opt, uint64_t flag_value, uint64_t config_value) {
  if (seed_opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("CURVELAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ConfigError("CURVELAB_SEED is not a number");
    }
  }
  return config_value;
}

std::string csv_cell(const VectorT<ExactScalar>& v) {
  std::string s;
  for (int i = 0; i < v.dim(); ++i) {
    if (i) s += ";";
    s += v.coords[static_cast<size_t>(i)].to_string();
  }
  return s;
}

std::string csv_cell(const VectorT<double>& v) {
  std::string s;
  for (int i = 0; i < v.dim(); ++i) {
    if (i) s += ";";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v.coords[static_cast<size_t>(i)]);
    s += buf;
  }
  return s;
}

int cmd_verify(const std::string& config_path, const std::string& suite,
               const CLI::Option* seed_opt, uint64_t seed_flag, const std::string& out_path) {
  VerifyConfig cfg = config_from_file(config_path);
  cfg.seed = pick_seed(seed_opt, seed_flag, cfg.seed);
  cfg.sampler.seed = cfg.seed;

  VerificationReport rep = run_suites(suite, cfg);
  nlohmann::json j = rep.to_json();

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write report to " + out_path);
    out << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }

  int fails = rep.fail_count();
  std::cerr << "suite " << suite << ": " << rep.checks.size() << " checks, " << fails
            << " fail, " << rep.inconclusive_count() << " inconclusive\n";
  return fails == 0 ? 0 : 1;
}

int cmd_glue(const std::string& mode, const std::string& config_path,
             const std::string& points_path, const std::string& out_path,
             const std::string& table_path) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot open config file: " + config_path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }

  std::ifstream pts(points_path);
  if (!pts) throw ConfigError("cannot open points file: " + points_path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(pts, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }

  std::ostringstream csv;
  csv << "x,gamma(x)\n";
  if (mode == "um") {
    if (!table_path.empty()) throw ConfigError("--table applies to the re mode only");
    const json& spec_json = j.contains("glue_um") ? j.at("glue_um") : j;
    GluedCurveUM glued = GluedCurveUM::build(um_spec_from_json(spec_json));
    for (const auto& line : lines) {
      ExactScalar x(Rational::from_string(line), glued.spec().context);
      csv << line << "," << csv_cell(glued.eval(x)) << "\n";
    }
  } else if (mode == "re") {
    const json& spec_json = j.contains("glue_re") ? j.at("glue_re") : j;
    GluedCurveRE glued = GluedCurveRE::build(re_spec_from_json(spec_json));
    for (const auto& line : lines) {
      double x = Rational::from_string(line).to_double();
      csv << line << "," << csv_cell(glued.eval(x)) << "\n";
    }
    if (!table_path.empty()) {
      SamplerConfig scfg;
      Rng rng(scfg.seed);
      auto rows = piece_table(glued, 2, scfg, rng);
      std::ofstream table(table_path);
      if (!table) throw ConfigError("cannot write table to " + table_path);
      table << piece_table_csv(rows);
    }
  } else {
    throw ConfigError("glue mode must be um or re");
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write CSV to " + out_path);
    out << csv.str();
  } else {
    std::cout << csv.str();
  }
  return 0;
}

int cmd_leibniz(int order, bool as_json) {
  if (order < 1) throw ConfigError("leibniz: order must be >= 1");
  LeibnizFormula f = expand(order);
  ProductConstants cs = constants(f);

  if (as_json) {
    json terms = json::array();
    for (const auto& [ip, c] : f.terms)
      terms.push_back(json{{"i", ip.i}, {"j", ip.j}, {"N", c}});
    json j{{"order", order},
           {"terms", terms},
           {"coefficient_sum", f.coefficient_sum()},
           {"coefficient_bound", 1L << order},
           {"C", cs.C},
           {"C_sum", cs.sum()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "order " << order << ": " << f.to_text() << "\n";
    std::cout << "sum N = " << f.coefficient_sum() << " <= " << (1L << order) << "\n";
    std::cout << "C_k =";
    for (long c : cs.C) std::cout << " " << c;
    std::cout << "  (sum " << cs.sum() << " <= " << (1L << order) << ")\n";
  }
  return 0;
}

int cmd_diffquot(const std::string& poly, const std::string& points, int order,
                 const std::string& context) {
  FieldContext ctx = FieldContext::rationals();
  if (context != "arch") {
    if (context.rfind("p:", 0) != 0) throw ConfigError("context must be arch or p:<prime>");
    ctx = FieldContext::padic(std::stoul(context.substr(2)));
  }
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');)
      if (!tok.empty()) out.push_back(tok);
    return out;
  };
  std::vector<ExactScalar> coeffs;
  for (const auto& t : split(poly)) coeffs.push_back(ExactScalar(Rational::from_string(t), ctx));
  std::vector<ExactScalar> pts;
  for (const auto& t : split(points)) pts.push_back(ExactScalar(Rational::from_string(t), ctx));
  if (coeffs.empty()) throw ConfigError("diffquot: empty coefficient list");
  if (pts.size() != static_cast<size_t>(order) + 1)
    throw ConfigError("diffquot: need order+1 points");

  auto curve = Curve<ExactScalar>::polynomial(Domain<ExactScalar>::whole(), {coeffs});
  std::cout << diff_quot(curve, order, pts).to_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvelab: difference-quotient calculus and curve gluing checks"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites against a config");
  std::string config_path, suite = "all", out_path;
  uint64_t seed_flag = 0;
  verify->add_option("--config", config_path, "config JSON path")->required();
  verify->add_option("--suite", suite, "suite name or 'all'");
  auto* seed_opt = verify->add_option("--seed", seed_flag, "sampler seed");
  verify->add_option("--out", out_path, "report output path");

  // glue
  auto* glue = app.add_subcommand("glue", "evaluate a glued curve at points, CSV output");
  std::string mode, glue_config, points_path, glue_out, table_out;
  glue->add_option("--mode", mode, "um or re")->required();
  glue->add_option("--config", glue_config, "spec JSON path")->required();
  glue->add_option("--points", points_path, "file with one evaluation point per line")
      ->required();
  glue->add_option("--out", glue_out, "CSV output path");
  glue->add_option("--table", table_out, "per-piece CSV table path (re mode)");

  // leibniz
  auto* leib = app.add_subcommand("leibniz", "print the product expansion at an order");
  int order = 1;
  bool as_json = false;
  leib->add_option("--order", order, "expansion order")->required();
  leib->add_flag("--json", as_json, "print the JSON term table");

  // diffquot
  auto* dq = app.add_subcommand("diffquot", "evaluate a polynomial difference quotient");
  std::string poly, points, context = "arch";
  int dq_order = 1;
  dq->add_option("--poly", poly, "comma-separated coefficients, ascending")->required();
  dq->add_option("--order", dq_order, "difference quotient order")->required();
  dq->add_option("--points", points, "comma-separated points")->required();
  dq->add_option("--context", context, "arch or p:<prime>");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(config_path, suite, seed_opt, seed_flag, out_path);
    if (glue->parsed()) return cmd_glue(mode, glue_config, points_path, glue_out, table_out);
    if (leib->parsed()) return cmd_leibniz(order, as_json);
    if (dq->parsed()) return cmd_diffquot(poly, points, dq_order, context);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
