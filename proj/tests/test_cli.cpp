#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "curvelab/json_io.hpp"

using namespace curvelab;

namespace {

const std::string kBin = CURVELAB_BIN;
const std::string kRoot = CURVELAB_ROOT;

int run(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("ms");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

std::string tmp_path(const std::string& name) { return "/tmp/curvelab_test_" + name; }

}  // namespace

TEST_CASE("verify exits 0 on the default config and the report is schema-valid") {
  std::string report = tmp_path("default_report.json");
  int code = run(kBin + " verify --config " + kRoot + "/configs/default.json --suite all --out " +
                 report + " 2>/dev/null");
  CHECK(code == 0);

  json rep = load_json(report);
  json schema = load_json(kRoot + "/schemas/report.schema.json");
  auto err = validate_schema(rep, schema);
  if (err) FAIL_CHECK(*err);
  CHECK(rep.at("fail_count").get<int>() == 0);
}

TEST_CASE("verify exits 1 on the adversarial config with fail witnesses") {
  std::string report = tmp_path("adversarial_report.json");
  int code = run(kBin + " verify --config " + kRoot +
                 "/configs/adversarial.json --suite glue_um --out " + report + " 2>/dev/null");
  CHECK(code == 1);
  json rep = load_json(report);
  CHECK(rep.at("fail_count").get<int>() >= 1);
  json schema = load_json(kRoot + "/schemas/report.schema.json");
  CHECK_FALSE(validate_schema(rep, schema).has_value());
}

TEST_CASE("verify exits 2 on malformed configs") {
  std::string bad = tmp_path("bad.json");
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK(run(kBin + " verify --config " + bad + " 2>/dev/null") == 2);
  CHECK(run(kBin + " verify --config /nonexistent/x.json 2>/dev/null") == 2);

  // structurally broken spec: |rho| >= 1
  std::string badspec = tmp_path("badspec.json");
  {
    std::ofstream out(badspec);
    out << R"({"glue_um": {"p": 3, "rho": "1", "pieces": [],
               "calibration": {"base": {"rule": "abs"}, "factor_law": "constant"},
               "probe": {}}})";
  }
  CHECK(run(kBin + " verify --config " + badspec + " 2>/dev/null") == 2);

  // unknown suite also counts as a config error
  CHECK(run(kBin + " verify --config " + kRoot +
            "/configs/default.json --suite nonsense 2>/dev/null") == 2);
}

TEST_CASE("reports are seed-deterministic modulo timing") {
  std::string a = tmp_path("rep_a.json");
  std::string b = tmp_path("rep_b.json");
  std::string base = kBin + " verify --config " + kRoot +
                     "/configs/default.json --suite gauges --seed 7 --out ";
  CHECK(run(base + a + " 2>/dev/null") == 0);
  CHECK(run(base + b + " 2>/dev/null") == 0);
  json ja = load_json(a);
  json jb = load_json(b);
  strip_timing(ja);
  strip_timing(jb);
  CHECK(ja.dump() == jb.dump());

  // a different seed changes the sampled witnesses but not validity
  std::string c = tmp_path("rep_c.json");
  CHECK(run(kBin + " verify --config " + kRoot +
            "/configs/default.json --suite gauges --seed 8 --out " + c + " 2>/dev/null") == 0);
}

TEST_CASE("CURVELAB_SEED env var is the fallback seed") {
  std::string a = tmp_path("rep_env_a.json");
  std::string b = tmp_path("rep_env_b.json");
  std::string cmd = "CURVELAB_SEED=99 " + kBin + " verify --config " + kRoot +
                    "/configs/default.json --suite scalar --out ";
  CHECK(run(cmd + a + " 2>/dev/null") == 0);
  CHECK(run(cmd + b + " 2>/dev/null") == 0);
  json ja = load_json(a);
  CHECK(ja.at("seed").get<uint64_t>() == 99);
  json jb = load_json(b);
  strip_timing(ja);
  strip_timing(jb);
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("glue um CSV output") {
  std::string pts = tmp_path("um_points.txt");
  {
    std::ofstream out(pts);
    out << "4\n2\n0\n1\n";
  }
  std::string csv = tmp_path("um_out.csv");
  int code = run(kBin + " glue --mode um --config " + kRoot +
                 "/configs/default.json --points " + pts + " --out " + csv + " 2>/dev/null");
  CHECK(code == 0);
  std::ifstream in(csv);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "x,gamma(x)\n4,9\n2,0\n0,0\n1,0\n");
}

TEST_CASE("glue re CSV output hits the first center") {
  std::string pts = tmp_path("re_points.txt");
  {
    std::ofstream out(pts);
    out << "5/2\n1000\n";
  }
  std::string csv = tmp_path("re_out.csv");
  std::string table = tmp_path("re_table.csv");
  int code = run(kBin + " glue --mode re --config " + kRoot +
                 "/configs/default.json --points " + pts + " --out " + csv + " --table " +
                 table + " 2>/dev/null");
  CHECK(code == 0);
  std::ifstream in(csv);
  std::string header, line1, line2;
  std::getline(in, header);
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(header == "x,gamma(x)");
  CHECK(line1 == "5/2,0");  // gamma_1(0) = 0
  CHECK(line2 == "1000,0");

  std::ifstream tin(table);
  std::string theader, trow;
  std::getline(tin, theader);
  std::getline(tin, trow);
  CHECK(theader.rfind("n,t_n,s_n,r_n,", 0) == 0);
  CHECK(trow.rfind("1,5/2,1/2,5/2,", 0) == 0);

  // --table is a re-mode feature
  CHECK(run(kBin + " glue --mode um --config " + kRoot + "/configs/default.json --points " +
            pts + " --table " + table + " 2>/dev/null") == 2);
}

TEST_CASE("glue exits 2 on spec violations") {
  std::string pts = tmp_path("pts.txt");
  {
    std::ofstream out(pts);
    out << "1\n";
  }
  std::string bad = tmp_path("bad_rho.json");
  {
    std::ofstream out(bad);
    out << R"({"p": 3, "rho": "1/3", "pieces": [{"poly": ["0", "3"]}],
               "calibration": {"base": {"rule": "abs"}, "factor_law": "constant"},
               "probe": {}})";
  }
  CHECK(run(kBin + " glue --mode um --config " + bad + " --points " + pts + " 2>/dev/null") ==
        2);
  CHECK(run(kBin + " glue --mode xx --config " + bad + " --points " + pts + " 2>/dev/null") ==
        2);
}

TEST_CASE("shipped configs conform to the config schema") {
  json schema = load_json(kRoot + "/schemas/config.schema.json");
  CHECK_FALSE(validate_schema(load_json(kRoot + "/configs/default.json"), schema).has_value());
  CHECK_FALSE(
      validate_schema(load_json(kRoot + "/configs/adversarial.json"), schema).has_value());

  json broken = load_json(kRoot + "/configs/default.json");
  broken["glue_um"].erase("rho");
  auto err = validate_schema(broken, schema);
  REQUIRE(err.has_value());
  CHECK(err->find("rho") != std::string::npos);

  json wrong_type = load_json(kRoot + "/configs/default.json");
  wrong_type["seed"] = "not a number";
  CHECK(validate_schema(wrong_type, schema).has_value());
}

TEST_CASE("leibniz subcommand") {
  std::string out = tmp_path("leibniz.json");
  CHECK(run(kBin + " leibniz --order 2 --json > " + out + " 2>/dev/null") == 0);
  json j = load_json(out);
  CHECK(j.at("order") == 2);
  CHECK(j.at("terms").size() == 3);
  CHECK(j.at("coefficient_sum").get<long>() <= 4);

  CHECK(run(kBin + " leibniz --order 8 --json > " + out + " 2>/dev/null") == 0);
  j = load_json(out);
  CHECK(j.at("coefficient_sum").get<long>() <= 256);
  CHECK(j.at("C_sum").get<long>() <= 256);

  CHECK(run(kBin + " leibniz --order 0 2>/dev/null") == 2);
}

TEST_CASE("diffquot subcommand") {
  std::string out = tmp_path("dq.txt");
  // cube at (0,1,2), order 2: expect 3
  CHECK(run(kBin + " diffquot --poly 0,0,0,1 --order 2 --points 0,1,2 > " + out +
            " 2>/dev/null") == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "(3)");

  // coincident points are fine for polynomials (the symbolic path)
  CHECK(run(kBin + " diffquot --poly 0,1 --order 1 --points 0,0 > " + out + " 2>/dev/null") ==
        0);
  std::ifstream in1(out);
  std::getline(in1, line);
  CHECK(line == "(1)");

  CHECK(run(kBin + " diffquot --poly 0,1 --order 1 --points 0,1,2 2>/dev/null") == 2);
  CHECK(run(kBin + " diffquot --poly 12 --order 0 --points 1 --context p:2 > " + out +
            " 2>/dev/null") == 0);
  std::ifstream in2(out);
  std::getline(in2, line);
  CHECK(line == "(12)");
}
