#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <qgauge/cli.hpp>
#include <qgauge/config.hpp>
#include <qgauge/report.hpp>

#include "support.hpp"

using namespace qgauge;
namespace fs = std::filesystem;

namespace {

std::string config_path(const char* name) {
  return qgauge::testing::source_dir() + std::string("/configs/") + name;
}

fs::path temp_file(const std::string& stem) {
  static int counter = 0;
  return fs::temp_directory_path() /
         ("qgauge_test_" + stem + "_" + std::to_string(::getpid()) + "_" +
          std::to_string(counter++));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Minimal structural validator for the subset of JSON Schema the report
// schema uses: type, properties, required, additionalProperties, items, enum.
bool validate_schema(const nlohmann::json& schema, const nlohmann::json& value,
                     std::string& why, const std::string& at = "$") {
  const auto type_matches = [&](const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "boolean") return value.is_boolean();
    if (t == "integer") return value.is_number_integer();
    if (t == "number") return value.is_number();
    if (t == "null") return value.is_null();
    return false;
  };
  if (schema.contains("type")) {
    const auto& ty = schema.at("type");
    bool ok = false;
    if (ty.is_string()) ok = type_matches(ty.get<std::string>());
    else
      for (const auto& t : ty) ok = ok || type_matches(t.get<std::string>());
    if (!ok) {
      why = at + ": type mismatch";
      return false;
    }
  }
  if (value.is_null()) return true;  // nullable branch satisfied
  if (schema.contains("enum") && value.is_string()) {
    bool ok = false;
    for (const auto& e : schema.at("enum")) ok = ok || (e == value);
    if (!ok) {
      why = at + ": not in enum";
      return false;
    }
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema.at("required"))
        if (!value.contains(key.get<std::string>())) {
          why = at + ": missing required " + key.get<std::string>();
          return false;
        }
    const nlohmann::json props = schema.value("properties", nlohmann::json::object());
    if (schema.value("additionalProperties", nlohmann::json(true)) ==
        nlohmann::json(false))
      for (const auto& [key, sub] : value.items()) {
        (void)sub;
        if (!props.contains(key)) {
          why = at + ": unexpected property " + key;
          return false;
        }
      }
    for (const auto& [key, sub] : value.items())
      if (props.contains(key) &&
          !validate_schema(props.at(key), sub, why, at + "." + key))
        return false;
  }
  if (value.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < value.size(); ++i)
      if (!validate_schema(schema.at("items"), value[i], why,
                           at + "[" + std::to_string(i) + "]"))
        return false;
  return true;
}

}  // namespace

TEST_CASE("parse_config accepts the documented egg config") {
  const nlohmann::json j = {
      {"name", "egg12"},
      {"dimension", 2},
      {"weights", {1, 2}},
      {"defining_function", "abs2(z1)^2 + abs2(z2) - 1"},
      {"bounding_radius", 2.0}};
  const DomainConfig cfg = parse_config(j);
  CHECK(cfg.name == "egg12");
  CHECK(cfg.seed == 42);  // default
  CHECK(cfg.solver.tol == 1e-12);
  const DomainDefinition dom = realize(cfg);
  CHECK(dom.dim() == 2);
}

TEST_CASE("config validation failures carry the field path") {
  SUBCASE("non-coprime weights") {
    const nlohmann::json j = {{"name", "x"},
                              {"dimension", 2},
                              {"weights", {2, 4}},
                              {"builtin", {{"family", "unit_ball"}}}};
    try {
      parse_config(j);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigError);
      CHECK(std::string(e.what()).find("weights") != std::string::npos);
    }
  }
  SUBCASE("defining_function and builtin are mutually exclusive") {
    const nlohmann::json j = {{"name", "x"},
                              {"dimension", 2},
                              {"weights", {1, 1}},
                              {"defining_function", "abs2(z1) - 1"},
                              {"builtin", {{"family", "unit_ball"}}},
                              {"bounding_radius", 2.0}};
    try {
      parse_config(j);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigError);
      CHECK(std::string(e.what()).find("mutually exclusive") !=
            std::string::npos);
    }
  }
  SUBCASE("expression configs need a bounding radius") {
    const nlohmann::json j = {{"name", "x"},
                              {"dimension", 1},
                              {"weights", {1}},
                              {"defining_function", "abs2(z1) - 1"}};
    try {
      parse_config(j);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("bounding_radius") !=
            std::string::npos);
    }
  }
  SUBCASE("unknown fields are rejected") {
    const nlohmann::json j = {{"name", "x"},
                              {"dimension", 1},
                              {"weights", {1}},
                              {"builtin", {{"family", "unit_ball"}}},
                              {"typo_field", 3}};
    CHECK_THROWS_AS(parse_config(j), Error);
  }
  SUBCASE("bad expression reports its position") {
    const nlohmann::json j = {{"name", "x"},
                              {"dimension", 2},
                              {"weights", {1, 1}},
                              {"defining_function", "z1 + 1"},
                              {"bounding_radius", 2.0}};
    const DomainConfig cfg = parse_config(j);
    try {
      realize(cfg);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigError);
      CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
  }
}

TEST_CASE("eval subcommand prints the gauge as JSON") {
  const RunResult r = run_cli(
      {"eval", "--domain", config_path("ball2.json"), "--point",
       "0.3,0,0.4,0", "--grad"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("h").get<double>() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(j.at("r").get<double>() == doctest::Approx(-0.5).epsilon(1e-10));
  REQUIRE(j.contains("gradient"));
  CHECK(j.at("gradient")[0].get<double>() ==
        doctest::Approx(0.6).epsilon(1e-8));
}

TEST_CASE("eval rejects malformed points") {
  const RunResult r = run_cli(
      {"eval", "--domain", config_path("ball2.json"), "--point", "0.3,0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("coordinates") != std::string::npos);
}

TEST_CASE("verify exits 0 on a passing domain and 2 on a failing one") {
  const fs::path good = temp_file("good.json");
  RunResult r = run_cli({"verify", "--domain", config_path("ball2.json"),
                         "--samples", "150", "--out", good.string()});
  CHECK(r.code == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(good));
  CHECK(report.at("overall_pass") == true);
  CHECK(report.at("checks").size() == 6);
  CHECK(report.at("hopf").at("pass") == true);

  const fs::path bad = temp_file("bad.json");
  r = run_cli({"verify", "--domain", config_path("offcenter.json"),
               "--samples", "150", "--out", bad.string()});
  CHECK(r.code == 2);
  const nlohmann::json failing = nlohmann::json::parse(slurp(bad));
  CHECK(failing.at("overall_pass") == false);
  bool qb_failed = false;
  for (const auto& c : failing.at("checks"))
    if (c.at("check_name") == "quasi_balanced") {
      qb_failed = !c.at("pass").get<bool>();
      CHECK(c.contains("witness"));
    }
  CHECK(qb_failed);
  fs::remove(good);
  fs::remove(bad);
}

TEST_CASE("verify honors --suite subsets") {
  const fs::path out = temp_file("suite.json");
  const RunResult r = run_cli(
      {"verify", "--domain", config_path("ball2.json"), "--samples", "60",
       "--suite", "quasi_balanced,homogeneity", "--out", out.string()});
  CHECK(r.code == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("checks").size() == 2);
  CHECK(report.at("hopf").is_null());
  fs::remove(out);

  const RunResult bad =
      run_cli({"verify", "--domain", config_path("ball2.json"), "--suite",
               "nonsense"});
  CHECK(bad.code == 1);
}

TEST_CASE("verify reports are byte-identical across runs and threads") {
  const fs::path a = temp_file("det_a.json");
  const fs::path b = temp_file("det_b.json");
  ::setenv("QGAUGE_THREADS", "1", 1);
  CHECK(run_cli({"verify", "--domain", config_path("egg12.json"), "--samples",
                 "120", "--out", a.string()})
            .code == 0);
  ::setenv("QGAUGE_THREADS", "8", 1);
  CHECK(run_cli({"verify", "--domain", config_path("egg12.json"), "--samples",
                 "120", "--out", b.string()})
            .code == 0);
  ::unsetenv("QGAUGE_THREADS");
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("verify output validates against the shipped schema") {
  const fs::path out = temp_file("schema.json");
  CHECK(run_cli({"verify", "--domain", config_path("egg12.json"), "--samples",
                 "80", "--out", out.string()})
            .code == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(out));
  const nlohmann::json schema = nlohmann::json::parse(slurp(
      qgauge::testing::source_dir() +
      std::string("/schemas/verification_report.schema.json")));
  std::string why;
  const bool ok = validate_schema(schema, report, why);
  CAPTURE(why);
  CHECK(ok);
  fs::remove(out);
}

TEST_CASE("boundary subcommand writes the documented CSV") {
  const fs::path out = temp_file("boundary.csv");
  const RunResult r = run_cli({"boundary", "--domain",
                               config_path("egg12.json"), "--samples", "20",
                               "--out", out.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x1,y1,x2,y2,psi_residual");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    const std::size_t last = line.rfind(',');
    const double residual = std::stod(line.substr(last + 1));
    CHECK(std::abs(residual) <= 1e-9);
  }
  CHECK(rows == 20);
  fs::remove(out);
}

TEST_CASE("sweep subcommand tabulates the radial profile") {
  const fs::path out = temp_file("sweep.csv");
  const RunResult r = run_cli(
      {"sweep", "--domain", config_path("ball2.json"), "--direction",
       "2,0,0,0", "--t-min", "1", "--t-max", "2", "--steps", "3", "--out",
       out.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,g,dg_dt");
  // rows at t = 1, 1.5, 2 for g(t) = 4/t^2 - 1
  std::getline(in, line);
  CHECK(line.rfind("1,3,-8", 0) == 0);
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("2,0,-1", 0) == 0);
  fs::remove(out);
}

TEST_CASE("domains list prints the catalog") {
  const RunResult r = run_cli({"domains", "list"});
  CHECK(r.code == 0);
  for (const char* name : {"ball2", "egg12", "polydisc2", "offcenter2"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("IO and usage failures exit 1") {
  CHECK(run_cli({"verify", "--domain", "/nonexistent/x.json"}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
}
