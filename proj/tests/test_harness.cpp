#include <doctest.h>

#include "hobody/harness.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace hobody;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hobody");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hobody_test_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string strip_wall_ms(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

const ReportRow& row_for(const SuiteReport& r, const std::string& body) {
  for (const ReportRow& row : r.rows)
    if (row.body == body) return row;
  FAIL("no row for " << body);
  return r.rows.front();
}

}  // namespace

TEST_CASE("config validation and tolerance parsing") {
  SuiteConfig c;
  CHECK_NOTHROW(c.validate());
  c.n = 5;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.n = 4;
  c.m = 3;
  CHECK_NOTHROW(c.validate());
  c.samples = 999;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.samples = 1000;
  c.format = "xml";
  CHECK_THROWS_AS(c.validate(), UsageError);

  const auto [suite, tol] = parse_tolerance("zhang=0.02");
  CHECK(suite == "zhang");
  CHECK(tol == doctest::Approx(0.02));
  CHECK_THROWS_AS(parse_tolerance("zhang"), UsageError);
  CHECK_THROWS_AS(parse_tolerance("zhang=abc"), UsageError);
}

TEST_CASE("precedence: flags over file over env") {
  SuiteConfig c;
  apply_env(c, "17");
  CHECK(c.seed == 17);
  CHECK_THROWS_AS(apply_env(c, "x"), UsageError);

  const auto path = temp_file("config.json");
  write_file(path, R"({"seed": 5, "n": 3, "tol": {"zhang": 0.05}})");
  apply_config_file(c, path.string());
  CHECK(c.seed == 5);
  CHECK(c.n == 3);
  CHECK(c.tolerance.at("zhang") == doctest::Approx(0.05));

  write_file(path, R"({"bogus": 1})");
  CHECK_THROWS_AS(apply_config_file(c, path.string()), InputError);
  write_file(path, "{not json");
  CHECK_THROWS_AS(apply_config_file(c, path.string()), InputError);
  CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/config.json"), InputError);

  // A flag beats the file value through the CLI.
  write_file(path, R"({"seed": 5, "n": 2, "samples": 1000})");
  const auto a = cli({"verify", "variational", "--config", path.string(), "--seed", "9"});
  const auto b = cli({"verify", "variational", "--n", "2", "--samples", "1000", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(strip_wall_ms(a.out) == strip_wall_ms(b.out));
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(cli({"verify", "no-such-suite"}).code == 2);
  CHECK(cli({"verify", "zhang", "--n", "5"}).code == 2);
  CHECK(cli({"verify", "zhang", "--n", "4", "--m", "3", "--samples", "10"}).code == 2);
  CHECK(cli({"verify", "zhang", "--tol", "zhang"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"verify", "zhang", "--catalog", "/nonexistent/catalog.json"}).code == 3);
  CHECK(cli({"verify", "variational", "--samples", "1000", "--out", "/nonexistent/dir/r.csv"}).code == 3);
  CHECK(cli({"--help"}).code == 0);

  const auto bad = temp_file("bad_catalog.json");
  write_file(bad, "[\n  {\"type\": \"polytope\",\n   \"vertices\": [[0, 0], [1]]}\n]\n");
  const auto r = cli({"verify", "zhang", "--catalog", bad.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("input error") != std::string::npos);
  std::filesystem::remove(bad);

  const auto list = cli({"bodies", "list", "--n", "3"});
  CHECK(list.code == 0);
  CHECK(list.out.find("cross-polytope,polytope,3") != std::string::npos);
}

TEST_CASE("a failing row gives exit code 1") {
  const auto path = temp_file("square.json");
  // Rogers-Shephard equality is keyed on the simplex name, so a square under that name fails.
  write_file(path, R"([{"name": "simplex", "type": "polytope", "dim": 2,
                        "vertices": [[0,0],[1,0],[0,1],[1,1]]}])");
  const auto r = cli({"verify", "rogers-shephard", "--catalog", path.string(), "--samples", "20000"});
  CHECK(r.code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("report formats: csv row count, round trip, json schema, determinism") {
  SuiteConfig c;
  c.samples = 2000;
  const SuiteReport r = run_suite("variational", c);
  REQUIRE(!r.rows.empty());
  const std::string csv = format_report(r, "csv");
  const auto back = parse_csv_report(csv);
  REQUIRE(back.size() == r.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].suite == r.rows[i].suite);
    CHECK(back[i].body == r.rows[i].body);
    CHECK(back[i].value == r.rows[i].value);
    CHECK(back[i].reference == r.rows[i].reference);
    CHECK(back[i].provenance == r.rows[i].provenance);
    CHECK(back[i].pass == r.rows[i].pass);
  }
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.rows.size()) + 1);

  const auto j = nlohmann::json::parse(format_report(r, "json"));
  CHECK(j.at("passed").get<bool>() == r.passed());
  CHECK(j.at("failures").get<std::size_t>() == r.failures());
  REQUIRE(j.at("rows").size() == r.rows.size());
  for (const auto& row : j.at("rows")) {
    for (const char* key : {"suite", "body", "n", "m", "value", "std_error", "reference", "provenance", "pass", "wall_ms"})
      CHECK(row.contains(key));
  }
  CHECK(j.at("rows")[0].at("value").get<double>() == r.rows[0].value);

  const auto p1 = temp_file("r1.csv"), p2 = temp_file("r2.csv");
  emit_report(r, "csv", p1.string());
  emit_report(run_suite("variational", c), "csv", p2.string());
  std::ifstream f1(p1), f2(p2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(strip_wall_ms(s1.str()) == strip_wall_ms(s2.str()));
  CHECK_THROWS_AS(emit_report(r, "csv", "/nonexistent/dir/r.csv"), InputError);
  CHECK_THROWS_AS(format_report(r, "xml"), UsageError);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("suite examples") {
  SuiteConfig c;
  c.seed = 1;

  SUBCASE("rogers-shephard (2,2) on the simplex") {
    c.m = 2;
    c.samples = 100'000;
    const SuiteReport r = run_suite("rogers-shephard", c);
    const ReportRow& s = row_for(r, "simplex");
    CHECK(s.reference == 15.0);
    CHECK(s.pass);
    // Raw volume of the difference body is the ratio times Vol(simplex)^2.
    CHECK(s.value * 0.25 == doctest::Approx(3.75).epsilon(0.02));
    CHECK(s.provenance == Provenance::paper_constant);
  }
  SUBCASE("zhang (2,1) on the simplex") {
    const SuiteReport r = run_suite("zhang", c);
    const ReportRow& s = row_for(r, "simplex");
    CHECK(s.reference == 1.5);
    CHECK(s.value == doctest::Approx(1.5).epsilon(0.01));
    CHECK(s.pass);
  }
  SUBCASE("petty (2,1) anchors and ordering") {
    const SuiteReport r = run_suite("petty", c);
    CHECK(row_for(r, "anchor:square").value == doctest::Approx(2.0).epsilon(0.01));
    CHECK(row_for(r, "anchor:simplex").value == doctest::Approx(1.5).epsilon(0.01));
    CHECK(row_for(r, "anchor:ball").value == doctest::Approx(std::numbers::pi * std::numbers::pi / 4).epsilon(0.01));
    for (const ReportRow& row : r.rows) {
      CHECK(row.pass);
      if (row.body.rfind("anchor:", 0) != 0) CHECK(row.value <= row.reference + 3 * row.std_error + 1e-12);
    }
  }
}
