#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opuc/cli.hpp"
#include "opuc/error.hpp"
#include "opuc/presets.hpp"

using namespace opuc;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"opuc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const char* dir = std::getenv("OPUC_TEST_TMP");
  return (dir ? std::filesystem::path(dir) : std::filesystem::temp_directory_path()) / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = tmp(name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("derivatives from a CSV file") {
  const auto path = write_file("a.csv", "# worked example\n0.5\n0.5\n");
  for (std::string method : {"dp", "naive", "lemma1", "poly"}) {
    auto r = cli({"derivatives", "--alphas", "file:" + path, "--n", "1", "--j", "1", "--method", method});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(1.75));
    CHECK(j["value_sign"] == 1);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["method"] == method);
  }
  auto e = cli({"derivatives", "--alphas", "file:" + path, "--n", "1", "--j", "1", "--exact"});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["value_exact"] == "7/4");
}

TEST_CASE("diagnostics of the zero preset") {
  auto r = cli({"diagnostics", "--alphas", "zero:100"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["muckenhoupt"]["global_sup"].get<double>() == 1.0);
  CHECK(j["N"] == 100);
  auto x = cli({"diagnostics", "--alphas", "zero:100", "--exact-windows", "--scales", "1..3", "--csv", tmp("w.csv")});
  REQUIRE(x.code == 0);
  std::ifstream csv(tmp("w.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "l,n,product,oscillation");
}

TEST_CASE("validation errors exit with 1") {
  CHECK(cli({"diagnostics", "--alphas", "nope:3"}).code == 1);
  CHECK(cli({"diagnostics", "--alphas", "const:1.5,10"}).code == 1);
  CHECK(cli({"derivatives", "--alphas", "zero:3", "--n", "5", "--j", "1"}).code == 1);
  CHECK(cli({"derivatives", "--alphas", "zero:3", "--n", "1", "--j", "1", "--method", "magic"}).code == 1);
  CHECK(cli({"kernels", "--alphas", "zero:3", "--n", "2", "--j", "3"}).code == 1);
  CHECK(cli({"example", "--delta", "0.4"}).code == 1);
  CHECK(cli({"diagnostics", "--alphas", "zero:10", "--scales", "3"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({}).code == 1);
  const auto bad = write_file("bad.csv", "0.1\nabc\n");
  auto r = cli({"diagnostics", "--alphas", "file:" + bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("bad.csv:2") != std::string::npos);
}

TEST_CASE("indefinite moments exit with 2") {
  std::string text = "16\n";
  for (int i = 0; i < 15; ++i) text += "0\n";
  const auto path = write_file("delta.csv", text);
  auto r = cli({"levinson", "--weight", "grid:" + path, "--N", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("alpha_0") != std::string::npos);
}

TEST_CASE("moments and levinson subcommands") {
  auto m = json::parse(cli({"moments", "--weight", "poisson:0.5", "--M", "2"}).out);
  CHECK(m["moments"]["re"][0].get<double>() == doctest::Approx(0.25));
  auto l = json::parse(cli({"levinson", "--weight", "trig:1,1", "--N", "2"}).out);
  CHECK(l["alphas"]["re"][0].get<double>() == doctest::Approx(0.5));
  auto rec = json::parse(cli({"recurrence", "--alphas", "const:0.5,1", "--exact"}).out);
  CHECK(rec["phi"][0] == "-1/2");
}

TEST_CASE("kernels with Toeplitz check") {
  auto r = cli({"kernels", "--alphas", "power:0.4,1,40", "--n", "20", "--j", "2", "--check-toeplitz"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["toeplitz"]["pass"] == true);
  auto z = json::parse(cli({"kernels", "--alphas", "zero:10", "--n", "10", "--j", "2"}).out);
  CHECK(z["norm_log10"].get<double>() == doctest::Approx(z["lebesgue_norm_log10"].get<double>()));
  CHECK(std::abs(z["lemma7_ratio_log10"].get<double>()) < 1e-12);
}

TEST_CASE("second-kind, example and prop2 subcommands") {
  auto s = json::parse(cli({"second-kind", "--alphas", "const:0.3,3", "--verify"}).out);
  CHECK(s["pass"] == true);
  auto e = cli({"example", "--N", "5000", "--csv", tmp("alphas.csv")});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["max_abs_mean"].get<double>() == 0.0);
  CHECK(read_csv_column(tmp("alphas.csv")).size() == 5000);
  auto p = json::parse(cli({"prop2", "--N", "1000"}).out);
  CHECK(p["h1"].get<double>() == doctest::Approx(9.0 / 7.0));
}

TEST_CASE("theorem-check on a Baxter-class preset") {
  auto r = cli({"theorem-check", "--alphas", "power:0.3,1.5,65536"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["flags"]["steklov_pair_plausible"] == true);
  CHECK(j["flags"]["muckenhoupt_sup_finite"] == true);
  CHECK(j["flags"]["reproducing_ok"] == true);
  CHECK(j["muckenhoupt_sup"].get<double>() >= 1.0);
}

TEST_CASE("identical configurations give identical output") {
  const std::vector<std::string> args{"theorem-check", "--alphas", "power:0.5,0.8,512", "--seed", "42"};
  auto a = cli(args);
  auto b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = cli({"diagnostics", "--alphas", "prop2:3000"});
  auto d = cli({"diagnostics", "--alphas", "prop2:3000"});
  CHECK(c.out == d.out);
}

TEST_CASE("output file") {
  auto r = cli({"--output", tmp("out.json"), "prop2", "--N", "100"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(tmp("out.json"));
  CHECK(json::parse(f)["N"] == 100);
}
