#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "volterra/cli.hpp"
#include "volterra/report.hpp"

using volterra::cli::run_command;
using nlohmann::ordered_json;

namespace {

struct RunOutcome {
  int code;
  std::string out;
  std::string err;
};

RunOutcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("describe reports the regime as json") {
  const RunOutcome r = run({"describe", "--kind", "u1", "--alpha", "0.3",
                            "--lambda", "1", "--t1", "0", "--t2", "1"});
  REQUIRE(r.code == 0);
  const ordered_json doc = ordered_json::parse(r.out);
  CHECK(doc["regime"] == "exact_quasihelix");
  CHECK(doc["rho_lower"].get<double>() == doctest::Approx(0.8));
  CHECK(doc["rho_upper"].get<double>() == doctest::Approx(0.8));
  CHECK(doc["spec"]["kind"] == "u1");
  CHECK(doc.contains("provenance"));
  // a real report re-serializes byte-identically
  CHECK(volterra::render_json(doc) == r.out);
}

TEST_CASE("constant runs both routes") {
  const RunOutcome r = run({"constant", "--alpha", "0"});
  REQUIRE(r.code == 0);
  const ordered_json doc = ordered_json::parse(r.out);
  CHECK(doc["values"]["closed_form"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(doc["values"]["numeric"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(doc["values"]["difference"].get<double>()) <= 1e-10);
}

TEST_CASE("incvar on the reference process") {
  const RunOutcome r =
      run({"incvar", "--kind", "wiener", "--s", "1", "--t", "3"});
  REQUIRE(r.code == 0);
  const ordered_json doc = ordered_json::parse(r.out);
  CHECK(doc["values"]["total"].get<double>() == 2.0);
  CHECK(doc["values"]["method"] == "closed_form");
}

TEST_CASE("validation failures exit with code 1") {
  CHECK(run({"incvar", "--kind", "u9", "--s", "1", "--t", "2"}).code == 1);
  CHECK(run({"describe", "--kind", "v", "--alpha", "0", "--gamma", "0.5"})
            .code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"describe", "--kind", "u1"}).code == 1);  // lambda missing
  CHECK(run({"variance", "--kind", "wiener", "--t", "1", "--tol", "1"})
            .code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("analytically divergent queries are domain rejections") {
  // increment variance of the two-sided kind diverges for these parameters;
  // the divergence is detected before any quadrature runs
  const RunOutcome r = run({"incvar", "--kind", "u6", "--alpha", "0.8",
                            "--gamma", "0.4", "--s", "1", "--t", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("diverges") != std::string::npos);
}

TEST_CASE("scan exports csv") {
  const RunOutcome r =
      run({"scan", "--kind", "wiener", "--t1", "0", "--t2", "2", "--anchor",
           "1", "--lag-count", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "h,sigma,std_error");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("fit compares against the regime table") {
  const RunOutcome r =
      run({"fit", "--kind", "u1", "--alpha", "0.3", "--lambda", "1", "--t1",
           "0", "--t2", "1", "--anchor", "0.5", "--tol", "1e-12"});
  REQUIRE(r.code == 0);
  const ordered_json doc = ordered_json::parse(r.out);
  CHECK(std::abs(doc["values"]["rho_hat"].get<double>() - 0.8) <= 0.02);
  CHECK(doc["values"]["within_tolerance"].get<bool>());
  CHECK(doc["regime"] == "exact_quasihelix");
}

TEST_CASE("simulate writes one csv row per path") {
  const RunOutcome r = run({"simulate", "--kind", "wiener", "--t2", "1",
                            "--points", "4", "--paths", "3", "--seed", "9"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "0.25,0.5,0.75,1");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("subcommands are deterministic") {
  const std::vector<std::string> cmd = {"simulate", "--kind",  "u2",
                                        "--alpha",  "0.25",    "--gamma",
                                        "0.4",      "--points", "3",
                                        "--paths",  "5",       "--seed", "21"};
  const RunOutcome a = run(cmd);
  const RunOutcome b = run(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("help exits cleanly") {
  const RunOutcome r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("describe") != std::string::npos);
}

TEST_CASE("verify runs the acceptance suite") {
  const RunOutcome r = run({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
