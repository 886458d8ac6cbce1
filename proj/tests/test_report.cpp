#include <doctest.h>

#include <json.hpp>

#include "volterra/report.hpp"

using namespace volterra;
using nlohmann::ordered_json;

TEST_CASE("numbers render losslessly at 17 significant digits") {
  for (double x : {0.8, 1.0 / 3.0, 2.0, -1.5e-10, 6.02214076e23, 0.1}) {
    const std::string s = format_number(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(1.25) == "1.25");
}

TEST_CASE("json round-trips byte-identically") {
  ordered_json doc;
  doc["spec"] = spec_to_json(make_process(ProcessKind::ExpTempered, 0.3, 0.0, 1.0));
  doc["regime"] = "exact_quasihelix";
  doc["rho_lower"] = 0.8;
  doc["rho_upper"] = nullptr;
  doc["values"] = ordered_json::object();
  doc["values"]["lags"] = std::vector<double>{0.01, 0.005, 0.0025};
  doc["values"]["count"] = 3;
  doc["values"]["ok"] = true;
  doc["errors"] = ordered_json::object();
  doc["provenance"] = "theory: \"quoted\" and \\ escaped";

  const std::string first = render_json(doc);
  const ordered_json reparsed = ordered_json::parse(first);
  const std::string second = render_json(reparsed);
  CHECK(first == second);
}

TEST_CASE("report envelope carries the schema keys in order") {
  const ordered_json doc = make_report(
      make_process(ProcessKind::Wiener), ordered_json::object(),
      ordered_json::object(), "moments: test");
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected = {
      "spec", "regime", "rho_lower", "rho_upper",
      "values", "errors", "provenance"};
  CHECK(keys == expected);
}

TEST_CASE("csv rendering") {
  const std::string csv = render_csv({"h", "sigma"}, {{"1", "2"},
                                                      {"0.5", "1.5"}});
  CHECK(csv == "h,sigma\n1,2\n0.5,1.5\n");
  // quoting
  const std::string quoted = render_csv({"a,b", "c\"d"}, {});
  CHECK(quoted == "\"a,b\",\"c\"\"d\"\n");
}
