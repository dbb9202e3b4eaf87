#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <memory>
#include <string>

#include "l2h/l2h.h"

namespace {

using json = nlohmann::json;

struct Run {
  int exit_code = -1;
  std::string text;
  json report;
};

struct ConfigHandle {
  l2h_config* c = nullptr;
  ConfigHandle() { REQUIRE(l2h_config_new(&c) == L2H_OK); }
  ~ConfigHandle() { l2h_config_free(c); }
};

Run run(l2h_config* c) {
  l2h_report* r = nullptr;
  REQUIRE(l2h_run(c, &r) == L2H_OK);
  Run out;
  out.exit_code = l2h_report_exit_code(r);
  out.text = l2h_report_json(r);
  out.report = json::parse(out.text);
  l2h_report_free(r);
  return out;
}

const char* kCircle = "group \"Z\" { generators t; relators ; }";
const char* kFree = "group \"F2\" { generators a, b; relators ; }";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(l2h_version()).size() > 0);
  CHECK(std::string(l2h_status_name(L2H_OK)) == "Ok");
  CHECK(std::string(l2h_status_name(L2H_ERR_SYNTAX)) == "SyntaxError");
  CHECK(std::string(l2h_status_name(L2H_ERR_NULL_HANDLE)) == "NullHandle");
}

TEST_CASE("null handles and invalid settings") {
  CHECK(l2h_config_new(nullptr) == L2H_ERR_NULL_HANDLE);
  CHECK(l2h_config_set_seed(nullptr, 3) == L2H_ERR_NULL_HANDLE);
  l2h_report* r = nullptr;
  CHECK(l2h_run(nullptr, &r) == L2H_ERR_NULL_HANDLE);
  CHECK(r == nullptr);
  CHECK(l2h_report_exit_code(nullptr) != 0);

  ConfigHandle h;
  CHECK(l2h_config_set_method(h.c, "spectral") == L2H_ERR_INVALID_ARGUMENT);
  CHECK(std::string(l2h_last_error()).find("spectral") != std::string::npos);
  CHECK(l2h_config_set_max_power(h.c, 0) == L2H_ERR_INVALID_ARGUMENT);
  CHECK(l2h_config_set_degrees(h.c, "3..1") == L2H_ERR_INVALID_ARGUMENT);
  CHECK(l2h_config_set_epsilon_zero(h.c, "-1/2") == L2H_ERR_INVALID_ARGUMENT);
  CHECK(l2h_config_set_epsilon_zero(h.c, "abc") == L2H_ERR_INVALID_ARGUMENT);
  CHECK(l2h_config_set_epsilon_zero(h.c, "1/50") == L2H_OK);
  CHECK(std::string(l2h_last_error()).empty());
  CHECK(l2h_config_set_command(h.c, "draw") == L2H_OK);
  CHECK(l2h_config_set_input_text(h.c, kCircle) == L2H_OK);
  CHECK(l2h_run(h.c, &r) == L2H_ERR_INVALID_ARGUMENT);
}

TEST_CASE("parse echoes the canonical presentation") {
  ConfigHandle h;
  l2h_config_set_command(h.c, "parse");
  l2h_config_set_input_text(h.c, "group \"T\" { generators a, b; relators [a,b]; }");
  Run r = run(h.c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["status"] == "ok");
  CHECK(r.report["result"]["presentation"]["generators"] == json::array({"a", "b"}));
  CHECK(r.report["result"]["group"]["kind"].get<std::string>().size() > 0);
}

TEST_CASE("parse errors exit with 2") {
  ConfigHandle h;
  l2h_config_set_command(h.c, "parse");
  l2h_config_set_input_text(h.c, "group \"T\" { generators a, a; relators ; }");
  Run r = run(h.c);
  CHECK(r.exit_code == 2);
  CHECK(r.report["status"] == "error");
  CHECK(r.report["error"]["code"] == "DuplicateGenerator");

  l2h_config_set_input_text(h.c, "group \"T\" { generators a; relators a^; }");
  CHECK(run(h.c).exit_code == 2);
}

TEST_CASE("missing input file") {
  ConfigHandle h;
  l2h_config_set_command(h.c, "parse");
  l2h_config_set_input_path(h.c, "/nonexistent/file.grp");
  Run r = run(h.c);
  CHECK(r.exit_code == 1);
  CHECK(r.report["error"]["code"] == "IoError");
}

TEST_CASE("certify and the strictness flag") {
  ConfigHandle h;
  l2h_config_set_command(h.c, "certify");
  l2h_config_set_input_text(h.c, kCircle);
  l2h_config_set_degrees(h.c, "0");
  Run r = run(h.c);
  CHECK(r.exit_code == 0);
  const auto& cert = r.report["result"]["certificates"][0];
  CHECK(cert["status"] == "ZeroEvidence");
  CHECK(cert["gap_lower"].is_null());
  CHECK(cert["lambda_min_upper"].is_string());
  CHECK(cert["runtime_ms"] == 0);

  l2h_config_set_require_certified(h.c, 1);
  CHECK(run(h.c).exit_code == 4);

  l2h_config_set_degrees(h.c, "0..5");
  Run out_of_range = run(h.c);
  CHECK(out_of_range.exit_code == 1);
  CHECK(out_of_range.report["error"]["code"] == "DegreeOutOfRange");
}

TEST_CASE("resource caps exit with 5") {
  ConfigHandle h;
  l2h_config_set_command(h.c, "certify");
  l2h_config_set_input_text(h.c, kFree);
  l2h_config_set_support_cap(h.c, 1);
  Run r = run(h.c);
  CHECK(r.exit_code == 5);
  CHECK(r.report["error"]["code"] == "SupportCapExceeded");
}

TEST_CASE("construct refuses groups failing the hypothesis") {
  ConfigHandle h;
  l2h_config_set_command(h.c, "construct");
  l2h_config_set_input_text(h.c, kFree);
  Run r = run(h.c);
  CHECK(r.exit_code == 3);
  CHECK(r.report["result"]["status"] == "FailedHypothesis");
  CHECK(r.report["result"]["hypothesis"]["violating_degree"] == 1);
}

TEST_CASE("reports are deterministic and carry the seed") {
  ConfigHandle h;
  l2h_config_set_command(h.c, "betti");
  l2h_config_set_input_text(h.c, kFree);
  l2h_config_set_seed(h.c, 17);
  Run a = run(h.c);
  Run b = run(h.c);
  CHECK(a.exit_code == 0);
  CHECK(a.text == b.text);
  CHECK(a.report["seed"] == 17);
  // Exact rationals are strings; floats only appear under *_approx keys.
  const auto& est = a.report["result"]["chain"][0]["estimates"][1];
  CHECK(est["value"].is_string());
  CHECK(est["value_approx"].is_number_float());
}
