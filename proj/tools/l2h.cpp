// Command-line front end over the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "l2h/l2h.h"

namespace {

struct ConfigDeleter {
  void operator()(l2h_config* c) const { l2h_config_free(c); }
};
struct ReportDeleter {
  void operator()(l2h_report* r) const { l2h_report_free(r); }
};

void check(l2h_status s, const char* what) {
  if (s == L2H_OK) return;
  std::cerr << "l2h: " << what << ": " << l2h_status_name(s) << ": " << l2h_last_error() << "\n";
  std::exit(1);
}

// Writes through a temporary file in the same directory, then renames.
bool write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    if (!out.flush()) return false;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
  return !ec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic L2-homology workbench for finitely presented groups"};
  app.set_version_flag("--version", std::string(l2h_version()));

  std::string command, file, degrees, method = "auto", out, epsilon;
  std::optional<unsigned> max_power;
  std::optional<std::size_t> max_radius, quotients, support_cap, wedge;
  std::uint64_t seed = 1;
  bool require_certified = false, timing = false, force = false, quiet = false;

  app.add_option("command", command, "parse, complex, certify, betti, hopf or construct")
      ->required()
      ->check(CLI::IsMember({"parse", "complex", "certify", "betti", "hopf", "construct"}));
  app.add_option("file", file, "group presentation file")->required();
  app.add_option("--degrees", degrees, "degree range a..b");
  app.add_option("--max-power", max_power, "largest n in the power bounds")->check(CLI::PositiveNumber);
  app.add_option("--max-radius", max_radius, "truncation or kernel-search radius");
  app.add_option("--quotients", quotients, "finite quotient budget")->check(CLI::PositiveNumber);
  app.add_option("--method", method, "norm bound strategy")
      ->check(CLI::IsMember({"auto", "l1", "rd", "subadditive"}));
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out, "write the JSON report here instead of standard output");
  app.add_option("--epsilon-zero", epsilon, "zero-evidence threshold, exact rational");
  app.add_option("--support-cap", support_cap, "convolution support guard")->check(CLI::PositiveNumber);
  app.add_option("--wedge", wedge, "number of 2-spheres wedged on before constructing");
  app.add_flag("--require-certified", require_certified, "exit 4 unless every certificate is certified");
  app.add_flag("--timing", timing, "record wall-clock times in the report");
  app.add_flag("--force", force, "construct even when the hypothesis check fails");
  app.add_flag("-q,--quiet", quiet, "no summary on standard error");
  CLI11_PARSE(app, argc, argv);

  if (!support_cap) {
    if (const char* env = std::getenv("L2H_SUPPORT_CAP")) {
      try {
        support_cap = static_cast<std::size_t>(std::stoull(env));
      } catch (const std::exception&) {
        std::cerr << "l2h: ignoring malformed L2H_SUPPORT_CAP='" << env << "'\n";
      }
    }
  }

  l2h_config* raw = nullptr;
  check(l2h_config_new(&raw), "config");
  std::unique_ptr<l2h_config, ConfigDeleter> config(raw);
  l2h_config* c = config.get();
  check(l2h_config_set_command(c, command.c_str()), "command");
  check(l2h_config_set_input_path(c, file.c_str()), "input");
  if (!degrees.empty()) check(l2h_config_set_degrees(c, degrees.c_str()), "--degrees");
  if (max_power) check(l2h_config_set_max_power(c, *max_power), "--max-power");
  if (max_radius) check(l2h_config_set_max_radius(c, *max_radius), "--max-radius");
  if (quotients) check(l2h_config_set_quotients(c, *quotients), "--quotients");
  check(l2h_config_set_method(c, method.c_str()), "--method");
  check(l2h_config_set_seed(c, seed), "--seed");
  if (!epsilon.empty()) check(l2h_config_set_epsilon_zero(c, epsilon.c_str()), "--epsilon-zero");
  if (support_cap) check(l2h_config_set_support_cap(c, *support_cap), "--support-cap");
  if (wedge) check(l2h_config_set_wedge_count(c, *wedge), "--wedge");
  check(l2h_config_set_require_certified(c, require_certified), "--require-certified");
  check(l2h_config_set_timing(c, timing), "--timing");
  check(l2h_config_set_force(c, force), "--force");

  l2h_report* rep = nullptr;
  check(l2h_run(c, &rep), "run");
  std::unique_ptr<l2h_report, ReportDeleter> report(rep);

  if (!quiet) std::cerr << l2h_report_summary(rep);
  const std::string json = l2h_report_json(rep);
  if (out.empty()) {
    std::cout << json;
  } else if (!write_atomically(out, json)) {
    std::cerr << "l2h: cannot write " << out << "\n";
    return 1;
  }
  return l2h_report_exit_code(rep);
}
