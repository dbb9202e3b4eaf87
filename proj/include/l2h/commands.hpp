#pragma once

// Subcommand backend shared by the C API and the command-line tool. Every
// command produces a JSON report; rationals are emitted as exact "p/q"
// strings, floating values only under keys ending in "_approx".

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "l2h/errors.hpp"
#include "l2h/spectral.hpp"

namespace l2h {

struct RunConfig {
  std::string command;      // parse, complex, certify, betti, hopf, construct
  std::string input_path;
  std::string input_text;   // used when input_path is empty
  std::optional<std::pair<std::size_t, std::size_t>> degrees;
  unsigned max_power = 512;
  std::size_t max_radius = 0;
  std::size_t quotients = 3;
  GapMethod method = GapMethod::automatic;
  std::uint64_t seed = 1;
  Rational epsilon_zero{1, 100};
  std::optional<std::size_t> support_cap;
  std::size_t wedge_count = 0;
  bool require_certified = false;
  bool timing = false;
  bool force = false;
};

struct RunResult {
  int exit_code = 0;
  std::string json;     // the report, newline terminated
  std::string summary;  // human-readable lines
};

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_parse = 2,
  exit_hypothesis = 3,
  exit_inconclusive = 4,
  exit_resource = 5,
};

int exit_code_for(ErrorCode code);

/// Throws InvalidArgument on a malformed configuration; every other failure
/// is reported inside the result.
void validate(const RunConfig& config);

RunResult run_command(const RunConfig& config);

/// Parses "a..b" or "a".
std::pair<std::size_t, std::size_t> parse_degree_range(const std::string& text);

}  // namespace l2h
