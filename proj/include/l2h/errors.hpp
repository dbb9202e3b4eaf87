#pragma once

#include <stdexcept>
#include <string>

namespace l2h {

// Numeric values are shared with the C API (l2h_status).
enum class ErrorCode : int {
  ok = 0,
  syntax = 1,
  unknown_generator = 2,
  duplicate_generator = 3,
  non_confluent_rewriting = 4,
  relator_not_trivial = 5,
  dimension_mismatch = 6,
  support_cap_exceeded = 7,
  ball_too_large = 8,
  degree_out_of_range = 9,
  not_a_cycle = 10,
  profile_not_applicable = 11,
  relator_violation = 12,
  unsupported_group_for_resolution = 13,
  hypothesis_not_satisfied = 14,
  no_candidate_subset = 15,
  invalid_argument = 16,
  unsupported_group = 17,
  io = 18,
  internal = 99,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(ErrorCode::syntax, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace l2h
