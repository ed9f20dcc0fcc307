#pragma once

#include <stdexcept>
#include <string>

namespace z2scars {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
  bad_arguments = 2,
  invalid_sector = 10,
  length_too_large = 11,
  dimension_mismatch = 12,
  solver_failure = 13,
  too_few_levels = 14,
  non_normalized_input = 15,
  vanishing_state = 16,
  lost_state = 17,
  unknown_name = 18,
  no_match_found = 19,
  invalid_parameters = 20,
  io_failure = 21,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace z2scars
