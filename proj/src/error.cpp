#include "z2scars/error.hpp"

namespace z2scars {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::bad_arguments: return "bad-arguments";
    case ErrorCode::invalid_sector: return "invalid-sector";
    case ErrorCode::length_too_large: return "L-too-large";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::solver_failure: return "solver-failure";
    case ErrorCode::too_few_levels: return "too-few-levels";
    case ErrorCode::non_normalized_input: return "non-normalized-input";
    case ErrorCode::vanishing_state: return "vanishing-state";
    case ErrorCode::lost_state: return "lost-state";
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::no_match_found: return "no-match-found";
    case ErrorCode::invalid_parameters: return "invalid-parameters";
    case ErrorCode::io_failure: return "io-failure";
  }
  return "unknown-error";
}

}  // namespace z2scars
