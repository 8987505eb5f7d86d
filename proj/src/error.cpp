#include "kanon/error.hpp"

namespace kanon {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument:         return "invalid argument";
    case ErrorCode::arity_mismatch:           return "arity mismatch";
    case ErrorCode::duplicate_attribute:      return "duplicate attribute";
    case ErrorCode::unknown_attribute:        return "unknown attribute";
    case ErrorCode::unclassified_attribute:   return "unclassified attribute";
    case ErrorCode::retain_not_pii:           return "retained attribute is not PII";
    case ErrorCode::malformed_spec:           return "malformed hierarchy spec";
    case ErrorCode::uncovered_ground_value:   return "uncovered ground value";
    case ErrorCode::level_out_of_range:       return "level out of range";
    case ErrorCode::unknown_value:            return "unknown value";
    case ErrorCode::row_out_of_range:         return "row out of range";
    case ErrorCode::empty_dataset:            return "empty dataset";
    case ErrorCode::infeasible_within_budget: return "infeasible within budget";
    case ErrorCode::incompatible_schema:      return "incompatible schema";
    case ErrorCode::io_error:                 return "i/o error";
    case ErrorCode::parse_error:              return "parse error";
    case ErrorCode::invalid_param:            return "invalid parameter";
    case ErrorCode::ragged_row:               return "ragged row";
    case ErrorCode::unknown_hierarchy_ref:    return "unknown hierarchy reference";
  }
  return "unknown error";
}

}  // namespace kanon
