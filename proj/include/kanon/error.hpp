#pragma once

#include <stdexcept>
#include <string>

namespace kanon {

/// Machine-checkable failure categories. Every engine error carries exactly
/// one code; the message holds the detail (attribute name, row index, value).
enum class ErrorCode {
  invalid_argument,
  arity_mismatch,
  duplicate_attribute,
  unknown_attribute,
  unclassified_attribute,
  retain_not_pii,
  malformed_spec,
  uncovered_ground_value,
  level_out_of_range,
  unknown_value,
  row_out_of_range,
  empty_dataset,
  infeasible_within_budget,
  incompatible_schema,
  io_error,
  parse_error,
  invalid_param,
  ragged_row,
  unknown_hierarchy_ref,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }

  /// Detail text without the code prefix, for wrapping with more context.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace kanon
