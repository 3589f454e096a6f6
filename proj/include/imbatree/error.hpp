#pragma once

#include <stdexcept>
#include <string>

namespace imbatree {

enum class ErrorCode {
  // configuration problems (CLI exit code 2)
  invalid_config,
  invalid_param_for_family,
  // input data problems (CLI exit code 3)
  io_error,
  malformed_csv,
  missing_column,
  label_not_binary,
  version_mismatch,
  corrupt_document,
  // operation contract violations (CLI exit code 4)
  wrong_kind,
  not_enough_neighbors,
  unseen_category,
  arity_mismatch,
  all_rows_dropped,
  single_class,
  too_few_minority,
  empty_danger_set,
  all_safe,
  empty_input,
  non_binary_labels,
  length_mismatch,
  constant_truth,
  too_few_per_class,
  singular_system,
  too_few_rows,
};

/// All library failures are reported through this exception. The code gives
/// callers a stable identity to branch on; what() carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* error_name(ErrorCode code);

/// CLI exit code bucket: 2 = config, 3 = data, 4 = runtime.
int exit_code_for(ErrorCode code);

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace imbatree
