#include "imbatree/error.hpp"

namespace imbatree {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::invalid_param_for_family: return "InvalidParamForFamily";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::malformed_csv: return "MalformedCsv";
    case ErrorCode::missing_column: return "MissingColumn";
    case ErrorCode::label_not_binary: return "LabelNotBinary";
    case ErrorCode::version_mismatch: return "VersionMismatch";
    case ErrorCode::corrupt_document: return "CorruptDocument";
    case ErrorCode::wrong_kind: return "WrongKind";
    case ErrorCode::not_enough_neighbors: return "NotEnoughNeighbors";
    case ErrorCode::unseen_category: return "UnseenCategory";
    case ErrorCode::arity_mismatch: return "ArityMismatch";
    case ErrorCode::all_rows_dropped: return "AllRowsDropped";
    case ErrorCode::single_class: return "SingleClass";
    case ErrorCode::too_few_minority: return "TooFewMinority";
    case ErrorCode::empty_danger_set: return "EmptyDangerSet";
    case ErrorCode::all_safe: return "AllSafe";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::non_binary_labels: return "NonBinaryLabels";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::constant_truth: return "ConstantTruth";
    case ErrorCode::too_few_per_class: return "TooFewPerClass";
    case ErrorCode::singular_system: return "SingularSystem";
    case ErrorCode::too_few_rows: return "TooFewRows";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_config:
    case ErrorCode::invalid_param_for_family:
      return 2;
    case ErrorCode::io_error:
    case ErrorCode::malformed_csv:
    case ErrorCode::missing_column:
    case ErrorCode::label_not_binary:
    case ErrorCode::version_mismatch:
    case ErrorCode::corrupt_document:
      return 3;
    default:
      return 4;
  }
}

}  // namespace imbatree
