#pragma once

#include <stdexcept>
#include <string>

namespace chow {

// Every failure the library can signal, partitioned so callers can map a
// caught Error to a process exit code without string matching.
enum class ErrorCode {
  // bad input data (CLI exit 2)
  ShapeMismatch,
  NotSublattice,
  MissingFace,
  AmbiguousFace,
  DuplicateId,
  D1NotComplex,
  ParseError,
  SchemaError,
  ConsistencyError,
  // hypotheses of the implemented theorems do not hold (CLI exit 3)
  HypothesisFailed,
  // invariant the library itself guarantees was violated (CLI exit 4)
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

  bool is_input_error() const {
    return code_ != ErrorCode::HypothesisFailed && code_ != ErrorCode::Internal;
  }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Invariants of the library itself; violations are bugs, not bad input.
inline void require_internal(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::Internal, what);
}

}  // namespace chow
