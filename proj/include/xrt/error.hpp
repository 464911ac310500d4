#pragma once

#include <stdexcept>
#include <string>

namespace xrt {

enum class ErrorCode {
  InvalidArgument,
  ChartDomain,
  NotSameFibre,
  DegenerateSpec,
  QuadratureBudgetExceeded,
  GridTooSmall,
  NonDecayingIntegrand,
  BranchFailure,
  SingularQuadratureFailure,
  InvalidBetti,
  Parse,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// All failures raised by the numerical core. The C API maps `code()` onto
// xrt_status values one to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace xrt
