#pragma once

#include <stdexcept>
#include <string>

namespace blockalg {

enum class ErrorCode {
  Parse,
  InvalidArgument,
  NotInLattice,
  Condition11Violated,
  IndexOutsideGamma,
  IndexOutsideJ,
  SpecMismatch,
  SpecInvalid,
  UndefinedInThisAlgebra,
  AlphaNotInGamma,
  PhiCheckFailed,
  WittDegenerate,
  ZeroSeed,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blockalg
