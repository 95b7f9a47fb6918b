#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gkm {

enum class ErrorCode {
  InvalidArgument,
  NegativeCoefficient,
  NonIntegral,
  NotFormal,
  Gkm3Required,
  NonPolynomialResult,
  ResidualNonzero,
  NonIntegralCoefficient,
  WrongFamily,
  NotComplete,
  Inconsistent,
  Parse,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gkm
