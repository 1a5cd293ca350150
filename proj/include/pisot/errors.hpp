#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pisot {

enum class ErrorCode {
  NotPisot,
  NoDominantRealRoot,
  NotSquarefree,
  PrecisionExhausted,
  AmbiguousRounding,
  ZeroDivision,
  InvalidTolerance,
  InvalidDelta,
  InvalidArgument,
  BudgetExceeded,
};

std::string_view to_string(ErrorCode code);

class PisotError : public std::runtime_error {
 public:
  PisotError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pisot
