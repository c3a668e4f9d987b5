//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace larg {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  WrongTag,
  UnsafeFloor,
  FracTie,
  RejectionBudgetExceeded,
  BudgetExhausted,
  MalformedQuery,
  DensityFailure,
  WitnessFailure,
  IopBudgetExhausted,
  InvariantViolation,
  NoVertexInRange,
  SchemaMismatch,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace larg
