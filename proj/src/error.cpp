//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/error.hpp"

namespace larg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::WrongTag: return "WrongTag";
  case ErrorCode::UnsafeFloor: return "UnsafeFloor";
  case ErrorCode::FracTie: return "FracTie";
  case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
  case ErrorCode::BudgetExhausted: return "BudgetExhausted";
  case ErrorCode::MalformedQuery: return "MalformedQuery";
  case ErrorCode::DensityFailure: return "DensityFailure";
  case ErrorCode::WitnessFailure: return "WitnessFailure";
  case ErrorCode::IopBudgetExhausted: return "IopBudgetExhausted";
  case ErrorCode::InvariantViolation: return "InvariantViolation";
  case ErrorCode::NoVertexInRange: return "NoVertexInRange";
  case ErrorCode::SchemaMismatch: return "SchemaMismatch";
  case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace larg
