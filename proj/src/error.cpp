// Copyright 2026 The elx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "elx/error.hpp"

namespace elx {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::IllFormedEntryType: return "IllFormedEntryType";
    case ErrorCode::UnboundTypeVariable: return "UnboundTypeVariable";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::ApplicationMismatch: return "ApplicationMismatch";
    case ErrorCode::TypeApplicationMismatch: return "TypeApplicationMismatch";
    case ErrorCode::UnboundPredicate: return "UnboundPredicate";
    case ErrorCode::AtomArityMismatch: return "AtomArityMismatch";
    case ErrorCode::AtomArgumentType: return "AtomArgumentType";
    case ErrorCode::LinearityViolation: return "LinearityViolation";
    case ErrorCode::NonBangContraction: return "NonBangContraction";
    case ErrorCode::PromotionShape: return "PromotionShape";
    case ErrorCode::SideConditionFreeVariable: return "SideConditionFreeVariable";
    case ErrorCode::IllFormedPayload: return "IllFormedPayload";
    case ErrorCode::EqualityTraceRejected: return "EqualityTraceRejected";
    case ErrorCode::WellformednessFailure: return "WellformednessFailure";
    case ErrorCode::HoleMismatch: return "HoleMismatch";
    case ErrorCode::StepMismatch: return "StepMismatch";
    case ErrorCode::IllTypedInstance: return "IllTypedInstance";
    case ErrorCode::NonFreshExtensionVariable: return "NonFreshExtensionVariable";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::RuleViolation: return "RuleViolation";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

std::string Error::describe() const {
  std::string out(error_code_name(code_));
  out += ": ";
  out += what();
  if (step_ >= 0) out += " (trace step " + std::to_string(step_) + ")";
  if (!path_.empty()) {
    out += " [at ";
    for (std::size_t i = 0; i < path_.size(); ++i) {
      if (i) out += " / ";
      out += path_[i];
    }
    out += "]";
  }
  return out;
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace elx
