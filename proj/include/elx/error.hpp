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

#ifndef ELX_ERROR_HPP_
#define ELX_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace elx {

enum class ErrorCode {
  ArityMismatch,
  FuelExhausted,
  DuplicateName,
  IllFormedEntryType,
  UnboundTypeVariable,
  UnboundVariable,
  ApplicationMismatch,
  TypeApplicationMismatch,
  UnboundPredicate,
  AtomArityMismatch,
  AtomArgumentType,
  LinearityViolation,
  NonBangContraction,
  PromotionShape,
  SideConditionFreeVariable,
  IllFormedPayload,
  EqualityTraceRejected,
  WellformednessFailure,
  HoleMismatch,
  StepMismatch,
  IllTypedInstance,
  NonFreshExtensionVariable,
  PositionOutOfRange,
  DecodeFailure,
  RuleViolation,
  ShapeMismatch,
  SyntaxError,
  PreconditionViolation,
};

std::string_view error_code_name(ErrorCode code);

/**
 * The single exception type raised by the library. `path()` lists the
 * derivation or syntax positions crossed while unwinding, outermost first.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const std::vector<std::string>& path() const { return path_; }

  // Records that the error happened below `frame`.
  void push_frame(std::string frame) {
    path_.insert(path_.begin(), std::move(frame));
  }

  // Step index inside a rewrite trace, or -1.
  int step() const { return step_; }
  void set_step(int step) { step_ = step; }

  // "Code: message [at a / b / c]".
  std::string describe() const;

 private:
  ErrorCode code_;
  std::vector<std::string> path_;
  int step_ = -1;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace elx

#endif  // ELX_ERROR_HPP_
