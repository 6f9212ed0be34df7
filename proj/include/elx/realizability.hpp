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

// The realizability formula transformer and a sampling harness that runs
// extracted programs against reference functions.

#ifndef ELX_REALIZABILITY_HPP_
#define ELX_REALIZABILITY_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elx/eal.hpp"
#include "elx/proof.hpp"
#include "elx/wellformed.hpp"

namespace elx {

// t ||- F. Binders are opened with fresh names; the result is locally
// closed whenever t and F are.
Formula realizes(const Term& t, const Formula& f);

struct RealizabilityGoal {
  Term realizer;
  Formula formula;
  // Signature followed by the ambient context.
  Context context;
};

// Checks context |- F : Prop and context* |- t : F-, reporting a failure of
// either as PreconditionViolation, then checks that realizes(t, F) is a
// proposition in context-. Failures of the last check propagate unchanged.
void check_realizer_wf(const RealizabilityGoal& goal);

// A data type D(param). Only N is executable.
struct DataTypeSpec {
  std::string name;
  std::string param;
  Formula formula;
  Type carrier;
};
DataTypeSpec nat_data_type();

using ReferenceFunction =
    std::function<std::uint64_t(const std::vector<std::uint64_t>&)>;

// "plus", "mult", "pred", "minus", "sum:F", "prod:F" with F a library
// function name, plus the library functions themselves. nullopt if unknown.
std::optional<ReferenceFunction> reference_function(const std::string& name);
// Arity of a named reference function, or 0 if unknown.
std::size_t reference_arity(const std::string& name);

// Evaluates a first-order term over the standard signature, reading its
// free variables from `env`. Throws UnboundVariable or ShapeMismatch.
std::uint64_t evaluate_term(const Term& t,
                            const std::map<std::string, std::uint64_t>& env);

// All tuples over 0..max (default 6 up to arity 2, 4 beyond).
std::vector<std::vector<std::uint64_t>> default_grid(
    std::size_t arity, std::optional<std::uint64_t> max = std::nullopt);

enum class Strategy { NormalOrder, Stratified };
std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

struct ConformanceOptions {
  Strategy strategy = Strategy::NormalOrder;
  std::uint64_t fuel = kDefaultFuel;
};

struct SampleResult {
  std::vector<std::uint64_t> inputs;
  std::uint64_t expected = 0;
  std::optional<std::uint64_t> actual;
  bool passed = false;
  std::uint64_t steps = 0;
  // Error code name and message when the run did not produce a numeral.
  std::string error;
  std::optional<CostProfile> profile;
};

struct ConformanceReport {
  std::vector<SampleResult> samples;
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool ok() const { return failed == 0; }
};

// Runs the program extracted from a totality proof on every sample. The
// conclusion must be  forall x1..xn. !^k1 D1(x1) -o .. -o !^k D(f x1..xn)
// with every Di equal to N. Throws ShapeMismatch otherwise; per-sample
// FuelExhausted and DecodeFailure are recorded in the report.
ConformanceReport conformance_test(
    const CheckedProof& proof, const std::vector<DataTypeSpec>& specs,
    const ReferenceFunction& reference,
    const std::vector<std::vector<std::uint64_t>>& samples,
    const ConformanceOptions& options = {});

// One run of the extracted program. `steps` receives the beta steps used.
std::uint64_t run_program(const CheckedProof& proof,
                          const std::vector<std::uint64_t>& inputs,
                          const ConformanceOptions& options,
                          std::uint64_t* steps = nullptr,
                          CostProfile* profile = nullptr);

}  // namespace elx

#endif  // ELX_REALIZABILITY_HPP_
