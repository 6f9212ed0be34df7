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

// Elementary affine logic: derivations obtained from checked proofs by
// forgetting first-order and type information, their checker, terms with
// explicit boxes, and a normalizer that works one box depth at a time.

#ifndef ELX_EAL_HPP_
#define ELX_EAL_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "elx/error.hpp"
#include "elx/projections.hpp"
#include "elx/proof.hpp"

namespace elx {

// ---------------------------------------------------------------------------
// Derivations

enum class EalRule {
  Axiom,
  Weakening,
  Contraction,
  Promotion,
  Application,
  Abstraction,
  ForallIntro,
  ForallElim,
};

std::string_view eal_rule_name(EalRule rule);

struct EalHypothesis {
  std::string label;
  EalType type;
};

struct EalDerivation {
  EalRule rule = EalRule::Axiom;
  std::vector<EalHypothesis> delta;
  PureTerm term;
  EalType type;
  // Axiom, Weakening, Contraction, Abstraction: the label. ForallIntro: the
  // type variable.
  std::string name;
  // Promotion: inner labels, one per premise.
  std::vector<std::string> labels;
  // Weakening: the added type. ForallElim: the instance.
  EalType payload;
  std::vector<EalDerivation> children;
};

// Rule-by-rule image of a checked proof. The equality, first-order and type
// quantifier rules disappear; second-order quantifiers become EAL
// quantifiers over alpha_X.
EalDerivation translate_to_eal(const CheckedProof& proof);

// Throws RuleViolation with the path of the offending node.
void check_eal(const EalDerivation& d);

std::size_t eal_size(const EalDerivation& d);

// ---------------------------------------------------------------------------
// Terms with boxes
//
// Box(body, pending) records one promotion: `body` only mentions the box's
// own slots through Local(i), and pending[i] is the term plugged into slot i.
// Var indices count lambda binders between the occurrence and its binder
// inside the same box body.

enum class BoxKind { Var, Local, Free, Lam, App, Box };

class BoxTerm {
 public:
  BoxTerm() = default;

  static BoxTerm var(int index);
  static BoxTerm local(int slot);
  static BoxTerm free(std::string name);
  static BoxTerm lam(std::string hint, BoxTerm body);
  static BoxTerm app(BoxTerm fn, BoxTerm arg);
  static BoxTerm box(BoxTerm body, std::vector<BoxTerm> pending);

  BoxKind kind() const;
  int index() const;                 // Var, Local
  const std::string& name() const;   // Free, Lam hint
  const BoxTerm& body() const;       // Lam, Box
  const BoxTerm& fn() const;
  const BoxTerm& arg() const;
  const std::vector<BoxTerm>& pending() const;

  bool is_null() const { return node_ == nullptr; }
  std::uint64_t size() const;
  int loose() const;
  // Deepest nesting of box bodies below this node.
  int depth() const;

  friend bool operator==(const BoxTerm& a, const BoxTerm& b);

 private:
  struct Node;
  explicit BoxTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// The extracted term of the proof with each promotion kept as a box.
BoxTerm to_box_term(const CheckedProof& proof);
// Performs every pending substitution.
PureTerm erase_boxes(const BoxTerm& t);
std::string to_string(const BoxTerm& t);

// ---------------------------------------------------------------------------
// Normalization

struct LevelCost {
  int depth = 0;
  std::uint64_t steps = 0;
  std::uint64_t merges = 0;
  std::uint64_t size_at_start = 0;
  std::uint64_t max_size = 0;
};

struct CostProfile {
  std::vector<LevelCost> levels;
  std::uint64_t total_steps = 0;
  // Box depth of the input.
  int input_depth = 0;
  // Steps needed after erasing the boxes (zero for well-stratified input).
  std::uint64_t residual_steps = 0;
  // After each level, every redex at that depth or above stayed contracted.
  bool stratified = true;
};

// FuelExhausted raised by the stratified normalizer; carries the work done.
class FuelExhaustedError : public Error {
 public:
  FuelExhaustedError(const std::string& message, CostProfile partial)
      : Error(ErrorCode::FuelExhausted, message), partial_(std::move(partial)) {}
  const CostProfile& partial() const { return partial_; }

 private:
  CostProfile partial_;
};

struct StratifiedResult {
  PureTerm normal_form;
  CostProfile profile;
};

StratifiedResult stratified_normalize(const BoxTerm& t, std::uint64_t budget);

// Leftmost-outermost beta normalization. `steps` receives the number of
// contractions. Throws FuelExhausted.
PureTerm normal_order_normalize(const PureTerm& t, std::uint64_t budget,
                                std::uint64_t* steps = nullptr);

// ---------------------------------------------------------------------------
// Numerals

PureTerm church_encode(std::uint64_t n);
// Accepts exactly fun f. fun x. f (... (f x)). Throws DecodeFailure.
std::uint64_t church_decode(const PureTerm& t);
// The numeral as a term of !^bangs N with its boxes.
BoxTerm box_numeral(std::uint64_t n, int bangs);

}  // namespace elx

#endif  // ELX_EAL_HPP_
