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

// Proof scripts for the affine second-order sequent calculus and the checker
// that validates them while extracting System F terms.
//
// A sequent is  Sigma; Gamma; Delta |- t : P  where Gamma holds variable
// declarations and Delta is a multiset of labelled hypotheses. Gamma is
// passed down the tree; Delta, t and P are computed bottom-up. A label may
// occur more than once in Delta only for identical !-formulas, which is how
// the rules share a hypothesis before contraction.

#ifndef ELX_PROOF_HPP_
#define ELX_PROOF_HPP_

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elx/error.hpp"
#include "elx/rewrite.hpp"
#include "elx/syntax.hpp"
#include "elx/wellformed.hpp"

namespace elx {

enum class Rule {
  Axiom,
  Weakening,
  Application,
  Abstraction,
  Promotion,
  Contraction,
  IntroType,
  Intro1,
  Intro2,
  ElimType,
  Elim1,
  Elim2,
  Equality,
};

std::string_view rule_name(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);

class ProofScript;

struct LabelSplit {
  std::vector<std::string> left;
  std::vector<std::string> right;
  friend bool operator==(const LabelSplit&, const LabelSplit&) = default;
};

// One rule instance with its payload. Which fields are meaningful depends on
// the rule:
//   Axiom, Weakening    name = label, formula
//   Application         split (optional)
//   Abstraction         name = label
//   Promotion           labels = inner hypothesis labels, one per premise;
//                       children = premises followed by the inner proof
//   Contraction         name = label
//   IntroType           name = type variable
//   Intro1              name = variable, type
//   Intro2              name = predicate variable, kind
//   ElimType            type
//   Elim1               term
//   Elim2               labels = parameters, formula = Q
//   Equality            name = hole variable, type, formula = Q, lhs, rhs,
//                       backward, trace
struct ProofNode {
  Rule rule = Rule::Axiom;
  std::string name;
  Formula formula;
  Type type;
  std::vector<Type> kind;
  Term term;
  std::vector<std::string> labels;
  std::optional<LabelSplit> split;
  Term lhs;
  Term rhs;
  // The trace proves rhs = lhs instead of lhs = rhs.
  bool backward = false;
  Trace trace;
  std::vector<ProofScript> children;
  // Name of the stored proof this subtree was copied from, if any. Only a
  // printing hint; ignored by ==.
  std::string origin;
};

class ProofScript {
 public:
  ProofScript() = default;
  explicit ProofScript(ProofNode node)
      : node_(std::make_shared<const ProofNode>(std::move(node))) {}

  const ProofNode& node() const { return *node_; }
  const ProofNode* operator->() const { return node_.get(); }
  bool is_null() const { return node_ == nullptr; }
  const void* identity() const { return node_.get(); }
  std::size_t size() const;

  // Same proof, remembered as a copy of the stored proof `name`.
  ProofScript with_origin(const std::string& name) const;

  friend bool operator==(const ProofScript& a, const ProofScript& b);

 private:
  std::shared_ptr<const ProofNode> node_;
};

// Constructors for each rule.
namespace rules {
ProofScript axiom(const std::string& label, const Formula& p);
ProofScript weakening(const std::string& label, const Formula& p,
                      const ProofScript& child);
ProofScript application(const ProofScript& fn, const ProofScript& arg,
                        std::optional<LabelSplit> split = std::nullopt);
ProofScript abstraction(const std::string& label, const ProofScript& child);
ProofScript promotion(
    const std::vector<std::pair<std::string, ProofScript>>& premises,
    const ProofScript& inner);
ProofScript contraction(const std::string& label, const ProofScript& child);
ProofScript intro_type(const std::string& var, const ProofScript& child);
ProofScript intro1(const std::string& var, const Type& type,
                   const ProofScript& child);
ProofScript intro2(const std::string& var, const std::vector<Type>& kind,
                   const ProofScript& child);
ProofScript elim_type(const Type& type, const ProofScript& child);
ProofScript elim1(const Term& term, const ProofScript& child);
ProofScript elim2(const std::vector<std::string>& params, const Formula& q,
                  const ProofScript& child);
ProofScript equality(const std::string& hole, const Type& type,
                     const Formula& q, const Term& lhs, const Term& rhs,
                     bool backward, const Trace& trace,
                     const ProofScript& child);
}  // namespace rules

struct Hypothesis {
  std::string label;
  Formula formula;
};

struct Sequent {
  Context gamma;  // without the signature
  std::vector<Hypothesis> delta;
  Term term;
  Formula goal;
};

struct Derivation {
  Rule rule;
  Sequent sequent;
  std::vector<Derivation> children;
  ProofScript script;
};

struct CheckOptions {
  Signature signature = standard_signature();
  Equations equations = standard_equations();
  // Type-check the extracted term of every node against the projection of
  // its formula in the starred context.
  bool check_extraction = true;
};

struct CheckedProof {
  Derivation root;
  Signature signature;
  const Formula& conclusion() const { return root.sequent.goal; }
  const Term& term() const { return root.sequent.term; }
};

// Validates the script in the given variable context (empty by default) and
// returns the annotated derivation.
CheckedProof check_proof(const ProofScript& script,
                         const CheckOptions& options = {},
                         const Context& gamma = {});

// Hole substitution for the equality rule: requires P1 == Q[t1/x] up to
// alpha/beta and returns Q[t2/x]. Throws HoleMismatch.
Formula apply_equality(const Formula& p1, const Formula& q,
                       const std::string& x, const Term& t1, const Term& t2);

// The typing context of the extracted term at a node: the starred context
// of Sigma, Gamma followed by label : P- for each hypothesis.
Context extraction_context(const Signature& sigma, const Sequent& s);

// Renames binders inside the script (variables introduced by the
// quantifier rules, labels bound by abstraction and promotion, local names
// of equality and second-order elimination payloads) so that none of them
// is in `avoid`. Free names are left alone.
ProofScript freshen(const ProofScript& script,
                    const std::set<std::string>& avoid);

std::string to_string(const Sequent& s);

}  // namespace elx

#endif  // ELX_PROOF_HPP_
