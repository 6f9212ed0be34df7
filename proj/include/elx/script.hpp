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

// Text format for proof scripts.
//
//   # comment
//   signature { 0 : nat; s : nat -> nat; }          optional
//   equations { plus_zero : forall x:nat. Eq[nat](plus x 0, x); }   optional
//   formula Step := forall y:nat. N(y) -o N(s y);
//   proof succ : $Step := (intro1 y {nat} ...);
//
// Rule trees are parenthesized; payloads go in braces:
//
//   (axiom L {F})                  (weakening L {F} P)
//   (application P Q)              (application [l.. | r..] P Q)
//   (abstraction L P)              (contraction L P)
//   (promotion [l1 .. ln] P1 .. Pn Inner)
//   (intro-type a P)               (elim-type {T} P)
//   (intro1 x {T} P)               (elim1 {t} P)
//   (intro2 X {T1, .., Tn} P)      (elim2 {y1 .. yn | Q} P)
//   (equality {x : T | Q} {t1} {t2} -> TRACE P)     '<-' for backward
//   (use NAME)                     a copy of an earlier proof
//
// Traces:
//
//   (refl)  (beta -> [pos])  (axiom NAME -> [pos] {x := t, ..})
//   (sym T)  (trans T1 .. Tn)  (cong [pos] T)  (ext x T)

#ifndef ELX_SCRIPT_HPP_
#define ELX_SCRIPT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elx/proof.hpp"

namespace elx {

struct ScriptProof {
  std::string name;
  Formula statement;
  ProofScript proof;
  friend bool operator==(const ScriptProof&, const ScriptProof&) = default;
};

struct ScriptFile {
  std::optional<Signature> signature;
  std::optional<Equations> equations;
  std::vector<std::pair<std::string, Formula>> formulas;
  std::vector<ScriptProof> proofs;

  const Signature& effective_signature() const;
  const Equations& effective_equations() const;
  const ScriptProof* find_proof(const std::string& name) const;

  friend bool operator==(const ScriptFile&, const ScriptFile&) = default;
};

// Throws SyntaxError with "line:column" in the message.
ScriptFile parse_script(std::string_view text);
Type parse_type(std::string_view text);
Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);
ProofScript parse_proof(std::string_view text);
Trace parse_trace(std::string_view text);

std::string print_script(const ScriptFile& file);
// `known` lists proofs that (use NAME) may refer to.
std::string print_proof(const ProofScript& proof,
                        const std::vector<ScriptProof>& known = {});
std::string print_trace(const Trace& trace);

}  // namespace elx

#endif  // ELX_SCRIPT_HPP_
