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

// Equational theories and checkable rewrite traces. A trace is evidence
// that two terms are equal in the congruence generated by the equations of
// the theory, beta conversion and extensionality.

#ifndef ELX_REWRITE_HPP_
#define ELX_REWRITE_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elx/syntax.hpp"
#include "elx/wellformed.hpp"

namespace elx {

// forall params. lhs =_type rhs. The parameters occur free in lhs and rhs.
struct Equation {
  std::string name;
  std::vector<std::pair<std::string, Type>> params;
  Type type;
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation& a, const Equation& b);
};

using Equations = std::vector<Equation>;

Formula equation_formula(const Equation& eq);
// Reads forall x1:T1 ... xn:Tn. Eq[T](l, r). Throws IllFormedPayload.
Equation equation_from_formula(const std::string& name, const Formula& p);

// The fourteen defining equations of 0, s, plus, mult, pred, minus, sum and
// prod over Church numerals.
const Equations& standard_equations();
const Equation* find_equation(const Equations& eqs, const std::string& name);
// Names of the two equations that define 0 and s as Church numerals.
bool is_constructor_definition(const std::string& name);

// A path of child indices. App: 0 function, 1 argument. TyApp, Lam, TyLam:
// 0 is the only child.
using Position = std::vector<int>;

enum class TraceKind { Refl, Axiom, Beta, Sym, Trans, Cong, Ext };

struct Trace {
  TraceKind kind = TraceKind::Refl;
  std::string equation;  // Axiom
  // Axiom: explicit instance values; the rest is found by matching.
  std::vector<std::pair<std::string, Term>> instance;
  // Axiom: use the equation right to left. Beta: an expansion.
  bool reversed = false;
  Position position;     // Axiom, Beta, Cong
  std::string var;       // Ext
  std::vector<Trace> steps;  // Sym, Cong, Ext: one; Trans: any number

  static Trace refl();
  static Trace axiom(std::string equation, bool reversed = false,
                     Position position = {},
                     std::vector<std::pair<std::string, Term>> instance = {});
  static Trace beta(Position position = {}, bool expansion = false);
  static Trace sym(Trace t);
  static Trace trans(std::vector<Trace> steps);
  static Trace cong(Position position, Trace t);
  static Trace ext(std::string var, Trace t);

  friend bool operator==(const Trace& a, const Trace& b);
};

// Number of nodes; step indices in errors count nodes in pre-order.
int trace_size(const Trace& t);

// Checks that `trace` proves t1 = t2 at `type`. `ctx` holds the signature
// and all variables in scope. Throws StepMismatch, IllTypedInstance,
// NonFreshExtensionVariable or PositionOutOfRange.
void verify_trace(const Context& ctx, const Equations& eqs, const Type& type,
                  const Term& t1, const Term& t2, const Trace& trace);

// Computes the right-hand side proved by a forward-synthesizable trace.
Term rewrite_forward(const Context& ctx, const Equations& eqs, const Term& t,
                     const Trace& trace);

// Subterm at a position (binders along the way are opened with fresh names).
Term subterm_at(const Term& t, const Position& pos);

// Leftmost-outermost rewriting with beta and the left-to-right orientation
// of the given equations (by default all standard equations except the two
// constructor definitions).
Term normalize_with_equations(const Term& t, const Equations& eqs,
                              std::uint64_t fuel = kDefaultFuel);
Term normalize_with_h0(const Term& t, std::uint64_t fuel = kDefaultFuel);

std::string to_string(const Position& pos);

}  // namespace elx

#endif  // ELX_REWRITE_HPP_
