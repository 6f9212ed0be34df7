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

// Contexts and the well-formedness judgements for types, terms and formulas.

#ifndef ELX_WELLFORMED_HPP_
#define ELX_WELLFORMED_HPP_

#include <memory>
#include <string>
#include <vector>

#include "elx/syntax.hpp"

namespace elx {

enum class EntryKind { TypeVar, TermVar, PredVar };

struct ContextEntry {
  EntryKind kind;
  std::string name;
  Type type;                    // TermVar
  std::vector<Type> pred_kind;  // PredVar
};

// An ordered list of declarations. Lookups find the rightmost entry.
// Extension shares the prefix, so with_* is constant time.
class Context {
 public:
  Context() = default;

  Context& add_type_var(const std::string& name);
  Context& add_term_var(const std::string& name, const Type& type);
  Context& add_pred_var(const std::string& name, const std::vector<Type>& kind);
  Context& append(const Context& other);

  Context with_type_var(const std::string& name) const;
  Context with_term_var(const std::string& name, const Type& type) const;
  Context with_pred_var(const std::string& name,
                        const std::vector<Type>& kind) const;

  const ContextEntry* find(EntryKind kind, const std::string& name) const;
  bool has_type_var(const std::string& name) const {
    return find(EntryKind::TypeVar, name) != nullptr;
  }
  // True if `name` is declared with any sort.
  bool declares(const std::string& name) const;

  // Entries in declaration order.
  std::vector<ContextEntry> entries() const;
  std::size_t size() const { return last_ ? last_->size : 0; }

  friend bool operator==(const Context& a, const Context& b);

 private:
  struct Link {
    ContextEntry entry;
    std::shared_ptr<const Link> prev;
    std::size_t size;
  };
  void push(ContextEntry entry);
  std::shared_ptr<const Link> last_;
};

// A signature is a context of term constants.
using Signature = Context;

// 0 : nat, s : nat -> nat, pred : nat -> nat, plus mult minus : nat -> nat ->
// nat, sum prod : (nat -> nat) -> nat -> nat.
const Signature& standard_signature();

// Gamma |- ok. Throws DuplicateName or IllFormedEntryType.
void check_context(const Context& ctx);
// Gamma |- T : Type. Throws UnboundTypeVariable.
void check_type(const Context& ctx, const Type& t);
// Gamma |- t : ?. Throws UnboundVariable, ApplicationMismatch,
// TypeApplicationMismatch or UnboundTypeVariable.
Type infer_type(const Context& ctx, const Term& t);
// Gamma |- t : T, with the expected type compared up to alpha.
void check_term(const Context& ctx, const Term& t, const Type& expected);
// Gamma |- P : Prop. Throws UnboundPredicate, AtomArityMismatch,
// AtomArgumentType and the term/type errors above.
void check_formula(const Context& ctx, const Formula& p);

std::string to_string(const Context& ctx);

}  // namespace elx

#endif  // ELX_WELLFORMED_HPP_
