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

// Projections out of the logic: formulas to System F types (P-) and to
// elementary affine types (P°), contexts to their starred and minus forms,
// and typed terms to untyped lambda terms.

#ifndef ELX_PROJECTIONS_HPP_
#define ELX_PROJECTIONS_HPP_

#include <memory>
#include <set>
#include <string>

#include "elx/syntax.hpp"
#include "elx/wellformed.hpp"

namespace elx {

// ---------------------------------------------------------------------------
// Elementary affine types: a | A -o B | !A | forall a. A (locally nameless).

enum class EalKind { Var, Bound, Arrow, Bang, Forall };

class EalType {
 public:
  EalType() = default;

  static EalType var(std::string name);
  static EalType bound(int index);
  static EalType arrow(EalType from, EalType to);
  static EalType bang(EalType body);
  static EalType forall_raw(std::string hint, EalType body);

  EalKind kind() const;
  const std::string& name() const;
  int index() const;
  const EalType& from() const;
  const EalType& to() const;
  const EalType& body() const;

  bool is_null() const { return node_ == nullptr; }
  std::size_t size() const;

  friend bool operator==(const EalType& a, const EalType& b);

 private:
  struct Node;
  explicit EalType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

EalType eal_forall(const std::string& var, const EalType& body);
// Instantiates the outermost binder of a Forall.
EalType instantiate(const EalType& forall, const EalType& value);
std::set<std::string> free_type_vars(const EalType& t);
// forall a. !(a -o a) -o !(a -o a)
EalType eal_nat();
std::string to_string(const EalType& t);

// ---------------------------------------------------------------------------
// Untyped lambda terms: de Bruijn indices for bound variables, names for
// free ones.

enum class PureKind { Var, Free, Lam, App };

class PureTerm {
 public:
  PureTerm() = default;

  static PureTerm var(int index);
  static PureTerm free(std::string name);
  static PureTerm lam(std::string hint, PureTerm body);
  static PureTerm app(PureTerm fn, PureTerm arg);

  PureKind kind() const;
  int index() const;
  const std::string& name() const;  // Free: the name; Lam: the hint
  const PureTerm& body() const;
  const PureTerm& fn() const;
  const PureTerm& arg() const;

  bool is_null() const { return node_ == nullptr; }
  std::size_t size() const;
  // Smallest n such that the term is closed under n binders.
  int loose() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const PureTerm& a, const PureTerm& b);

 private:
  struct Node;
  explicit PureTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Binds the free name `var`.
PureTerm pure_lam(const std::string& var, const PureTerm& body);
PureTerm pure_app(const PureTerm& fn, const std::vector<PureTerm>& args);
// (lam. body) value -> body[value/0], with index adjustment.
PureTerm instantiate(const PureTerm& lam, const PureTerm& value);
PureTerm shift(const PureTerm& t, int by, int cutoff = 0);
PureTerm subst(const PureTerm& t, const std::string& var, const PureTerm& value);
std::set<std::string> free_vars(const PureTerm& t);
bool is_normal(const PureTerm& t);
std::string to_string(const PureTerm& t);

// ---------------------------------------------------------------------------
// The projections.

Type minus_proj(const Formula& p);
EalType circle_proj(const Formula& p);
// Adds alpha_X : Type after each predicate variable X.
Context gamma_star(const Context& ctx);
// Replaces each X : [T..] by alpha_X : Type, X : [T.., alpha_X].
Context gamma_minus(const Context& ctx);
PureTerm erase(const Term& t);

}  // namespace elx

#endif  // ELX_PROJECTIONS_HPP_
