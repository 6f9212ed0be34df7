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

// Types, terms and formulas of the second-order logic over System F.
//
// All three sorts use a locally nameless representation: variables bound by
// a binder inside the expression are de Bruijn indices (one index space per
// variable sort), free variables are names. Binders keep the name they were
// written with as a printing hint only, so operator== is alpha-equivalence.
//
// Index spaces:
//   type variables       bound by Type::Forall, Term::TyLam, Formula::ForallType
//   term variables       bound by Term::Lam, Formula::Forall1
//   predicate variables  bound by Formula::Forall2

#ifndef ELX_SYNTAX_HPP_
#define ELX_SYNTAX_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace elx {

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;

// The type variable alpha_X paired with predicate variable X. User type
// variables cannot start with '@', so these never collide with them.
std::string alpha_of(const std::string& predicate);
bool is_alpha_name(const std::string& name);

// Returns a name that has never been returned before in this process. Such
// names start with '%' and are only used while a binder is opened.
std::string fresh_name();

// ---------------------------------------------------------------------------
// Types

enum class TypeKind { Var, Bound, Forall, Arrow };

class Type {
 public:
  Type() = default;

  static Type var(std::string name);
  static Type bound(int index);
  // `body` refers to the new binder with index 0.
  static Type forall_raw(std::string hint, Type body);
  static Type arrow(Type from, Type to);

  TypeKind kind() const;
  // Var: the name. Forall: the binder hint.
  const std::string& name() const;
  int index() const;
  const Type& body() const;
  const Type& from() const;
  const Type& to() const;

  bool is_null() const { return node_ == nullptr; }
  std::size_t size() const;
  // Smallest n such that the type is closed under n type binders.
  int loose() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Type forall_type(const std::string& var, const Type& body);
Type arrow(const Type& from, const Type& to);
Type arrows(const std::vector<Type>& from, const Type& to);
Type tvar(const std::string& name);

// Instantiates the outermost binder of `forall` (which must be a Forall).
Type instantiate(const Type& forall, const Type& value);
Type subst(const Type& t, const std::string& var, const Type& value);
std::set<std::string> free_type_vars(const Type& t);

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Var, Bound, App, TyApp, Lam, TyLam };

class Term {
 public:
  Term() = default;

  static Term var(std::string name);
  static Term bound(int index);
  static Term app(Term fn, Term arg);
  static Term tyapp(Term fn, Type arg);
  static Term lam_raw(std::string hint, Type domain, Term body);
  static Term tylam_raw(std::string hint, Term body);

  TermKind kind() const;
  const std::string& name() const;
  int index() const;
  const Term& fn() const;    // App, TyApp
  const Term& arg() const;   // App
  const Type& type() const;  // TyApp argument, Lam domain
  const Term& body() const;  // Lam, TyLam

  bool is_null() const { return node_ == nullptr; }
  std::size_t size() const;
  int loose_terms() const;
  int loose_types() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Term var(const std::string& name);
Term app(const Term& fn, const Term& arg);
Term app(const Term& fn, const std::vector<Term>& args);
Term tyapp(const Term& fn, const Type& arg);
Term lam(const std::string& var, const Type& domain, const Term& body);
Term tylam(const std::string& var, const Term& body);

// Instantiate the binder of a Lam / TyLam node.
Term instantiate(const Term& lam, const Term& value);
Term instantiate(const Term& tylam, const Type& value);
// Opens the binder of a Lam or TyLam with a free name.
Term open_with(const Term& binder, const std::string& name);

Term subst(const Term& t, const std::string& var, const Term& value);
Term subst(const Term& t, const std::map<std::string, Term>& values);
Term subst_type(const Term& t, const std::string& var, const Type& value);

std::set<std::string> free_term_vars(const Term& t);
std::set<std::string> free_type_vars(const Term& t);
bool is_locally_closed(const Term& t);

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind { Atom, Lolli, Bang, Forall1, Forall2, ForallType };

class Formula {
 public:
  Formula() = default;

  // An atom on a free predicate variable.
  static Formula atom(std::string predicate, std::vector<Term> args);
  // An atom on a bound predicate variable.
  static Formula bound_atom(int index, std::vector<Term> args);
  static Formula lolli(Formula lhs, Formula rhs);
  static Formula bang(Formula body);
  static Formula forall1_raw(std::string hint, Type type, Formula body);
  static Formula forall2_raw(std::string hint, std::vector<Type> kind,
                             Formula body);
  static Formula forall_type_raw(std::string hint, Formula body);

  FormulaKind kind() const;
  // Atom on free predicate: the name. Binders: the hint.
  const std::string& name() const;
  // Atom on bound predicate: the index; -1 for free predicates.
  int index() const;
  bool is_bound_atom() const { return index() >= 0; }
  const std::vector<Term>& args() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const;             // Bang and the three binders
  const Type& type() const;                // Forall1
  const std::vector<Type>& pred_kind() const;  // Forall2

  bool is_null() const { return node_ == nullptr; }
  std::size_t size() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula atom(const std::string& predicate, const std::vector<Term>& args = {});
Formula lolli(const Formula& lhs, const Formula& rhs);
Formula bang(const Formula& body, int times = 1);
Formula forall1(const std::string& var, const Type& type, const Formula& body);
Formula forall2(const std::string& var, const std::vector<Type>& kind,
                const Formula& body);
Formula forall_type(const std::string& var, const Formula& body);

// Opening binders of a formula with free names.
Formula open_with(const Formula& binder, const std::string& name);
// Instantiates the outermost Forall1 / ForallType binder.
Formula instantiate(const Formula& forall1, const Term& value);
Formula instantiate(const Formula& forall_type, const Type& value);

// Closing: turns the free variable `name` into the bound variable of a new
// outermost binder. The binder itself is not added; the *_raw constructors
// take the result.
Formula close_term_var(const Formula& p, const std::string& name);
Formula close_type_var(const Formula& p, const std::string& name);
Formula close_pred_var(const Formula& p, const std::string& name);
Term close_term_var(const Term& t, const std::string& name);
Term close_type_var(const Term& t, const std::string& name);
Type close_type_var(const Type& t, const std::string& name);

Formula subst(const Formula& p, const std::string& var, const Term& value);
Formula subst_type(const Formula& p, const std::string& var,
                   const Type& value);
// P[Q / X params]: every atom X(t1..tn) becomes Q[t1/x1..tn/xn].
Formula subst_pred(const Formula& p, const std::string& predicate,
                   const std::vector<std::string>& params, const Formula& q);
// Adds the given amounts to every loose index (negative amounts require that
// no loose index would drop below zero).
Formula shift_formula(const Formula& p, int by_tm, int by_ty, int by_pr);
// Renames a free predicate variable (and its paired alpha type variable).
Formula rename_pred(const Formula& p, const std::string& from,
                    const std::string& to);

std::set<std::string> free_term_vars(const Formula& p);
std::set<std::string> free_type_vars(const Formula& p);
std::set<std::string> free_pred_vars(const Formula& p);
bool is_locally_closed(const Formula& p);

// ---------------------------------------------------------------------------
// Beta reduction of terms and of the terms embedded in formulas.

// One leftmost-outermost step, or nullopt if in normal form.
std::optional<Term> beta_step(const Term& t);
std::optional<Formula> beta_step(const Formula& p);
// Leftmost-outermost normal form. Throws FuelExhausted after `fuel` steps.
Term beta_normalize(const Term& t, std::uint64_t fuel = kDefaultFuel);
Formula beta_normalize(const Formula& p, std::uint64_t fuel = kDefaultFuel);
// Leftmost-innermost strategy; used to cross-check confluence.
Term beta_normalize_innermost(const Term& t, std::uint64_t fuel = kDefaultFuel);
bool is_beta_normal(const Term& t);

// Alpha-equivalence up to beta of the embedded terms.
bool beta_equivalent(const Term& a, const Term& b);
bool beta_equivalent(const Formula& a, const Formula& b);

// ---------------------------------------------------------------------------
// Printing. Bound variables are shown with their hints, primed when needed
// to avoid capture.

std::string to_string(const Type& t);
std::string to_string(const Term& t);
std::string to_string(const Formula& p);

}  // namespace elx

#endif  // ELX_SYNTAX_HPP_
