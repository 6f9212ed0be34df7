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

#include "elx/projections.hpp"

#include <algorithm>
#include <vector>

#include "elx/error.hpp"

namespace elx {

// ---------------------------------------------------------------------------
// EalType

struct EalType::Node {
  EalKind kind;
  std::string name;
  int index = -1;
  EalType a, b;
  std::size_t size = 1;
};

EalType EalType::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = EalKind::Var;
  n->name = std::move(name);
  return EalType(std::move(n));
}

EalType EalType::bound(int index) {
  auto n = std::make_shared<Node>();
  n->kind = EalKind::Bound;
  n->index = index;
  return EalType(std::move(n));
}

EalType EalType::arrow(EalType from, EalType to) {
  auto n = std::make_shared<Node>();
  n->kind = EalKind::Arrow;
  n->size = 1 + from.size() + to.size();
  n->a = std::move(from);
  n->b = std::move(to);
  return EalType(std::move(n));
}

EalType EalType::bang(EalType body) {
  auto n = std::make_shared<Node>();
  n->kind = EalKind::Bang;
  n->size = 1 + body.size();
  n->a = std::move(body);
  return EalType(std::move(n));
}

EalType EalType::forall_raw(std::string hint, EalType body) {
  auto n = std::make_shared<Node>();
  n->kind = EalKind::Forall;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->a = std::move(body);
  return EalType(std::move(n));
}

EalKind EalType::kind() const { return node_->kind; }
const std::string& EalType::name() const { return node_->name; }
int EalType::index() const { return node_->index; }
const EalType& EalType::from() const { return node_->a; }
const EalType& EalType::to() const { return node_->b; }
const EalType& EalType::body() const { return node_->a; }
std::size_t EalType::size() const { return node_ ? node_->size : 0; }

bool operator==(const EalType& x, const EalType& y) {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  if (x.kind() != y.kind() || x.size() != y.size()) return false;
  switch (x.kind()) {
    case EalKind::Var:
      return x.name() == y.name();
    case EalKind::Bound:
      return x.index() == y.index();
    case EalKind::Arrow:
      return x.from() == y.from() && x.to() == y.to();
    case EalKind::Bang:
    case EalKind::Forall:
      return x.body() == y.body();
  }
  return false;
}

namespace {

EalType close_eal(const EalType& t, const std::string& name, int depth) {
  switch (t.kind()) {
    case EalKind::Var:
      return t.name() == name ? EalType::bound(depth) : t;
    case EalKind::Bound:
      return t;
    case EalKind::Arrow:
      return EalType::arrow(close_eal(t.from(), name, depth),
                            close_eal(t.to(), name, depth));
    case EalKind::Bang:
      return EalType::bang(close_eal(t.body(), name, depth));
    case EalKind::Forall:
      return EalType::forall_raw(t.name(), close_eal(t.body(), name, depth + 1));
  }
  return t;
}

// Values substituted into EAL types are always closed, so no shifting.
EalType inst_eal(const EalType& t, int depth, const EalType& value) {
  switch (t.kind()) {
    case EalKind::Var:
      return t;
    case EalKind::Bound:
      if (t.index() == depth) return value;
      if (t.index() > depth) return EalType::bound(t.index() - 1);
      return t;
    case EalKind::Arrow:
      return EalType::arrow(inst_eal(t.from(), depth, value),
                            inst_eal(t.to(), depth, value));
    case EalKind::Bang:
      return EalType::bang(inst_eal(t.body(), depth, value));
    case EalKind::Forall:
      return EalType::forall_raw(t.name(), inst_eal(t.body(), depth + 1, value));
  }
  return t;
}

void collect_eal_vars(const EalType& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case EalKind::Var:
      out.insert(t.name());
      break;
    case EalKind::Bound:
      break;
    case EalKind::Arrow:
      collect_eal_vars(t.from(), out);
      collect_eal_vars(t.to(), out);
      break;
    case EalKind::Bang:
    case EalKind::Forall:
      collect_eal_vars(t.body(), out);
      break;
  }
}

std::string pick_name(const std::string& hint, const std::string& dflt,
                      const std::set<std::string>& avoid,
                      const std::vector<std::string>& env) {
  std::string base = hint.empty() || hint[0] == '%' ? dflt : hint;
  std::string n = base;
  while (avoid.count(n) || std::find(env.begin(), env.end(), n) != env.end()) {
    n += "'";
  }
  return n;
}

std::string env_lookup(const std::vector<std::string>& env, int index) {
  if (index < 0 || index >= static_cast<int>(env.size())) {
    return "^" + std::to_string(index);
  }
  return env[env.size() - 1 - index];
}

std::string print_eal(const EalType& t, int prec, const std::set<std::string>& free,
                      std::vector<std::string>& env) {
  switch (t.kind()) {
    case EalKind::Var:
      return t.name();
    case EalKind::Bound:
      return env_lookup(env, t.index());
    case EalKind::Arrow: {
      std::string s = print_eal(t.from(), 1, free, env) + " -o " +
                      print_eal(t.to(), 0, free, env);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case EalKind::Bang:
      return "!" + print_eal(t.body(), 1, free, env);
    case EalKind::Forall: {
      if (t == eal_nat()) return "Nat";
      std::string n = pick_name(t.name(), "a", free, env);
      env.push_back(n);
      std::string s = "forall " + n + ". " + print_eal(t.body(), 0, free, env);
      env.pop_back();
      return prec > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

EalType eal_forall(const std::string& v, const EalType& body) {
  return EalType::forall_raw(v, close_eal(body, v, 0));
}

EalType instantiate(const EalType& forall, const EalType& value) {
  if (forall.kind() != EalKind::Forall) {
    fail(ErrorCode::PreconditionViolation, "instantiate: not a quantifier");
  }
  return inst_eal(forall.body(), 0, value);
}

std::set<std::string> free_type_vars(const EalType& t) {
  std::set<std::string> out;
  collect_eal_vars(t, out);
  return out;
}

EalType eal_nat() {
  static const EalType nat = [] {
    EalType a = EalType::var("a");
    EalType endo = EalType::bang(EalType::arrow(a, a));
    return eal_forall("a", EalType::arrow(endo, endo));
  }();
  return nat;
}

std::string to_string(const EalType& t) {
  if (t.is_null()) return "<null>";
  std::vector<std::string> env;
  return print_eal(t, 0, free_type_vars(t), env);
}

// ---------------------------------------------------------------------------
// PureTerm

struct PureTerm::Node {
  PureKind kind;
  int index = -1;
  std::string name;
  PureTerm a, b;
  std::size_t size = 1;
  int loose = 0;
};

PureTerm PureTerm::var(int index) {
  auto n = std::make_shared<Node>();
  n->kind = PureKind::Var;
  n->index = index;
  n->loose = index + 1;
  return PureTerm(std::move(n));
}

PureTerm PureTerm::free(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = PureKind::Free;
  n->name = std::move(name);
  return PureTerm(std::move(n));
}

PureTerm PureTerm::lam(std::string hint, PureTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = PureKind::Lam;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->loose = body.loose() > 0 ? body.loose() - 1 : 0;
  n->a = std::move(body);
  return PureTerm(std::move(n));
}

PureTerm PureTerm::app(PureTerm fn, PureTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = PureKind::App;
  n->size = 1 + fn.size() + arg.size();
  n->loose = std::max(fn.loose(), arg.loose());
  n->a = std::move(fn);
  n->b = std::move(arg);
  return PureTerm(std::move(n));
}

PureKind PureTerm::kind() const { return node_->kind; }
int PureTerm::index() const { return node_->index; }
const std::string& PureTerm::name() const { return node_->name; }
const PureTerm& PureTerm::body() const { return node_->a; }
const PureTerm& PureTerm::fn() const { return node_->a; }
const PureTerm& PureTerm::arg() const { return node_->b; }
std::size_t PureTerm::size() const { return node_ ? node_->size : 0; }
int PureTerm::loose() const { return node_ ? node_->loose : 0; }

bool operator==(const PureTerm& x, const PureTerm& y) {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  if (x.kind() != y.kind() || x.size() != y.size()) return false;
  switch (x.kind()) {
    case PureKind::Var:
      return x.index() == y.index();
    case PureKind::Free:
      return x.name() == y.name();
    case PureKind::Lam:
      return x.body() == y.body();
    case PureKind::App:
      return x.fn() == y.fn() && x.arg() == y.arg();
  }
  return false;
}

namespace {

PureTerm close_pure(const PureTerm& t, const std::string& name, int depth) {
  switch (t.kind()) {
    case PureKind::Var:
      return t;
    case PureKind::Free:
      return t.name() == name ? PureTerm::var(depth) : t;
    case PureKind::Lam:
      return PureTerm::lam(t.name(), close_pure(t.body(), name, depth + 1));
    case PureKind::App:
      return PureTerm::app(close_pure(t.fn(), name, depth),
                           close_pure(t.arg(), name, depth));
  }
  return t;
}

PureTerm inst_pure(const PureTerm& t, int depth, const PureTerm& value) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case PureKind::Var:
      if (t.index() == depth) return shift(value, depth);
      return PureTerm::var(t.index() - 1);
    case PureKind::Free:
      return t;
    case PureKind::Lam:
      return PureTerm::lam(t.name(), inst_pure(t.body(), depth + 1, value));
    case PureKind::App:
      return PureTerm::app(inst_pure(t.fn(), depth, value),
                           inst_pure(t.arg(), depth, value));
  }
  return t;
}

PureTerm subst_pure(const PureTerm& t, const std::string& v,
                    const PureTerm& value, int depth) {
  switch (t.kind()) {
    case PureKind::Var:
      return t;
    case PureKind::Free:
      return t.name() == v ? shift(value, depth) : t;
    case PureKind::Lam:
      return PureTerm::lam(t.name(), subst_pure(t.body(), v, value, depth + 1));
    case PureKind::App:
      return PureTerm::app(subst_pure(t.fn(), v, value, depth),
                           subst_pure(t.arg(), v, value, depth));
  }
  return t;
}

void collect_pure(const PureTerm& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case PureKind::Var:
      break;
    case PureKind::Free:
      out.insert(t.name());
      break;
    case PureKind::Lam:
      collect_pure(t.body(), out);
      break;
    case PureKind::App:
      collect_pure(t.fn(), out);
      collect_pure(t.arg(), out);
      break;
  }
}

std::string print_pure(const PureTerm& t, int prec,
                       const std::set<std::string>& free,
                       std::vector<std::string>& env) {
  switch (t.kind()) {
    case PureKind::Var:
      return env_lookup(env, t.index());
    case PureKind::Free:
      return t.name();
    case PureKind::Lam: {
      std::string n = pick_name(t.name(), "x", free, env);
      env.push_back(n);
      std::string s = "fun " + n + ". " + print_pure(t.body(), 0, free, env);
      env.pop_back();
      return prec > 0 ? "(" + s + ")" : s;
    }
    case PureKind::App: {
      std::string s = print_pure(t.fn(), 1, free, env) + " " +
                      print_pure(t.arg(), 2, free, env);
      return prec > 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

PureTerm pure_lam(const std::string& v, const PureTerm& body) {
  return PureTerm::lam(v, close_pure(body, v, 0));
}

PureTerm pure_app(const PureTerm& fn, const std::vector<PureTerm>& args) {
  PureTerm t = fn;
  for (const PureTerm& a : args) t = PureTerm::app(t, a);
  return t;
}

PureTerm instantiate(const PureTerm& lam, const PureTerm& value) {
  return inst_pure(lam.body(), 0, value);
}

PureTerm shift(const PureTerm& t, int by, int cutoff) {
  if (by == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case PureKind::Var:
      return PureTerm::var(t.index() + by);
    case PureKind::Free:
      return t;
    case PureKind::Lam:
      return PureTerm::lam(t.name(), shift(t.body(), by, cutoff + 1));
    case PureKind::App:
      return PureTerm::app(shift(t.fn(), by, cutoff), shift(t.arg(), by, cutoff));
  }
  return t;
}

PureTerm subst(const PureTerm& t, const std::string& v, const PureTerm& value) {
  return subst_pure(t, v, value, 0);
}

std::set<std::string> free_vars(const PureTerm& t) {
  std::set<std::string> out;
  collect_pure(t, out);
  return out;
}

bool is_normal(const PureTerm& t) {
  switch (t.kind()) {
    case PureKind::Var:
    case PureKind::Free:
      return true;
    case PureKind::Lam:
      return is_normal(t.body());
    case PureKind::App:
      return t.fn().kind() != PureKind::Lam && is_normal(t.fn()) &&
             is_normal(t.arg());
  }
  return true;
}

std::string to_string(const PureTerm& t) {
  if (t.is_null()) return "<null>";
  std::vector<std::string> env;
  return print_pure(t, 0, free_vars(t), env);
}

// ---------------------------------------------------------------------------
// Projections

namespace {

Type minus_rec(const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Atom:
      return p.is_bound_atom() ? Type::bound(p.index())
                               : tvar(alpha_of(p.name()));
    case FormulaKind::Lolli:
      return arrow(minus_rec(p.lhs()), minus_rec(p.rhs()));
    case FormulaKind::Bang:
    case FormulaKind::Forall1:
    case FormulaKind::ForallType:
      return minus_rec(p.body());
    case FormulaKind::Forall2:
      return Type::forall_raw(alpha_of(p.name()), minus_rec(p.body()));
  }
  return Type();
}

EalType circle_rec(const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Atom:
      return p.is_bound_atom() ? EalType::bound(p.index())
                               : EalType::var(alpha_of(p.name()));
    case FormulaKind::Lolli:
      return EalType::arrow(circle_rec(p.lhs()), circle_rec(p.rhs()));
    case FormulaKind::Bang:
      return EalType::bang(circle_rec(p.body()));
    case FormulaKind::Forall1:
    case FormulaKind::ForallType:
      return circle_rec(p.body());
    case FormulaKind::Forall2:
      return EalType::forall_raw(alpha_of(p.name()), circle_rec(p.body()));
  }
  return EalType();
}

}  // namespace

// The predicate binders of P are exactly the type binders of P- and P°, so
// bound predicate indices carry over unchanged.
Type minus_proj(const Formula& p) { return minus_rec(p); }
EalType circle_proj(const Formula& p) { return circle_rec(p); }

Context gamma_star(const Context& ctx) {
  Context out;
  for (const ContextEntry& e : ctx.entries()) {
    switch (e.kind) {
      case EntryKind::TypeVar:
        out.add_type_var(e.name);
        break;
      case EntryKind::TermVar:
        out.add_term_var(e.name, e.type);
        break;
      case EntryKind::PredVar:
        out.add_type_var(alpha_of(e.name));
        break;
    }
  }
  return out;
}

Context gamma_minus(const Context& ctx) {
  Context out;
  for (const ContextEntry& e : ctx.entries()) {
    switch (e.kind) {
      case EntryKind::TypeVar:
        out.add_type_var(e.name);
        break;
      case EntryKind::TermVar:
        out.add_term_var(e.name, e.type);
        break;
      case EntryKind::PredVar: {
        std::vector<Type> kind = e.pred_kind;
        kind.push_back(tvar(alpha_of(e.name)));
        out.add_type_var(alpha_of(e.name));
        out.add_pred_var(e.name, kind);
        break;
      }
    }
  }
  return out;
}

PureTerm erase(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
      return PureTerm::free(t.name());
    case TermKind::Bound:
      return PureTerm::var(t.index());
    case TermKind::App:
      return PureTerm::app(erase(t.fn()), erase(t.arg()));
    case TermKind::TyApp:
      return erase(t.fn());
    case TermKind::Lam:
      return PureTerm::lam(t.name(), erase(t.body()));
    case TermKind::TyLam:
      return erase(t.body());
  }
  return PureTerm();
}

}  // namespace elx
