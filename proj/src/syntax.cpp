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

#include "elx/syntax.hpp"

#include <algorithm>
#include <atomic>

#include "elx/error.hpp"

namespace elx {

std::string alpha_of(const std::string& predicate) { return "@" + predicate; }

bool is_alpha_name(const std::string& name) {
  return !name.empty() && name[0] == '@';
}

std::string fresh_name() {
  static std::atomic<std::uint64_t> counter{0};
  return "%" + std::to_string(counter.fetch_add(1));
}

// ---------------------------------------------------------------------------
// Nodes

struct Type::Node {
  TypeKind kind;
  std::string name;
  int index = -1;
  Type a, b;
  std::size_t size = 1;
  int loose = 0;
};

struct Term::Node {
  TermKind kind;
  std::string name;
  int index = -1;
  Term a, b;
  Type ty;
  std::size_t size = 1;
  int loose_tm = 0;
  int loose_ty = 0;
};

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  int index = -1;
  std::vector<Term> args;
  Formula a, b;
  Type ty;
  std::vector<Type> kinds;
  std::size_t size = 1;
};

namespace {

int below(int loose) { return loose > 0 ? loose - 1 : 0; }

}  // namespace

Type Type::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Var;
  n->name = std::move(name);
  return Type(std::move(n));
}

Type Type::bound(int index) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Bound;
  n->index = index;
  n->loose = index + 1;
  return Type(std::move(n));
}

Type Type::forall_raw(std::string hint, Type body) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Forall;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->loose = below(body.loose());
  n->a = std::move(body);
  return Type(std::move(n));
}

Type Type::arrow(Type from, Type to) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Arrow;
  n->size = 1 + from.size() + to.size();
  n->loose = std::max(from.loose(), to.loose());
  n->a = std::move(from);
  n->b = std::move(to);
  return Type(std::move(n));
}

TypeKind Type::kind() const { return node_->kind; }
const std::string& Type::name() const { return node_->name; }
int Type::index() const { return node_->index; }
const Type& Type::body() const { return node_->a; }
const Type& Type::from() const { return node_->a; }
const Type& Type::to() const { return node_->b; }
std::size_t Type::size() const { return node_ ? node_->size : 0; }
int Type::loose() const { return node_ ? node_->loose : 0; }

bool operator==(const Type& x, const Type& y) {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  if (x.kind() != y.kind() || x.size() != y.size()) return false;
  switch (x.kind()) {
    case TypeKind::Var:
      return x.name() == y.name();
    case TypeKind::Bound:
      return x.index() == y.index();
    case TypeKind::Forall:
      return x.body() == y.body();
    case TypeKind::Arrow:
      return x.from() == y.from() && x.to() == y.to();
  }
  return false;
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::bound(int index) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Bound;
  n->index = index;
  n->loose_tm = index + 1;
  return Term(std::move(n));
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->size = 1 + fn.size() + arg.size();
  n->loose_tm = std::max(fn.loose_terms(), arg.loose_terms());
  n->loose_ty = std::max(fn.loose_types(), arg.loose_types());
  n->a = std::move(fn);
  n->b = std::move(arg);
  return Term(std::move(n));
}

Term Term::tyapp(Term fn, Type arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::TyApp;
  n->size = 1 + fn.size() + arg.size();
  n->loose_tm = fn.loose_terms();
  n->loose_ty = std::max(fn.loose_types(), arg.loose());
  n->a = std::move(fn);
  n->ty = std::move(arg);
  return Term(std::move(n));
}

Term Term::lam_raw(std::string hint, Type domain, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->name = std::move(hint);
  n->size = 1 + domain.size() + body.size();
  n->loose_tm = below(body.loose_terms());
  n->loose_ty = std::max(domain.loose(), body.loose_types());
  n->ty = std::move(domain);
  n->a = std::move(body);
  return Term(std::move(n));
}

Term Term::tylam_raw(std::string hint, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::TyLam;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->loose_tm = body.loose_terms();
  n->loose_ty = below(body.loose_types());
  n->a = std::move(body);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
int Term::index() const { return node_->index; }
const Term& Term::fn() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
const Type& Term::type() const { return node_->ty; }
const Term& Term::body() const { return node_->a; }
std::size_t Term::size() const { return node_ ? node_->size : 0; }
int Term::loose_terms() const { return node_ ? node_->loose_tm : 0; }
int Term::loose_types() const { return node_ ? node_->loose_ty : 0; }

bool operator==(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  if (x.kind() != y.kind() || x.size() != y.size()) return false;
  switch (x.kind()) {
    case TermKind::Var:
      return x.name() == y.name();
    case TermKind::Bound:
      return x.index() == y.index();
    case TermKind::App:
      return x.fn() == y.fn() && x.arg() == y.arg();
    case TermKind::TyApp:
      return x.fn() == y.fn() && x.type() == y.type();
    case TermKind::Lam:
      return x.type() == y.type() && x.body() == y.body();
    case TermKind::TyLam:
      return x.body() == y.body();
  }
  return false;
}

namespace {

std::size_t args_size(const std::vector<Term>& args) {
  std::size_t s = 0;
  for (const Term& t : args) s += t.size();
  return s;
}

}  // namespace

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->name = std::move(predicate);
  n->size = 1 + args_size(args);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::bound_atom(int index, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->index = index;
  n->size = 1 + args_size(args);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::lolli(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Lolli;
  n->size = 1 + lhs.size() + rhs.size();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::bang(Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Bang;
  n->size = 1 + body.size();
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::forall1_raw(std::string hint, Type type, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Forall1;
  n->name = std::move(hint);
  n->size = 1 + type.size() + body.size();
  n->ty = std::move(type);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::forall2_raw(std::string hint, std::vector<Type> kind,
                             Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Forall2;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  for (const Type& t : kind) n->size += t.size();
  n->kinds = std::move(kind);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::forall_type_raw(std::string hint, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::ForallType;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->a = std::move(body);
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
int Formula::index() const { return node_->index; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::lhs() const { return node_->a; }
const Formula& Formula::rhs() const { return node_->b; }
const Formula& Formula::body() const { return node_->a; }
const Type& Formula::type() const { return node_->ty; }
const std::vector<Type>& Formula::pred_kind() const { return node_->kinds; }
std::size_t Formula::size() const { return node_ ? node_->size : 0; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  if (x.kind() != y.kind() || x.size() != y.size()) return false;
  switch (x.kind()) {
    case FormulaKind::Atom:
      return x.index() == y.index() &&
             (x.index() >= 0 || x.name() == y.name()) && x.args() == y.args();
    case FormulaKind::Lolli:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
    case FormulaKind::Bang:
      return x.body() == y.body();
    case FormulaKind::Forall1:
      return x.type() == y.type() && x.body() == y.body();
    case FormulaKind::Forall2:
      return x.pred_kind() == y.pred_kind() && x.body() == y.body();
    case FormulaKind::ForallType:
      return x.body() == y.body();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Generic traversals. Each visits the leaves of one variable sort and
// rebuilds only the nodes whose children changed.

namespace {

struct Depth {
  int tm = 0;
  int ty = 0;
  int pr = 0;
};

bool same(const Type& a, const Type& b) { return a.identity() == b.identity(); }
bool same(const Term& a, const Term& b) { return a.identity() == b.identity(); }
bool same(const Formula& a, const Formula& b) {
  return a.identity() == b.identity();
}

// Leaf: Type(const Type& leaf, int depth). Only called on Var/Bound.
// Skip: bool(const Type& t, int depth); true means t is unaffected.
template <class Leaf, class Skip>
Type map_type(const Type& t, int depth, const Leaf& leaf, const Skip& skip) {
  if (skip(t, depth)) return t;
  switch (t.kind()) {
    case TypeKind::Var:
    case TypeKind::Bound:
      return leaf(t, depth);
    case TypeKind::Forall: {
      Type b = map_type(t.body(), depth + 1, leaf, skip);
      return same(b, t.body()) ? t : Type::forall_raw(t.name(), b);
    }
    case TypeKind::Arrow: {
      Type f = map_type(t.from(), depth, leaf, skip);
      Type g = map_type(t.to(), depth, leaf, skip);
      return same(f, t.from()) && same(g, t.to()) ? t : Type::arrow(f, g);
    }
  }
  return t;
}

// Visits a term; `leaf` handles Var/Bound term leaves, `on_type` maps each
// embedded type given the type depth.
template <class Leaf, class OnType, class Skip>
Term map_term(const Term& t, Depth d, const Leaf& leaf, const OnType& on_type,
              const Skip& skip) {
  if (skip(t, d)) return t;
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Bound:
      return leaf(t, d);
    case TermKind::App: {
      Term f = map_term(t.fn(), d, leaf, on_type, skip);
      Term a = map_term(t.arg(), d, leaf, on_type, skip);
      return same(f, t.fn()) && same(a, t.arg()) ? t : Term::app(f, a);
    }
    case TermKind::TyApp: {
      Term f = map_term(t.fn(), d, leaf, on_type, skip);
      Type a = on_type(t.type(), d.ty);
      return same(f, t.fn()) && same(a, t.type()) ? t : Term::tyapp(f, a);
    }
    case TermKind::Lam: {
      Type dom = on_type(t.type(), d.ty);
      Term b = map_term(t.body(), Depth{d.tm + 1, d.ty, d.pr}, leaf, on_type,
                        skip);
      return same(dom, t.type()) && same(b, t.body())
                 ? t
                 : Term::lam_raw(t.name(), dom, b);
    }
    case TermKind::TyLam: {
      Term b = map_term(t.body(), Depth{d.tm, d.ty + 1, d.pr}, leaf, on_type,
                        skip);
      return same(b, t.body()) ? t : Term::tylam_raw(t.name(), b);
    }
  }
  return t;
}

// `on_term(Term, Depth)`, `on_type(Type, int ty_depth)` map embedded
// expressions; `on_atom(Formula atom_with_mapped_args, Depth)` maps atoms.
template <class OnAtom, class OnTerm, class OnType>
Formula map_formula(const Formula& p, Depth d, const OnAtom& on_atom,
                    const OnTerm& on_term, const OnType& on_type) {
  switch (p.kind()) {
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(p.args().size());
      bool changed = false;
      for (const Term& a : p.args()) {
        args.push_back(on_term(a, d));
        changed = changed || !same(args.back(), a);
      }
      Formula rebuilt = !changed ? p
                        : p.is_bound_atom()
                            ? Formula::bound_atom(p.index(), std::move(args))
                            : Formula::atom(p.name(), std::move(args));
      return on_atom(rebuilt, d);
    }
    case FormulaKind::Lolli: {
      Formula a = map_formula(p.lhs(), d, on_atom, on_term, on_type);
      Formula b = map_formula(p.rhs(), d, on_atom, on_term, on_type);
      return same(a, p.lhs()) && same(b, p.rhs()) ? p : Formula::lolli(a, b);
    }
    case FormulaKind::Bang: {
      Formula b = map_formula(p.body(), d, on_atom, on_term, on_type);
      return same(b, p.body()) ? p : Formula::bang(b);
    }
    case FormulaKind::Forall1: {
      Type ty = on_type(p.type(), d.ty);
      Formula b = map_formula(p.body(), Depth{d.tm + 1, d.ty, d.pr}, on_atom,
                              on_term, on_type);
      return same(ty, p.type()) && same(b, p.body())
                 ? p
                 : Formula::forall1_raw(p.name(), ty, b);
    }
    case FormulaKind::Forall2: {
      std::vector<Type> kind;
      bool changed = false;
      for (const Type& t : p.pred_kind()) {
        kind.push_back(on_type(t, d.ty));
        changed = changed || !same(kind.back(), t);
      }
      Formula b = map_formula(p.body(), Depth{d.tm, d.ty, d.pr + 1}, on_atom,
                              on_term, on_type);
      return !changed && same(b, p.body())
                 ? p
                 : Formula::forall2_raw(p.name(), std::move(kind), b);
    }
    case FormulaKind::ForallType: {
      Formula b = map_formula(p.body(), Depth{d.tm, d.ty + 1, d.pr}, on_atom,
                              on_term, on_type);
      return same(b, p.body()) ? p : Formula::forall_type_raw(p.name(), b);
    }
  }
  return p;
}

auto never_skip = [](const auto&, const auto&) { return false; };
auto keep_atom = [](const Formula& p, Depth) { return p; };

// Shifting loose indices.

Type shift_type(const Type& t, int by, int cutoff = 0) {
  if (by == 0 || t.loose() <= cutoff) return t;
  return map_type(
      t, cutoff,
      [by](const Type& leaf, int depth) {
        if (leaf.kind() == TypeKind::Bound && leaf.index() >= depth)
          return Type::bound(leaf.index() + by);
        return leaf;
      },
      [](const Type& x, int depth) { return x.loose() <= depth; });
}

Term shift_term(const Term& t, int by_tm, int by_ty, Depth cutoff = {}) {
  if ((by_tm == 0 || t.loose_terms() <= cutoff.tm) &&
      (by_ty == 0 || t.loose_types() <= cutoff.ty))
    return t;
  return map_term(
      t, cutoff,
      [by_tm](const Term& leaf, Depth d) {
        if (leaf.kind() == TermKind::Bound && leaf.index() >= d.tm)
          return Term::bound(leaf.index() + by_tm);
        return leaf;
      },
      [by_ty](const Type& ty, int depth) {
        return shift_type(ty, by_ty, depth);
      },
      [](const Term& x, Depth d) {
        return x.loose_terms() <= d.tm && x.loose_types() <= d.ty;
      });
}

// Replaces bound type index `depth` by `value` and lowers larger indices.
Type instantiate_type_at(const Type& t, int depth, const Type& value) {
  return map_type(
      t, depth,
      [&value, depth0 = depth](const Type& leaf, int d) {
        (void)depth0;
        if (leaf.kind() != TypeKind::Bound) return leaf;
        if (leaf.index() == d) return shift_type(value, d);
        if (leaf.index() > d) return Type::bound(leaf.index() - 1);
        return leaf;
      },
      [](const Type& x, int d) { return x.loose() <= d; });
}

Term instantiate_term_at(const Term& t, Depth start, const Term& value) {
  return map_term(
      t, start,
      [&value](const Term& leaf, Depth d) {
        if (leaf.kind() != TermKind::Bound) return leaf;
        if (leaf.index() == d.tm) return shift_term(value, d.tm, d.ty);
        if (leaf.index() > d.tm) return Term::bound(leaf.index() - 1);
        return leaf;
      },
      [](const Type& ty, int) { return ty; },
      [](const Term& x, Depth d) { return x.loose_terms() <= d.tm; });
}

Term instantiate_type_in_term_at(const Term& t, Depth start,
                                 const Type& value) {
  return map_term(
      t, start, [](const Term& leaf, Depth) { return leaf; },
      [&value](const Type& ty, int depth) {
        return instantiate_type_at(ty, depth, value);
      },
      [](const Term& x, Depth d) { return x.loose_types() <= d.ty; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Types

Type tvar(const std::string& name) { return Type::var(name); }
Type arrow(const Type& from, const Type& to) { return Type::arrow(from, to); }

Type arrows(const std::vector<Type>& from, const Type& to) {
  Type t = to;
  for (auto it = from.rbegin(); it != from.rend(); ++it) t = arrow(*it, t);
  return t;
}

Type close_type_var(const Type& t, const std::string& name) {
  return map_type(
      t, 0,
      [&name](const Type& leaf, int depth) {
        if (leaf.kind() == TypeKind::Var && leaf.name() == name)
          return Type::bound(depth);
        return leaf;
      },
      never_skip);
}

Type forall_type(const std::string& var, const Type& body) {
  return Type::forall_raw(var, close_type_var(body, var));
}

Type instantiate(const Type& forall, const Type& value) {
  return instantiate_type_at(forall.body(), 0, value);
}

Type subst(const Type& t, const std::string& var, const Type& value) {
  return map_type(
      t, 0,
      [&](const Type& leaf, int depth) {
        if (leaf.kind() == TypeKind::Var && leaf.name() == var)
          return shift_type(value, depth);
        return leaf;
      },
      never_skip);
}

namespace {

void collect_type_vars(const Type& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TypeKind::Var:
      out.insert(t.name());
      break;
    case TypeKind::Bound:
      break;
    case TypeKind::Forall:
      collect_type_vars(t.body(), out);
      break;
    case TypeKind::Arrow:
      collect_type_vars(t.from(), out);
      collect_type_vars(t.to(), out);
      break;
  }
}

void collect_term_vars(const Term& t, std::set<std::string>* terms,
                       std::set<std::string>* types) {
  switch (t.kind()) {
    case TermKind::Var:
      if (terms) terms->insert(t.name());
      break;
    case TermKind::Bound:
      break;
    case TermKind::App:
      collect_term_vars(t.fn(), terms, types);
      collect_term_vars(t.arg(), terms, types);
      break;
    case TermKind::TyApp:
      collect_term_vars(t.fn(), terms, types);
      if (types) collect_type_vars(t.type(), *types);
      break;
    case TermKind::Lam:
      if (types) collect_type_vars(t.type(), *types);
      collect_term_vars(t.body(), terms, types);
      break;
    case TermKind::TyLam:
      collect_term_vars(t.body(), terms, types);
      break;
  }
}

void collect_formula_vars(const Formula& p, std::set<std::string>* terms,
                          std::set<std::string>* types,
                          std::set<std::string>* preds) {
  switch (p.kind()) {
    case FormulaKind::Atom:
      if (preds && !p.is_bound_atom()) preds->insert(p.name());
      for (const Term& a : p.args()) collect_term_vars(a, terms, types);
      break;
    case FormulaKind::Lolli:
      collect_formula_vars(p.lhs(), terms, types, preds);
      collect_formula_vars(p.rhs(), terms, types, preds);
      break;
    case FormulaKind::Bang:
    case FormulaKind::ForallType:
      collect_formula_vars(p.body(), terms, types, preds);
      break;
    case FormulaKind::Forall1:
      if (types) collect_type_vars(p.type(), *types);
      collect_formula_vars(p.body(), terms, types, preds);
      break;
    case FormulaKind::Forall2:
      if (types)
        for (const Type& t : p.pred_kind()) collect_type_vars(t, *types);
      collect_formula_vars(p.body(), terms, types, preds);
      break;
  }
}

}  // namespace

std::set<std::string> free_type_vars(const Type& t) {
  std::set<std::string> out;
  collect_type_vars(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Terms

Term var(const std::string& name) { return Term::var(name); }
Term app(const Term& fn, const Term& arg) { return Term::app(fn, arg); }

Term app(const Term& fn, const std::vector<Term>& args) {
  Term t = fn;
  for (const Term& a : args) t = Term::app(t, a);
  return t;
}

Term tyapp(const Term& fn, const Type& arg) { return Term::tyapp(fn, arg); }

Term close_term_var(const Term& t, const std::string& name) {
  return map_term(
      t, Depth{},
      [&name](const Term& leaf, Depth d) {
        if (leaf.kind() == TermKind::Var && leaf.name() == name)
          return Term::bound(d.tm);
        return leaf;
      },
      [](const Type& ty, int) { return ty; }, never_skip);
}

Term close_type_var(const Term& t, const std::string& name) {
  return map_term(
      t, Depth{}, [](const Term& leaf, Depth) { return leaf; },
      [&name](const Type& ty, int depth) {
        return map_type(
            ty, depth,
            [&name](const Type& leaf, int d) {
              if (leaf.kind() == TypeKind::Var && leaf.name() == name)
                return Type::bound(d);
              return leaf;
            },
            never_skip);
      },
      never_skip);
}

Term lam(const std::string& v, const Type& domain, const Term& body) {
  return Term::lam_raw(v, domain, close_term_var(body, v));
}

Term tylam(const std::string& v, const Term& body) {
  return Term::tylam_raw(v, close_type_var(body, v));
}

Term instantiate(const Term& binder, const Term& value) {
  if (binder.kind() != TermKind::Lam)
    fail(ErrorCode::PreconditionViolation, "instantiate: not a lambda");
  return instantiate_term_at(binder.body(), Depth{}, value);
}

Term instantiate(const Term& binder, const Type& value) {
  if (binder.kind() != TermKind::TyLam)
    fail(ErrorCode::PreconditionViolation, "instantiate: not a type lambda");
  return instantiate_type_in_term_at(binder.body(), Depth{}, value);
}

Term open_with(const Term& binder, const std::string& name) {
  if (binder.kind() == TermKind::Lam) return instantiate(binder, var(name));
  return instantiate(binder, tvar(name));
}

Term subst(const Term& t, const std::string& v, const Term& value) {
  return map_term(
      t, Depth{},
      [&](const Term& leaf, Depth d) {
        if (leaf.kind() == TermKind::Var && leaf.name() == v)
          return shift_term(value, d.tm, d.ty);
        return leaf;
      },
      [](const Type& ty, int) { return ty; }, never_skip);
}

Term subst(const Term& t, const std::map<std::string, Term>& values) {
  if (values.empty()) return t;
  return map_term(
      t, Depth{},
      [&](const Term& leaf, Depth d) {
        if (leaf.kind() == TermKind::Var) {
          auto it = values.find(leaf.name());
          if (it != values.end()) return shift_term(it->second, d.tm, d.ty);
        }
        return leaf;
      },
      [](const Type& ty, int) { return ty; }, never_skip);
}

Term subst_type(const Term& t, const std::string& v, const Type& value) {
  return map_term(
      t, Depth{}, [](const Term& leaf, Depth) { return leaf; },
      [&](const Type& ty, int depth) {
        return map_type(
            ty, depth,
            [&](const Type& leaf, int d) {
              if (leaf.kind() == TypeKind::Var && leaf.name() == v)
                return shift_type(value, d);
              return leaf;
            },
            never_skip);
      },
      never_skip);
}

std::set<std::string> free_term_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, &out, nullptr);
  return out;
}

std::set<std::string> free_type_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, nullptr, &out);
  return out;
}

bool is_locally_closed(const Term& t) {
  return t.loose_terms() == 0 && t.loose_types() == 0;
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

Formula map_terms_in(const Formula& p, const std::function<Term(const Term&, Depth)>& on_term,
                     const std::function<Type(const Type&, int)>& on_type) {
  return map_formula(p, Depth{}, keep_atom, on_term, on_type);
}

Type type_identity(const Type& t, int) { return t; }

}  // namespace

Formula atom(const std::string& predicate, const std::vector<Term>& args) {
  return Formula::atom(predicate, args);
}

Formula lolli(const Formula& lhs, const Formula& rhs) {
  return Formula::lolli(lhs, rhs);
}

Formula bang(const Formula& body, int times) {
  Formula p = body;
  for (int i = 0; i < times; ++i) p = Formula::bang(p);
  return p;
}

Formula close_term_var(const Formula& p, const std::string& name) {
  return map_formula(
      p, Depth{}, keep_atom,
      [&name](const Term& t, Depth d) {
        return map_term(
            t, d,
            [&name](const Term& leaf, Depth dd) {
              if (leaf.kind() == TermKind::Var && leaf.name() == name)
                return Term::bound(dd.tm);
              return leaf;
            },
            [](const Type& ty, int) { return ty; }, never_skip);
      },
      type_identity);
}

Formula close_type_var(const Formula& p, const std::string& name) {
  auto on_type = [&name](const Type& ty, int depth) {
    return map_type(
        ty, depth,
        [&name](const Type& leaf, int d) {
          if (leaf.kind() == TypeKind::Var && leaf.name() == name)
            return Type::bound(d);
          return leaf;
        },
        never_skip);
  };
  return map_formula(
      p, Depth{}, keep_atom,
      [&on_type](const Term& t, Depth d) {
        return map_term(
            t, d, [](const Term& leaf, Depth) { return leaf; }, on_type,
            never_skip);
      },
      on_type);
}

Formula close_pred_var(const Formula& p, const std::string& name) {
  return map_formula(
      p, Depth{},
      [&name](const Formula& a, Depth d) {
        if (!a.is_bound_atom() && a.name() == name)
          return Formula::bound_atom(d.pr, a.args());
        return a;
      },
      [](const Term& t, Depth) { return t; }, type_identity);
}

Formula forall1(const std::string& v, const Type& type, const Formula& body) {
  return Formula::forall1_raw(v, type, close_term_var(body, v));
}

Formula forall2(const std::string& v, const std::vector<Type>& kind,
                const Formula& body) {
  return Formula::forall2_raw(v, kind, close_pred_var(body, v));
}

Formula forall_type(const std::string& v, const Formula& body) {
  return Formula::forall_type_raw(v, close_type_var(body, v));
}

Formula instantiate(const Formula& binder, const Term& value) {
  if (binder.kind() != FormulaKind::Forall1)
    fail(ErrorCode::PreconditionViolation, "instantiate: not a first-order quantifier");
  return map_formula(
      binder.body(), Depth{}, keep_atom,
      [&value](const Term& t, Depth d) {
        return instantiate_term_at(t, d, value);
      },
      type_identity);
}

Formula instantiate(const Formula& binder, const Type& value) {
  if (binder.kind() != FormulaKind::ForallType)
    fail(ErrorCode::PreconditionViolation, "instantiate: not a type quantifier");
  return map_formula(
      binder.body(), Depth{}, keep_atom,
      [&value](const Term& t, Depth d) {
        return instantiate_type_in_term_at(t, d, value);
      },
      [&value](const Type& ty, int depth) {
        return instantiate_type_at(ty, depth, value);
      });
}

Formula open_with(const Formula& binder, const std::string& name) {
  switch (binder.kind()) {
    case FormulaKind::Forall1:
      return instantiate(binder, var(name));
    case FormulaKind::ForallType:
      return instantiate(binder, tvar(name));
    case FormulaKind::Forall2:
      return map_formula(
          binder.body(), Depth{},
          [&name](const Formula& a, Depth d) {
            if (!a.is_bound_atom()) return a;
            if (a.index() == d.pr) return Formula::atom(name, a.args());
            if (a.index() > d.pr)
              return Formula::bound_atom(a.index() - 1, a.args());
            return a;
          },
          [](const Term& t, Depth) { return t; }, type_identity);
    default:
      fail(ErrorCode::PreconditionViolation, "open_with: not a binder");
  }
}

Formula subst(const Formula& p, const std::string& v, const Term& value) {
  return map_terms_in(
      p,
      [&](const Term& t, Depth d) {
        return map_term(
            t, d,
            [&](const Term& leaf, Depth dd) {
              if (leaf.kind() == TermKind::Var && leaf.name() == v)
                return shift_term(value, dd.tm, dd.ty);
              return leaf;
            },
            [](const Type& ty, int) { return ty; }, never_skip);
      },
      type_identity);
}

Formula subst_type(const Formula& p, const std::string& v, const Type& value) {
  auto on_type = [&](const Type& ty, int depth) {
    return map_type(
        ty, depth,
        [&](const Type& leaf, int d) {
          if (leaf.kind() == TypeKind::Var && leaf.name() == v)
            return shift_type(value, d);
          return leaf;
        },
        never_skip);
  };
  return map_formula(
      p, Depth{}, keep_atom,
      [&](const Term& t, Depth d) {
        return map_term(
            t, d, [](const Term& leaf, Depth) { return leaf; }, on_type,
            never_skip);
      },
      on_type);
}

namespace {

// Shifts all loose indices of a formula by the given amounts.
Formula shift_formula(const Formula& p, Depth by) {
  if (by.tm == 0 && by.ty == 0 && by.pr == 0) return p;
  return map_formula(
      p, Depth{},
      [by](const Formula& a, Depth d) {
        if (a.is_bound_atom() && a.index() >= d.pr)
          return Formula::bound_atom(a.index() + by.pr, a.args());
        return a;
      },
      [by](const Term& t, Depth d) { return shift_term(t, by.tm, by.ty, d); },
      [by](const Type& ty, int depth) { return shift_type(ty, by.ty, depth); });
}

}  // namespace

Formula shift_formula(const Formula& p, int by_tm, int by_ty, int by_pr) {
  return shift_formula(p, Depth{by_tm, by_ty, by_pr});
}

Formula subst_pred(const Formula& p, const std::string& predicate,
                   const std::vector<std::string>& params, const Formula& q) {
  return map_formula(
      p, Depth{},
      [&](const Formula& a, Depth d) {
        if (a.is_bound_atom() || a.name() != predicate) return a;
        if (a.args().size() != params.size())
          fail(ErrorCode::ArityMismatch,
               "predicate " + predicate + " applied to " +
                   std::to_string(a.args().size()) + " arguments, expected " +
                   std::to_string(params.size()));
        Formula r = shift_formula(q, d);
        // Substitute each parameter in turn through a fresh name so that an
        // argument mentioning a later parameter name is left alone.
        std::vector<std::string> tmp;
        for (const std::string& x : params) {
          tmp.push_back(fresh_name());
          r = subst(r, x, var(tmp.back()));
        }
        for (std::size_t i = 0; i < params.size(); ++i) {
          // The arguments live at depth d; r's own binders are handled by
          // the shifting in subst.
          r = subst(r, tmp[i], a.args()[i]);
        }
        return r;
      },
      [](const Term& t, Depth) { return t; }, type_identity);
}

Formula rename_pred(const Formula& p, const std::string& from,
                    const std::string& to) {
  Formula r = map_formula(
      p, Depth{},
      [&](const Formula& a, Depth) {
        if (!a.is_bound_atom() && a.name() == from)
          return Formula::atom(to, a.args());
        return a;
      },
      [](const Term& t, Depth) { return t; }, type_identity);
  return subst_type(r, alpha_of(from), tvar(alpha_of(to)));
}

std::set<std::string> free_term_vars(const Formula& p) {
  std::set<std::string> out;
  collect_formula_vars(p, &out, nullptr, nullptr);
  return out;
}

std::set<std::string> free_type_vars(const Formula& p) {
  std::set<std::string> out;
  collect_formula_vars(p, nullptr, &out, nullptr);
  return out;
}

std::set<std::string> free_pred_vars(const Formula& p) {
  std::set<std::string> out;
  collect_formula_vars(p, nullptr, nullptr, &out);
  return out;
}

bool is_locally_closed(const Formula& p) {
  bool closed = true;
  map_formula(
      p, Depth{},
      [&closed](const Formula& a, Depth d) {
        if (a.is_bound_atom() && a.index() >= d.pr) closed = false;
        return a;
      },
      [&closed](const Term& t, Depth d) {
        if (t.loose_terms() > d.tm || t.loose_types() > d.ty) closed = false;
        return t;
      },
      [&closed](const Type& ty, int depth) {
        if (ty.loose() > depth) closed = false;
        return ty;
      });
  return closed;
}

// ---------------------------------------------------------------------------
// Beta

std::optional<Term> beta_step(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Bound:
      return std::nullopt;
    case TermKind::App: {
      if (t.fn().kind() == TermKind::Lam) return instantiate(t.fn(), t.arg());
      if (auto f = beta_step(t.fn())) return Term::app(*f, t.arg());
      if (auto a = beta_step(t.arg())) return Term::app(t.fn(), *a);
      return std::nullopt;
    }
    case TermKind::TyApp: {
      if (t.fn().kind() == TermKind::TyLam)
        return instantiate(t.fn(), t.type());
      if (auto f = beta_step(t.fn())) return Term::tyapp(*f, t.type());
      return std::nullopt;
    }
    case TermKind::Lam: {
      if (auto b = beta_step(t.body()))
        return Term::lam_raw(t.name(), t.type(), *b);
      return std::nullopt;
    }
    case TermKind::TyLam: {
      if (auto b = beta_step(t.body())) return Term::tylam_raw(t.name(), *b);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool is_beta_normal(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Bound:
      return true;
    case TermKind::App:
      return t.fn().kind() != TermKind::Lam && is_beta_normal(t.fn()) &&
             is_beta_normal(t.arg());
    case TermKind::TyApp:
      return t.fn().kind() != TermKind::TyLam && is_beta_normal(t.fn());
    case TermKind::Lam:
    case TermKind::TyLam:
      return is_beta_normal(t.body());
  }
  return true;
}

namespace {

[[noreturn]] void out_of_fuel(std::uint64_t fuel) {
  fail(ErrorCode::FuelExhausted,
       "beta normalization did not finish within " + std::to_string(fuel) +
           " steps");
}

// Normal order by head reduction: reduce to weak head normal form, then
// normalize under the head. Equivalent to repeated leftmost-outermost steps.
Term normalize_lo(const Term& t, std::uint64_t fuel, std::uint64_t& used) {
  Term cur = t;
  for (;;) {
    // Unwind the application spine.
    std::vector<const Term*> spine;
    const Term* head = &cur;
    while (head->kind() == TermKind::App || head->kind() == TermKind::TyApp) {
      spine.push_back(head);
      head = &head->fn();
    }
    if (!spine.empty()) {
      const Term* innermost = spine.back();
      bool redex =
          (innermost->kind() == TermKind::App && head->kind() == TermKind::Lam) ||
          (innermost->kind() == TermKind::TyApp &&
           head->kind() == TermKind::TyLam);
      if (redex) {
        if (++used > fuel) out_of_fuel(fuel);
        Term reduced = innermost->kind() == TermKind::App
                           ? instantiate(*head, innermost->arg())
                           : instantiate(*head, innermost->type());
        for (auto it = spine.rbegin() + 1; it != spine.rend(); ++it) {
          const Term* s = *it;
          reduced = s->kind() == TermKind::App ? Term::app(reduced, s->arg())
                                               : Term::tyapp(reduced, s->type());
        }
        cur = reduced;
        continue;
      }
    }
    break;
  }
  switch (cur.kind()) {
    case TermKind::Var:
    case TermKind::Bound:
      return cur;
    case TermKind::Lam:
      return Term::lam_raw(cur.name(), cur.type(),
                           normalize_lo(cur.body(), fuel, used));
    case TermKind::TyLam:
      return Term::tylam_raw(cur.name(), normalize_lo(cur.body(), fuel, used));
    case TermKind::App:
      return Term::app(normalize_lo(cur.fn(), fuel, used),
                       normalize_lo(cur.arg(), fuel, used));
    case TermKind::TyApp:
      return Term::tyapp(normalize_lo(cur.fn(), fuel, used), cur.type());
  }
  return cur;
}

Term normalize_li(const Term& t, std::uint64_t fuel, std::uint64_t& used) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Bound:
      return t;
    case TermKind::Lam:
      return Term::lam_raw(t.name(), t.type(),
                           normalize_li(t.body(), fuel, used));
    case TermKind::TyLam:
      return Term::tylam_raw(t.name(), normalize_li(t.body(), fuel, used));
    case TermKind::App: {
      Term f = normalize_li(t.fn(), fuel, used);
      Term a = normalize_li(t.arg(), fuel, used);
      if (f.kind() == TermKind::Lam) {
        if (++used > fuel) out_of_fuel(fuel);
        return normalize_li(instantiate(f, a), fuel, used);
      }
      return Term::app(f, a);
    }
    case TermKind::TyApp: {
      Term f = normalize_li(t.fn(), fuel, used);
      if (f.kind() == TermKind::TyLam) {
        if (++used > fuel) out_of_fuel(fuel);
        return normalize_li(instantiate(f, t.type()), fuel, used);
      }
      return Term::tyapp(f, t.type());
    }
  }
  return t;
}

}  // namespace

Term beta_normalize(const Term& t, std::uint64_t fuel) {
  if (is_beta_normal(t)) return t;
  std::uint64_t used = 0;
  return normalize_lo(t, fuel, used);
}

Term beta_normalize_innermost(const Term& t, std::uint64_t fuel) {
  std::uint64_t used = 0;
  return normalize_li(t, fuel, used);
}

std::optional<Formula> beta_step(const Formula& p) {
  bool done = false;
  Formula r = map_formula(
      p, Depth{}, keep_atom,
      [&done](const Term& t, Depth) {
        if (done) return t;
        if (auto s = beta_step(t)) {
          done = true;
          return *s;
        }
        return t;
      },
      type_identity);
  if (!done) return std::nullopt;
  return r;
}

Formula beta_normalize(const Formula& p, std::uint64_t fuel) {
  return map_formula(
      p, Depth{}, keep_atom,
      [fuel](const Term& t, Depth) { return beta_normalize(t, fuel); },
      type_identity);
}

bool beta_equivalent(const Term& a, const Term& b) {
  return a == b || beta_normalize(a) == beta_normalize(b);
}

bool beta_equivalent(const Formula& a, const Formula& b) {
  return a == b || beta_normalize(a) == beta_normalize(b);
}

}  // namespace elx
