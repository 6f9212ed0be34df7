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

#include "elx/wellformed.hpp"

#include "elx/error.hpp"
#include "elx/library.hpp"

namespace elx {

void Context::push(ContextEntry entry) {
  auto link = std::make_shared<Link>();
  link->entry = std::move(entry);
  link->prev = last_;
  link->size = size() + 1;
  last_ = std::move(link);
}

Context& Context::add_type_var(const std::string& name) {
  push({EntryKind::TypeVar, name, Type(), {}});
  return *this;
}

Context& Context::add_term_var(const std::string& name, const Type& type) {
  push({EntryKind::TermVar, name, type, {}});
  return *this;
}

Context& Context::add_pred_var(const std::string& name,
                               const std::vector<Type>& kind) {
  push({EntryKind::PredVar, name, Type(), kind});
  return *this;
}

Context& Context::append(const Context& other) {
  for (ContextEntry& e : other.entries()) push(std::move(e));
  return *this;
}

Context Context::with_type_var(const std::string& name) const {
  Context c = *this;
  c.add_type_var(name);
  return c;
}

Context Context::with_term_var(const std::string& name,
                               const Type& type) const {
  Context c = *this;
  c.add_term_var(name, type);
  return c;
}

Context Context::with_pred_var(const std::string& name,
                               const std::vector<Type>& kind) const {
  Context c = *this;
  c.add_pred_var(name, kind);
  return c;
}

const ContextEntry* Context::find(EntryKind kind,
                                  const std::string& name) const {
  for (const Link* l = last_.get(); l; l = l->prev.get()) {
    if (l->entry.kind == kind && l->entry.name == name) return &l->entry;
  }
  return nullptr;
}

bool Context::declares(const std::string& name) const {
  for (const Link* l = last_.get(); l; l = l->prev.get()) {
    if (l->entry.name == name) return true;
  }
  return false;
}

std::vector<ContextEntry> Context::entries() const {
  std::vector<ContextEntry> out;
  out.reserve(size());
  for (const Link* l = last_.get(); l; l = l->prev.get()) {
    out.push_back(l->entry);
  }
  return {out.rbegin(), out.rend()};
}

bool operator==(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  const Context::Link* x = a.last_.get();
  const Context::Link* y = b.last_.get();
  for (; x && y; x = x->prev.get(), y = y->prev.get()) {
    if (x == y) return true;
    const ContextEntry& p = x->entry;
    const ContextEntry& q = y->entry;
    if (p.kind != q.kind || p.name != q.name || !(p.type == q.type) ||
        p.pred_kind != q.pred_kind) {
      return false;
    }
  }
  return true;
}

const Signature& standard_signature() {
  static const Signature sig = [] {
    Type n = nat_type();
    Type nn = arrow(n, n);
    Type nnn = arrow(n, nn);
    Signature s;
    s.add_term_var("0", n)
        .add_term_var("s", nn)
        .add_term_var("pred", nn)
        .add_term_var("plus", nnn)
        .add_term_var("mult", nnn)
        .add_term_var("minus", nnn)
        .add_term_var("sum", arrow(nn, nn))
        .add_term_var("prod", arrow(nn, nn));
    return s;
  }();
  return sig;
}

void check_type(const Context& ctx, const Type& t) {
  switch (t.kind()) {
    case TypeKind::Var:
      if (!ctx.has_type_var(t.name())) {
        fail(ErrorCode::UnboundTypeVariable,
             "type variable " + t.name() + " is not declared");
      }
      return;
    case TypeKind::Bound:
      fail(ErrorCode::UnboundTypeVariable, "dangling bound type variable");
    case TypeKind::Forall: {
      std::string a = fresh_name();
      check_type(ctx.with_type_var(a), instantiate(t, tvar(a)));
      return;
    }
    case TypeKind::Arrow:
      check_type(ctx, t.from());
      check_type(ctx, t.to());
      return;
  }
}

void check_context(const Context& ctx) {
  Context prefix;
  for (const ContextEntry& e : ctx.entries()) {
    if (prefix.find(e.kind, e.name)) {
      fail(ErrorCode::DuplicateName, "name " + e.name + " is declared twice");
    }
    try {
      if (e.kind == EntryKind::TermVar) check_type(prefix, e.type);
      if (e.kind == EntryKind::PredVar) {
        for (const Type& t : e.pred_kind) check_type(prefix, t);
      }
    } catch (const Error& err) {
      fail(ErrorCode::IllFormedEntryType,
           "entry " + e.name + ": " + err.what());
    }
    switch (e.kind) {
      case EntryKind::TypeVar:
        prefix.add_type_var(e.name);
        break;
      case EntryKind::TermVar:
        prefix.add_term_var(e.name, e.type);
        break;
      case EntryKind::PredVar:
        prefix.add_pred_var(e.name, e.pred_kind);
        break;
    }
  }
}

Type infer_type(const Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: {
      const ContextEntry* e = ctx.find(EntryKind::TermVar, t.name());
      if (!e) {
        fail(ErrorCode::UnboundVariable,
             "variable " + t.name() + " is not declared");
      }
      return e->type;
    }
    case TermKind::Bound:
      fail(ErrorCode::UnboundVariable, "dangling bound term variable");
    case TermKind::App: {
      Type f = infer_type(ctx, t.fn());
      if (f.kind() != TypeKind::Arrow) {
        fail(ErrorCode::ApplicationMismatch,
             "applying " + to_string(t.fn()) + " of non-function type " +
                 to_string(f));
      }
      Type a = infer_type(ctx, t.arg());
      if (!(a == f.from())) {
        fail(ErrorCode::ApplicationMismatch,
             "argument " + to_string(t.arg()) + " has type " + to_string(a) +
                 ", expected " + to_string(f.from()));
      }
      return f.to();
    }
    case TermKind::TyApp: {
      check_type(ctx, t.type());
      Type f = infer_type(ctx, t.fn());
      if (f.kind() != TypeKind::Forall) {
        fail(ErrorCode::TypeApplicationMismatch,
             "type application of " + to_string(t.fn()) +
                 " of non-polymorphic type " + to_string(f));
      }
      return instantiate(f, t.type());
    }
    case TermKind::Lam: {
      check_type(ctx, t.type());
      std::string x = fresh_name();
      Type body = infer_type(ctx.with_term_var(x, t.type()), open_with(t, x));
      return arrow(t.type(), body);
    }
    case TermKind::TyLam: {
      std::string a = fresh_name();
      Type body = infer_type(ctx.with_type_var(a), open_with(t, a));
      return Type::forall_raw(t.name(), close_type_var(body, a));
    }
  }
  fail(ErrorCode::PreconditionViolation, "unreachable");
}

void check_term(const Context& ctx, const Term& t, const Type& expected) {
  Type actual = infer_type(ctx, t);
  if (!(actual == expected)) {
    fail(ErrorCode::ApplicationMismatch,
         to_string(t) + " has type " + to_string(actual) + ", expected " +
             to_string(expected));
  }
}

void check_formula(const Context& ctx, const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Atom: {
      if (p.is_bound_atom()) {
        fail(ErrorCode::UnboundPredicate, "dangling bound predicate variable");
      }
      const ContextEntry* e = ctx.find(EntryKind::PredVar, p.name());
      if (!e) {
        fail(ErrorCode::UnboundPredicate,
             "predicate variable " + p.name() + " is not declared");
      }
      if (e->pred_kind.size() != p.args().size()) {
        fail(ErrorCode::AtomArityMismatch,
             p.name() + " expects " + std::to_string(e->pred_kind.size()) +
                 " arguments, got " + std::to_string(p.args().size()));
      }
      for (std::size_t i = 0; i < p.args().size(); ++i) {
        Type a = infer_type(ctx, p.args()[i]);
        if (!(a == e->pred_kind[i])) {
          fail(ErrorCode::AtomArgumentType,
               "argument " + std::to_string(i + 1) + " of " + p.name() +
                   " has type " + to_string(a) + ", expected " +
                   to_string(e->pred_kind[i]));
        }
      }
      return;
    }
    case FormulaKind::Lolli:
      check_formula(ctx, p.lhs());
      check_formula(ctx, p.rhs());
      return;
    case FormulaKind::Bang:
      check_formula(ctx, p.body());
      return;
    case FormulaKind::Forall1: {
      check_type(ctx, p.type());
      std::string x = fresh_name();
      check_formula(ctx.with_term_var(x, p.type()), open_with(p, x));
      return;
    }
    case FormulaKind::Forall2: {
      for (const Type& t : p.pred_kind()) check_type(ctx, t);
      std::string x = fresh_name();
      check_formula(ctx.with_pred_var(x, p.pred_kind()), open_with(p, x));
      return;
    }
    case FormulaKind::ForallType: {
      std::string a = fresh_name();
      check_formula(ctx.with_type_var(a), open_with(p, a));
      return;
    }
  }
}

std::string to_string(const Context& ctx) {
  std::string out;
  for (const ContextEntry& e : ctx.entries()) {
    if (!out.empty()) out += ", ";
    switch (e.kind) {
      case EntryKind::TypeVar:
        out += e.name + " : Type";
        break;
      case EntryKind::TermVar:
        out += e.name + " : " + to_string(e.type);
        break;
      case EntryKind::PredVar: {
        out += e.name + " : [";
        for (std::size_t i = 0; i < e.pred_kind.size(); ++i) {
          if (i) out += ", ";
          out += to_string(e.pred_kind[i]);
        }
        out += "]";
        break;
      }
    }
  }
  return out;
}

}  // namespace elx
