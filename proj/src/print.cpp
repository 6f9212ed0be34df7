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

// Printer for types, terms and formulas in the surface syntax read by
// script.cpp. Library formulas are folded back into their macro forms.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "elx/library.hpp"
#include "elx/syntax.hpp"

namespace elx {
namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "fun", "Fun", "forall", "forall2", "Type", "nat", "unit", "N", "Eq",
      "Tensor", "proof", "formula", "signature", "equations"};
  return k;
}

class Printer {
 public:
  template <class T>
  explicit Printer(const T& root) {
    free_tm_ = collect_tm(root);
    free_ty_ = free_type_vars(root);
    free_pr_ = collect_pr(root);
  }

  std::string type(const Type& t, int prec) {
    switch (t.kind()) {
      case TypeKind::Var:
        return t.name();
      case TypeKind::Bound:
        return lookup(ty_env_, t.index());
      case TypeKind::Forall: {
        if (t == nat_type()) return "nat";
        if (t == unit_type()) return "unit";
        std::string n = pick(t.name(), "a", free_ty_, ty_env_);
        ty_env_.push_back(n);
        std::string body = type(t.body(), 0);
        ty_env_.pop_back();
        return paren(prec > 0, "forall " + n + ". " + body);
      }
      case TypeKind::Arrow:
        return paren(prec > 0, type(t.from(), 1) + " -> " + type(t.to(), 0));
    }
    return "?";
  }

  // prec 0: anything; 1: function position; 2: argument position.
  std::string term(const Term& t, int prec) {
    switch (t.kind()) {
      case TermKind::Var:
        return t.name();
      case TermKind::Bound:
        return lookup(tm_env_, t.index());
      case TermKind::App:
        return paren(prec > 1, term(t.fn(), 1) + " " + term(t.arg(), 2));
      case TermKind::TyApp:
        return paren(prec > 1, term(t.fn(), 1) + " [" + type(t.type(), 0) + "]");
      case TermKind::Lam: {
        std::string dom = type(t.type(), 0);
        std::string n = pick(t.name(), "x", free_tm_, tm_env_);
        tm_env_.push_back(n);
        std::string body = term(t.body(), 0);
        tm_env_.pop_back();
        return paren(prec > 0, "fun (" + n + " : " + dom + ") " + body);
      }
      case TermKind::TyLam: {
        std::string n = pick(t.name(), "a", free_ty_, ty_env_);
        ty_env_.push_back(n);
        std::string body = term(t.body(), 0);
        ty_env_.pop_back();
        return paren(prec > 0, "Fun (" + n + ") " + body);
      }
    }
    return "?";
  }

  // prec 0: anything; 1: left of -o or under !.
  std::string formula(const Formula& p, int prec) {
    if (auto t = match_nat_pred(p)) return "N(" + term(*t, 0) + ")";
    if (auto e = match_equality(p)) {
      return "Eq[" + type(e->type, 0) + "](" + term(e->lhs, 0) + ", " +
             term(e->rhs, 0) + ")";
    }
    if (auto pq = match_tensor(p)) {
      return "Tensor(" + formula(pq->first, 0) + ", " + formula(pq->second, 0) +
             ")";
    }
    switch (p.kind()) {
      case FormulaKind::Atom: {
        std::string head =
            p.is_bound_atom() ? lookup(pr_env_, p.index()) : p.name();
        if (p.args().empty()) return head;
        std::string out = head + "(";
        for (std::size_t i = 0; i < p.args().size(); ++i) {
          if (i) out += ", ";
          out += term(p.args()[i], 0);
        }
        return out + ")";
      }
      case FormulaKind::Lolli:
        return paren(prec > 0,
                     formula(p.lhs(), 1) + " -o " + formula(p.rhs(), 0));
      case FormulaKind::Bang:
        return "!" + formula(p.body(), 1);
      case FormulaKind::Forall1: {
        std::string ty = type(p.type(), 0);
        std::string n = pick(p.name(), "x", free_tm_, tm_env_);
        tm_env_.push_back(n);
        std::string body = formula(p.body(), 0);
        tm_env_.pop_back();
        return paren(prec > 0, "forall " + n + ":" + ty + ". " + body);
      }
      case FormulaKind::ForallType: {
        std::string n = pick(p.name(), "a", free_ty_, ty_env_);
        ty_env_.push_back(n);
        std::string body = formula(p.body(), 0);
        ty_env_.pop_back();
        return paren(prec > 0, "forall " + n + ":Type. " + body);
      }
      case FormulaKind::Forall2: {
        std::string kind;
        for (std::size_t i = 0; i < p.pred_kind().size(); ++i) {
          if (i) kind += ", ";
          kind += type(p.pred_kind()[i], 0);
        }
        std::string n = pick(p.name(), "X", free_pr_, pr_env_);
        pr_env_.push_back(n);
        std::string body = formula(p.body(), 0);
        pr_env_.pop_back();
        return paren(prec > 0,
                     "forall2 " + n + ":[" + kind + "]. " + body);
      }
    }
    return "?";
  }

 private:
  static std::set<std::string> collect_tm(const Type&) { return {}; }
  static std::set<std::string> collect_tm(const Term& t) {
    return free_term_vars(t);
  }
  static std::set<std::string> collect_tm(const Formula& p) {
    return free_term_vars(p);
  }
  static std::set<std::string> collect_pr(const Type&) { return {}; }
  static std::set<std::string> collect_pr(const Term&) { return {}; }
  static std::set<std::string> collect_pr(const Formula& p) {
    return free_pred_vars(p);
  }

  static std::string paren(bool on, const std::string& s) {
    return on ? "(" + s + ")" : s;
  }

  static std::string lookup(const std::vector<std::string>& env, int index) {
    if (index < 0 || index >= static_cast<int>(env.size())) {
      return "^" + std::to_string(index);
    }
    return env[env.size() - 1 - index];
  }

  static std::string pick(const std::string& hint, const std::string& dflt,
                          const std::set<std::string>& free,
                          const std::vector<std::string>& env) {
    std::string base = hint.empty() || hint[0] == '%' ? dflt : hint;
    std::string n = base;
    while (free.count(n) || keywords().count(n) ||
           std::find(env.begin(), env.end(), n) != env.end()) {
      n += "'";
    }
    return n;
  }

  std::set<std::string> free_tm_, free_ty_, free_pr_;
  std::vector<std::string> tm_env_, ty_env_, pr_env_;
};

}  // namespace

std::string to_string(const Type& t) {
  if (t.is_null()) return "<null>";
  return Printer(t).type(t, 0);
}

std::string to_string(const Term& t) {
  if (t.is_null()) return "<null>";
  return Printer(t).term(t, 0);
}

std::string to_string(const Formula& p) {
  if (p.is_null()) return "<null>";
  return Printer(p).formula(p, 0);
}

}  // namespace elx
