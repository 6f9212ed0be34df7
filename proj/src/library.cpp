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

#include "elx/library.hpp"

namespace elx {

Type nat_type() {
  static const Type nat = forall_type(
      "a", arrow(arrow(tvar("a"), tvar("a")), arrow(tvar("a"), tvar("a"))));
  return nat;
}

Type unit_type() {
  static const Type unit = forall_type("a", arrow(tvar("a"), tvar("a")));
  return unit;
}

Term church_numeral(int n) {
  Term body = var("x");
  for (int i = 0; i < n; ++i) body = app(var("f"), body);
  Type a = tvar("a");
  return tylam("a", lam("f", arrow(a, a), lam("x", a, body)));
}

Formula equality(const Type& type, const Term& a, const Term& b) {
  return Formula::forall2_raw(
      "X", {type},
      Formula::lolli(Formula::bound_atom(0, {a}), Formula::bound_atom(0, {b})));
}

Formula nat_pred(const Term& t) {
  Term y = Term::bound(0);
  Formula step = Formula::forall1_raw(
      "y", nat_type(),
      Formula::lolli(Formula::bound_atom(0, {y}),
                     Formula::bound_atom(0, {app(var(kSucc), y)})));
  Formula base = Formula::lolli(Formula::bound_atom(0, {var(kZero)}),
                                Formula::bound_atom(0, {t}));
  return Formula::forall2_raw(
      "X", {nat_type()},
      Formula::lolli(Formula::bang(step), Formula::bang(base)));
}

Formula tensor(const Formula& p, const Formula& q) {
  Formula ps = shift_formula(p, 0, 0, 1);
  Formula qs = shift_formula(q, 0, 0, 1);
  Formula t = Formula::bound_atom(0, {});
  return Formula::forall2_raw(
      "T", {}, Formula::lolli(Formula::lolli(ps, Formula::lolli(qs, t)), t));
}

Formula extensionality() {
  Type a = tvar("a");
  Type b = tvar("b");
  Formula pointwise =
      forall1("x", a, equality(b, app(var("f"), var("x")), app(var("g"), var("x"))));
  Formula body = lolli(pointwise, equality(arrow(a, b), var("f"), var("g")));
  return forall_type(
      "a", forall_type("b", forall1("f", arrow(a, b),
                                    forall1("g", arrow(a, b), body))));
}

std::optional<Term> match_nat_pred(const Formula& p) {
  if (p.kind() != FormulaKind::Forall2 || p.pred_kind().size() != 1) {
    return std::nullopt;
  }
  const Formula& body = p.body();
  if (body.kind() != FormulaKind::Lolli) return std::nullopt;
  const Formula& base = body.rhs();
  if (base.kind() != FormulaKind::Bang) return std::nullopt;
  const Formula& impl = base.body();
  if (impl.kind() != FormulaKind::Lolli) return std::nullopt;
  const Formula& goal = impl.rhs();
  if (goal.kind() != FormulaKind::Atom || goal.args().size() != 1) {
    return std::nullopt;
  }
  Term t = goal.args()[0];
  if (!(nat_pred(t) == p)) return std::nullopt;
  return t;
}

std::optional<EqualityParts> match_equality(const Formula& p) {
  if (p.kind() != FormulaKind::Forall2 || p.pred_kind().size() != 1) {
    return std::nullopt;
  }
  const Formula& body = p.body();
  if (body.kind() != FormulaKind::Lolli) return std::nullopt;
  const Formula& l = body.lhs();
  const Formula& r = body.rhs();
  if (l.kind() != FormulaKind::Atom || r.kind() != FormulaKind::Atom ||
      l.index() != 0 || r.index() != 0 || l.args().size() != 1 ||
      r.args().size() != 1) {
    return std::nullopt;
  }
  return EqualityParts{p.pred_kind()[0], l.args()[0], r.args()[0]};
}

namespace {

bool mentions_pred_index(const Formula& p, int index) {
  switch (p.kind()) {
    case FormulaKind::Atom:
      return p.index() == index;
    case FormulaKind::Lolli:
      return mentions_pred_index(p.lhs(), index) ||
             mentions_pred_index(p.rhs(), index);
    case FormulaKind::Forall2:
      return mentions_pred_index(p.body(), index + 1);
    default:
      return mentions_pred_index(p.body(), index);
  }
}

}  // namespace

std::optional<std::pair<Formula, Formula>> match_tensor(const Formula& p) {
  if (p.kind() != FormulaKind::Forall2 || !p.pred_kind().empty()) {
    return std::nullopt;
  }
  const Formula& body = p.body();
  if (body.kind() != FormulaKind::Lolli) return std::nullopt;
  const Formula& k = body.lhs();
  const Formula& t = body.rhs();
  if (t.kind() != FormulaKind::Atom || t.index() != 0 || !t.args().empty()) {
    return std::nullopt;
  }
  if (k.kind() != FormulaKind::Lolli || k.rhs().kind() != FormulaKind::Lolli) {
    return std::nullopt;
  }
  const Formula& a = k.lhs();
  const Formula& b = k.rhs().lhs();
  const Formula& t2 = k.rhs().rhs();
  if (!(t2 == t)) return std::nullopt;
  if (mentions_pred_index(a, 0) || mentions_pred_index(b, 0)) {
    return std::nullopt;
  }
  return std::make_pair(shift_formula(a, 0, 0, -1), shift_formula(b, 0, 0, -1));
}

std::pair<int, Formula> strip_bangs(const Formula& p) {
  int k = 0;
  Formula cur = p;
  while (cur.kind() == FormulaKind::Bang) {
    ++k;
    cur = cur.body();
  }
  return {k, cur};
}

}  // namespace elx
