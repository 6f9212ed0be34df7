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

#include "elx/proof.hpp"

#include <algorithm>
#include <map>

#include "elx/error.hpp"
#include "elx/projections.hpp"

namespace elx {

namespace {

constexpr std::pair<Rule, std::string_view> kRuleNames[] = {
    {Rule::Axiom, "axiom"},
    {Rule::Weakening, "weakening"},
    {Rule::Application, "application"},
    {Rule::Abstraction, "abstraction"},
    {Rule::Promotion, "promotion"},
    {Rule::Contraction, "contraction"},
    {Rule::IntroType, "intro-type"},
    {Rule::Intro1, "intro1"},
    {Rule::Intro2, "intro2"},
    {Rule::ElimType, "elim-type"},
    {Rule::Elim1, "elim1"},
    {Rule::Elim2, "elim2"},
    {Rule::Equality, "equality"},
};

}  // namespace

std::string_view rule_name(Rule rule) {
  for (const auto& [r, n] : kRuleNames) {
    if (r == rule) return n;
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

std::size_t ProofScript::size() const {
  std::size_t n = 1;
  for (const ProofScript& c : node_->children) n += c.size();
  return n;
}

ProofScript ProofScript::with_origin(const std::string& name) const {
  ProofNode n = *node_;
  n.origin = name;
  return ProofScript(std::move(n));
}

bool operator==(const ProofScript& x, const ProofScript& y) {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  const ProofNode& a = *x.node_;
  const ProofNode& b = *y.node_;
  return a.rule == b.rule && a.name == b.name && a.formula == b.formula &&
         a.type == b.type && a.kind == b.kind && a.term == b.term &&
         a.labels == b.labels && a.split == b.split && a.lhs == b.lhs &&
         a.rhs == b.rhs && a.backward == b.backward && a.trace == b.trace &&
         a.children == b.children;
}

namespace rules {

namespace {
ProofScript make(ProofNode n) { return ProofScript(std::move(n)); }
}  // namespace

ProofScript axiom(const std::string& label, const Formula& p) {
  ProofNode n;
  n.rule = Rule::Axiom;
  n.name = label;
  n.formula = p;
  return make(std::move(n));
}

ProofScript weakening(const std::string& label, const Formula& p,
                      const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Weakening;
  n.name = label;
  n.formula = p;
  n.children = {child};
  return make(std::move(n));
}

ProofScript application(const ProofScript& fn, const ProofScript& arg,
                        std::optional<LabelSplit> split) {
  ProofNode n;
  n.rule = Rule::Application;
  n.split = std::move(split);
  n.children = {fn, arg};
  return make(std::move(n));
}

ProofScript abstraction(const std::string& label, const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Abstraction;
  n.name = label;
  n.children = {child};
  return make(std::move(n));
}

ProofScript promotion(
    const std::vector<std::pair<std::string, ProofScript>>& premises,
    const ProofScript& inner) {
  ProofNode n;
  n.rule = Rule::Promotion;
  for (const auto& [label, proof] : premises) {
    n.labels.push_back(label);
    n.children.push_back(proof);
  }
  n.children.push_back(inner);
  return make(std::move(n));
}

ProofScript contraction(const std::string& label, const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Contraction;
  n.name = label;
  n.children = {child};
  return make(std::move(n));
}

ProofScript intro_type(const std::string& v, const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::IntroType;
  n.name = v;
  n.children = {child};
  return make(std::move(n));
}

ProofScript intro1(const std::string& v, const Type& type,
                   const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Intro1;
  n.name = v;
  n.type = type;
  n.children = {child};
  return make(std::move(n));
}

ProofScript intro2(const std::string& v, const std::vector<Type>& kind,
                   const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Intro2;
  n.name = v;
  n.kind = kind;
  n.children = {child};
  return make(std::move(n));
}

ProofScript elim_type(const Type& type, const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::ElimType;
  n.type = type;
  n.children = {child};
  return make(std::move(n));
}

ProofScript elim1(const Term& term, const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Elim1;
  n.term = term;
  n.children = {child};
  return make(std::move(n));
}

ProofScript elim2(const std::vector<std::string>& params, const Formula& q,
                  const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Elim2;
  n.labels = params;
  n.formula = q;
  n.children = {child};
  return make(std::move(n));
}

ProofScript equality(const std::string& hole, const Type& type,
                     const Formula& q, const Term& lhs, const Term& rhs,
                     bool backward, const Trace& trace,
                     const ProofScript& child) {
  ProofNode n;
  n.rule = Rule::Equality;
  n.name = hole;
  n.type = type;
  n.formula = q;
  n.lhs = lhs;
  n.rhs = rhs;
  n.backward = backward;
  n.trace = trace;
  n.children = {child};
  return make(std::move(n));
}

}  // namespace rules

Formula apply_equality(const Formula& p1, const Formula& q,
                       const std::string& x, const Term& t1, const Term& t2) {
  Formula expected = subst(q, x, t1);
  if (!beta_equivalent(p1, expected)) {
    fail(ErrorCode::HoleMismatch, "formula " + to_string(p1) +
                                      " is not the hole instance " +
                                      to_string(expected));
  }
  return subst(q, x, t2);
}

Context extraction_context(const Signature& sigma, const Sequent& s) {
  Context ctx = gamma_star(Context(sigma).append(s.gamma));
  for (const Hypothesis& h : s.delta) {
    ctx.add_term_var(h.label, minus_proj(h.formula));
  }
  return ctx;
}

std::string to_string(const Sequent& s) {
  std::string out = to_string(s.gamma);
  out += " ; ";
  for (std::size_t i = 0; i < s.delta.size(); ++i) {
    if (i) out += ", ";
    out += s.delta[i].label + " : " + to_string(s.delta[i].formula);
  }
  out += " |- " + to_string(s.term) + " : " + to_string(s.goal);
  return out;
}

namespace {

// Contexts threaded down the tree.
struct Scope {
  Context full;       // Sigma, Gamma
  Context full_star;  // (Sigma, Gamma)*
  Context gamma;      // Gamma only
};

std::vector<std::string> labels_of(const std::vector<Hypothesis>& delta) {
  std::vector<std::string> out;
  for (const Hypothesis& h : delta) out.push_back(h.label);
  std::sort(out.begin(), out.end());
  return out;
}

int count_label(const std::vector<Hypothesis>& delta, const std::string& l) {
  int n = 0;
  for (const Hypothesis& h : delta) n += h.label == l;
  return n;
}

const Hypothesis* find_label(const std::vector<Hypothesis>& delta,
                             const std::string& l) {
  for (const Hypothesis& h : delta) {
    if (h.label == l) return &h;
  }
  return nullptr;
}

// Multiset union; shared labels must carry the same !-formula.
std::vector<Hypothesis> merge(const std::vector<Hypothesis>& a,
                              const std::vector<Hypothesis>& b) {
  for (const Hypothesis& h : b) {
    if (const Hypothesis* g = find_label(a, h.label)) {
      if (g->formula.kind() != FormulaKind::Bang ||
          !beta_equivalent(g->formula, h.formula)) {
        fail(ErrorCode::LinearityViolation,
             "hypothesis " + h.label + " is used twice but is not a shared " +
                 "!-formula");
      }
    }
  }
  std::vector<Hypothesis> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class Checker {
 public:
  explicit Checker(const CheckOptions& options) : options_(options) {}

  Derivation check(const ProofScript& s, const Scope& scope) {
    Derivation d = check_rule(s, scope);
    if (options_.check_extraction) verify_extraction(d, scope);
    return d;
  }

 private:
  Derivation child(const ProofScript& s, const Scope& scope, int index,
                   Rule parent) {
    try {
      return check(s, scope);
    } catch (Error& e) {
      e.push_frame(std::string(rule_name(parent)) + "[" +
                   std::to_string(index) + "]");
      throw;
    }
  }

  void require_children(const ProofScript& s, std::size_t n) {
    if (s->children.size() != n) {
      fail(ErrorCode::IllFormedPayload,
           std::string(rule_name(s->rule)) + " expects " + std::to_string(n) +
               " premises, got " + std::to_string(s->children.size()));
    }
  }

  void wf_formula(const Scope& scope, const Formula& p) {
    if (p.is_null()) fail(ErrorCode::IllFormedPayload, "missing formula");
    try {
      check_formula(scope.full, p);
    } catch (const Error& e) {
      fail(ErrorCode::WellformednessFailure,
           "formula " + to_string(p) + " is not well-formed: " + e.describe());
    }
  }

  void wf_type(const Scope& scope, const Type& t) {
    if (t.is_null()) fail(ErrorCode::IllFormedPayload, "missing type");
    try {
      check_type(scope.full, t);
    } catch (const Error& e) {
      fail(ErrorCode::WellformednessFailure,
           "type " + to_string(t) + " is not well-formed: " + e.describe());
    }
  }

  void fresh_label(const Scope& scope, const std::string& label) {
    if (label.empty()) fail(ErrorCode::IllFormedPayload, "empty label");
    if (scope.full.find(EntryKind::TermVar, label)) {
      fail(ErrorCode::IllFormedPayload,
           "label " + label + " clashes with a declared variable");
    }
  }

  void fresh_binder(const Scope& scope, EntryKind kind,
                    const std::string& name) {
    if (name.empty() || name[0] == '%') {
      fail(ErrorCode::IllFormedPayload, "invalid variable name '" + name + "'");
    }
    if (scope.full.find(kind, name)) {
      fail(ErrorCode::IllFormedPayload,
           "variable " + name + " is already declared");
    }
  }

  Derivation check_rule(const ProofScript& s, const Scope& scope) {
    const ProofNode& n = s.node();
    Derivation d;
    d.rule = n.rule;
    d.script = s;
    Sequent& out = d.sequent;
    out.gamma = scope.gamma;
    switch (n.rule) {
      case Rule::Axiom: {
        require_children(s, 0);
        fresh_label(scope, n.name);
        wf_formula(scope, n.formula);
        out.delta = {{n.name, n.formula}};
        out.term = var(n.name);
        out.goal = n.formula;
        return d;
      }
      case Rule::Weakening: {
        require_children(s, 1);
        Derivation c = child(n.children[0], scope, 0, n.rule);
        fresh_label(scope, n.name);
        wf_formula(scope, n.formula);
        if (find_label(c.sequent.delta, n.name)) {
          fail(ErrorCode::LinearityViolation,
               "weakening with label " + n.name + " already in the context");
        }
        out.delta = c.sequent.delta;
        out.delta.push_back({n.name, n.formula});
        out.term = c.sequent.term;
        out.goal = c.sequent.goal;
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::Application: {
        require_children(s, 2);
        Derivation f = child(n.children[0], scope, 0, n.rule);
        Derivation a = child(n.children[1], scope, 1, n.rule);
        const Formula& fg = f.sequent.goal;
        if (fg.kind() != FormulaKind::Lolli) {
          fail(ErrorCode::RuleViolation,
               "application of a proof of " + to_string(fg) +
                   ", which is not an implication");
        }
        if (!beta_equivalent(fg.lhs(), a.sequent.goal)) {
          fail(ErrorCode::RuleViolation,
               "argument proves " + to_string(a.sequent.goal) +
                   ", expected " + to_string(fg.lhs()));
        }
        if (n.split) {
          std::vector<std::string> l = n.split->left, r = n.split->right;
          std::sort(l.begin(), l.end());
          std::sort(r.begin(), r.end());
          if (l != labels_of(f.sequent.delta) ||
              r != labels_of(a.sequent.delta)) {
            fail(ErrorCode::LinearityViolation,
                 "the declared split of the linear context does not match "
                 "the premises");
          }
        }
        out.delta = merge(f.sequent.delta, a.sequent.delta);
        out.term = app(f.sequent.term, a.sequent.term);
        out.goal = fg.rhs();
        d.children.push_back(std::move(f));
        d.children.push_back(std::move(a));
        return d;
      }
      case Rule::Abstraction: {
        require_children(s, 1);
        Derivation c = child(n.children[0], scope, 0, n.rule);
        int count = count_label(c.sequent.delta, n.name);
        if (count == 0) {
          fail(ErrorCode::LinearityViolation,
               "abstracted label " + n.name + " is not a hypothesis");
        }
        if (count > 1) {
          fail(ErrorCode::LinearityViolation,
               "abstracted label " + n.name + " occurs " +
                   std::to_string(count) + " times; contract it first");
        }
        Formula p;
        for (const Hypothesis& h : c.sequent.delta) {
          if (h.label == n.name) {
            p = h.formula;
          } else {
            out.delta.push_back(h);
          }
        }
        out.term = lam(n.name, minus_proj(p), c.sequent.term);
        out.goal = lolli(p, c.sequent.goal);
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::Promotion: {
        if (n.children.size() != n.labels.size() + 1) {
          fail(ErrorCode::IllFormedPayload,
               "promotion needs one premise per inner label plus the inner "
               "proof");
        }
        std::size_t k = n.labels.size();
        std::map<std::string, Term> values;
        std::vector<Formula> inner_formulas;
        for (std::size_t i = 0; i < k; ++i) {
          Derivation p = child(n.children[i], scope, static_cast<int>(i), n.rule);
          const Formula& g = p.sequent.goal;
          if (g.kind() != FormulaKind::Bang) {
            fail(ErrorCode::PromotionShape,
                 "premise " + std::to_string(i) + " proves " + to_string(g) +
                     ", which is not a !-formula");
          }
          if (values.count(n.labels[i])) {
            fail(ErrorCode::PromotionShape,
                 "inner label " + n.labels[i] + " is used twice");
          }
          fresh_label(scope, n.labels[i]);
          values[n.labels[i]] = p.sequent.term;
          inner_formulas.push_back(g.body());
          out.delta = merge(out.delta, p.sequent.delta);
          d.children.push_back(std::move(p));
        }
        Derivation inner =
            child(n.children[k], scope, static_cast<int>(k), n.rule);
        const auto& id = inner.sequent.delta;
        if (id.size() != k) {
          fail(ErrorCode::PromotionShape,
               "inner proof has " + std::to_string(id.size()) +
                   " hypotheses, expected exactly " + std::to_string(k));
        }
        for (std::size_t i = 0; i < k; ++i) {
          const Hypothesis* h = find_label(id, n.labels[i]);
          if (!h || count_label(id, n.labels[i]) != 1) {
            fail(ErrorCode::PromotionShape,
                 "inner proof must use hypothesis " + n.labels[i] +
                     " exactly once");
          }
          if (!beta_equivalent(h->formula, inner_formulas[i])) {
            fail(ErrorCode::PromotionShape,
                 "inner hypothesis " + n.labels[i] + " : " +
                     to_string(h->formula) + " does not match premise " +
                     to_string(inner_formulas[i]));
          }
        }
        out.term = subst(inner.sequent.term, values);
        out.goal = bang(inner.sequent.goal);
        d.children.push_back(std::move(inner));
        return d;
      }
      case Rule::Contraction: {
        require_children(s, 1);
        Derivation c = child(n.children[0], scope, 0, n.rule);
        int count = count_label(c.sequent.delta, n.name);
        const Hypothesis* h = find_label(c.sequent.delta, n.name);
        if (h && h->formula.kind() != FormulaKind::Bang) {
          fail(ErrorCode::NonBangContraction,
               "contraction of " + n.name + " : " + to_string(h->formula));
        }
        if (count < 2) {
          fail(ErrorCode::LinearityViolation,
               "contraction of " + n.name + " which occurs " +
                   std::to_string(count) + " time(s)");
        }
        bool dropped = false;
        for (const Hypothesis& g : c.sequent.delta) {
          if (!dropped && g.label == n.name) {
            dropped = true;
            continue;
          }
          out.delta.push_back(g);
        }
        out.term = c.sequent.term;
        out.goal = c.sequent.goal;
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::IntroType: {
        require_children(s, 1);
        fresh_binder(scope, EntryKind::TypeVar, n.name);
        if (is_alpha_name(n.name)) {
          fail(ErrorCode::IllFormedPayload,
               "type variable " + n.name + " uses the reserved '@' prefix");
        }
        Scope inner = scope;
        inner.full.add_type_var(n.name);
        inner.full_star.add_type_var(n.name);
        inner.gamma.add_type_var(n.name);
        Derivation c = child(n.children[0], inner, 0, n.rule);
        for (const Hypothesis& h : c.sequent.delta) {
          if (free_type_vars(h.formula).count(n.name)) {
            fail(ErrorCode::SideConditionFreeVariable,
                 "type variable " + n.name + " is free in hypothesis " +
                     h.label);
          }
        }
        out.delta = c.sequent.delta;
        out.term = c.sequent.term;
        out.goal = forall_type(n.name, c.sequent.goal);
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::Intro1: {
        require_children(s, 1);
        fresh_binder(scope, EntryKind::TermVar, n.name);
        wf_type(scope, n.type);
        Scope inner = scope;
        inner.full.add_term_var(n.name, n.type);
        inner.full_star.add_term_var(n.name, n.type);
        inner.gamma.add_term_var(n.name, n.type);
        Derivation c = child(n.children[0], inner, 0, n.rule);
        for (const Hypothesis& h : c.sequent.delta) {
          if (h.label == n.name || free_term_vars(h.formula).count(n.name)) {
            fail(ErrorCode::SideConditionFreeVariable,
                 "variable " + n.name + " is free in hypothesis " + h.label);
          }
        }
        out.delta = c.sequent.delta;
        out.term = c.sequent.term;
        out.goal = forall1(n.name, n.type, c.sequent.goal);
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::Intro2: {
        require_children(s, 1);
        fresh_binder(scope, EntryKind::PredVar, n.name);
        if (scope.full_star.has_type_var(alpha_of(n.name))) {
          fail(ErrorCode::IllFormedPayload,
               "type variable " + alpha_of(n.name) + " is already declared");
        }
        for (const Type& t : n.kind) wf_type(scope, t);
        Scope inner = scope;
        inner.full.add_pred_var(n.name, n.kind);
        inner.full_star.add_type_var(alpha_of(n.name));
        inner.gamma.add_pred_var(n.name, n.kind);
        Derivation c = child(n.children[0], inner, 0, n.rule);
        for (const Hypothesis& h : c.sequent.delta) {
          if (free_pred_vars(h.formula).count(n.name) ||
              free_type_vars(h.formula).count(alpha_of(n.name))) {
            fail(ErrorCode::SideConditionFreeVariable,
                 "predicate variable " + n.name + " is free in hypothesis " +
                     h.label);
          }
        }
        out.delta = c.sequent.delta;
        out.term = tylam(alpha_of(n.name), c.sequent.term);
        out.goal = forall2(n.name, n.kind, c.sequent.goal);
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::ElimType: {
        require_children(s, 1);
        Derivation c = child(n.children[0], scope, 0, n.rule);
        if (c.sequent.goal.kind() != FormulaKind::ForallType) {
          fail(ErrorCode::RuleViolation,
               "type elimination on " + to_string(c.sequent.goal));
        }
        wf_type(scope, n.type);
        out.delta = c.sequent.delta;
        out.term = c.sequent.term;
        out.goal = instantiate(c.sequent.goal, n.type);
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::Elim1: {
        require_children(s, 1);
        Derivation c = child(n.children[0], scope, 0, n.rule);
        const Formula& g = c.sequent.goal;
        if (g.kind() != FormulaKind::Forall1) {
          fail(ErrorCode::RuleViolation,
               "first-order elimination on " + to_string(g));
        }
        if (n.term.is_null()) fail(ErrorCode::IllFormedPayload, "missing term");
        Type actual;
        try {
          actual = infer_type(scope.full, n.term);
        } catch (const Error& e) {
          fail(ErrorCode::WellformednessFailure,
               "term " + to_string(n.term) + " is ill-typed: " + e.describe());
        }
        if (!(actual == g.type())) {
          fail(ErrorCode::WellformednessFailure,
               "term " + to_string(n.term) + " has type " + to_string(actual) +
                   ", expected " + to_string(g.type()));
        }
        out.delta = c.sequent.delta;
        out.term = c.sequent.term;
        out.goal = instantiate(g, n.term);
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::Elim2: {
        require_children(s, 1);
        Derivation c = child(n.children[0], scope, 0, n.rule);
        const Formula& g = c.sequent.goal;
        if (g.kind() != FormulaKind::Forall2) {
          fail(ErrorCode::RuleViolation,
               "second-order elimination on " + to_string(g));
        }
        if (n.labels.size() != g.pred_kind().size()) {
          fail(ErrorCode::IllFormedPayload,
               "predicate has " + std::to_string(n.labels.size()) +
                   " parameters, the quantifier expects " +
                   std::to_string(g.pred_kind().size()));
        }
        Scope qscope = scope;
        for (std::size_t i = 0; i < n.labels.size(); ++i) {
          fresh_binder(qscope, EntryKind::TermVar, n.labels[i]);
          qscope.full.add_term_var(n.labels[i], g.pred_kind()[i]);
        }
        wf_formula(qscope, n.formula);
        std::string x = fresh_name();
        out.delta = c.sequent.delta;
        out.term = tyapp(c.sequent.term, minus_proj(n.formula));
        out.goal = subst_pred(open_with(g, x), x, n.labels, n.formula);
        d.children.push_back(std::move(c));
        return d;
      }
      case Rule::Equality: {
        require_children(s, 1);
        Derivation c = child(n.children[0], scope, 0, n.rule);
        fresh_binder(scope, EntryKind::TermVar, n.name);
        wf_type(scope, n.type);
        Scope qscope = scope;
        qscope.full.add_term_var(n.name, n.type);
        try {
          check_formula(qscope.full, n.formula);
        } catch (const Error& e) {
          fail(ErrorCode::IllFormedPayload,
               "hole formula " + to_string(n.formula) +
                   " is not well-formed: " + e.describe());
        }
        for (const Term* t : {&n.lhs, &n.rhs}) {
          if (t->is_null()) fail(ErrorCode::IllFormedPayload, "missing term");
          Type actual;
          try {
            actual = infer_type(scope.full, *t);
          } catch (const Error& e) {
            fail(ErrorCode::WellformednessFailure,
                 "term " + to_string(*t) + " is ill-typed: " + e.describe());
          }
          if (!(actual == n.type)) {
            fail(ErrorCode::WellformednessFailure,
                 "term " + to_string(*t) + " has type " + to_string(actual) +
                     ", expected " + to_string(n.type));
          }
        }
        Formula result =
            apply_equality(c.sequent.goal, n.formula, n.name, n.lhs, n.rhs);
        try {
          if (n.backward) {
            verify_trace(scope.full, options_.equations, n.type, n.rhs, n.lhs,
                         n.trace);
          } else {
            verify_trace(scope.full, options_.equations, n.type, n.lhs, n.rhs,
                         n.trace);
          }
        } catch (const Error& e) {
          Error wrapped(ErrorCode::EqualityTraceRejected,
                        "trace does not prove " + to_string(n.lhs) + " = " +
                            to_string(n.rhs) + ": " + e.describe());
          wrapped.set_step(e.step());
          throw wrapped;
        }
        out.delta = c.sequent.delta;
        out.term = c.sequent.term;
        out.goal = result;
        d.children.push_back(std::move(c));
        return d;
      }
    }
    fail(ErrorCode::PreconditionViolation, "unknown rule");
  }

  void verify_extraction(const Derivation& d, const Scope& scope) {
    Context ctx = scope.full_star;
    for (const Hypothesis& h : d.sequent.delta) {
      ctx.add_term_var(h.label, minus_proj(h.formula));
    }
    Type expected = minus_proj(d.sequent.goal);
    Type actual;
    try {
      actual = infer_type(ctx, d.sequent.term);
    } catch (const Error& e) {
      fail(ErrorCode::PreconditionViolation,
           "extracted term " + to_string(d.sequent.term) +
               " is ill-typed: " + e.describe());
    }
    if (!(actual == expected)) {
      fail(ErrorCode::PreconditionViolation,
           "extracted term has type " + to_string(actual) + ", expected " +
               to_string(expected));
    }
  }

  const CheckOptions& options_;
};

}  // namespace

CheckedProof check_proof(const ProofScript& script, const CheckOptions& options,
                         const Context& gamma) {
  if (script.is_null()) fail(ErrorCode::IllFormedPayload, "empty proof");
  Scope scope;
  scope.full = Context(options.signature).append(gamma);
  check_context(scope.full);
  scope.full_star = gamma_star(scope.full);
  scope.gamma = gamma;
  Checker checker(options);
  CheckedProof out;
  out.root = checker.check(script, scope);
  out.signature = options.signature;
  return out;
}

// ---------------------------------------------------------------------------
// Freshening

namespace {

struct Renaming {
  std::map<std::string, std::string> term, type, pred, label;
};

void collect_names(const ProofScript& s, std::set<std::string>& out) {
  const ProofNode& n = s.node();
  out.insert(n.name);
  for (const std::string& l : n.labels) out.insert(l);
  if (!n.formula.is_null()) {
    for (auto& v : free_term_vars(n.formula)) out.insert(v);
    for (auto& v : free_type_vars(n.formula)) out.insert(v);
    for (auto& v : free_pred_vars(n.formula)) out.insert(v);
  }
  for (const Term* t : {&n.term, &n.lhs, &n.rhs}) {
    if (t->is_null()) continue;
    for (auto& v : free_term_vars(*t)) out.insert(v);
    for (auto& v : free_type_vars(*t)) out.insert(v);
  }
  if (!n.type.is_null()) {
    for (auto& v : free_type_vars(n.type)) out.insert(v);
  }
  for (const ProofScript& c : n.children) collect_names(c, out);
}

class Freshener {
 public:
  Freshener(const ProofScript& s, const std::set<std::string>& avoid)
      : taken_(avoid) {
    collect_names(s, taken_);
  }

  ProofScript run(const ProofScript& s, std::set<std::string> scope,
                  const Renaming& r) {
    const ProofNode& n = s.node();
    ProofNode out = n;
    Renaming inner = r;
    // Payload fields that live in the scope of this node.
    out.formula = n.formula.is_null() ? n.formula : formula(n.formula, r);
    out.type = n.type.is_null() ? n.type : type(n.type, r);
    for (Type& t : out.kind) t = type(t, r);
    out.term = n.term.is_null() ? n.term : term(n.term, r);
    out.lhs = n.lhs.is_null() ? n.lhs : term(n.lhs, r);
    out.rhs = n.rhs.is_null() ? n.rhs : term(n.rhs, r);
    out.trace = trace(n.trace, r);
    if (n.split) {
      for (auto& l : out.split->left) l = label(l, r);
      for (auto& l : out.split->right) l = label(l, r);
    }
    switch (n.rule) {
      case Rule::Axiom:
      case Rule::Weakening:
      case Rule::Contraction:
        out.name = label(n.name, r);
        break;
      case Rule::Abstraction:
        out.name = bind(n.name, scope, inner.label);
        break;
      case Rule::IntroType:
        out.name = bind(n.name, scope, inner.type);
        break;
      case Rule::Intro1:
        out.name = bind(n.name, scope, inner.term);
        break;
      case Rule::Intro2: {
        out.name = bind(n.name, scope, inner.pred);
        if (out.name != n.name) {
          inner.type[alpha_of(n.name)] = alpha_of(out.name);
        }
        break;
      }
      case Rule::Elim2: {
        // Parameters are local to Q.
        Renaming local = r;
        std::set<std::string> qscope = scope;
        for (std::string& p : out.labels) p = bind(p, qscope, local.term);
        out.formula = formula(n.formula, local);
        break;
      }
      case Rule::Equality: {
        Renaming local = r;
        std::set<std::string> qscope = scope;
        out.name = bind(n.name, qscope, local.term);
        out.formula = formula(n.formula, local);
        break;
      }
      default:
        break;
    }
    if (n.rule == Rule::Promotion) {
      std::size_t k = n.labels.size();
      for (std::size_t i = 0; i < k; ++i) {
        out.children[i] = run(n.children[i], scope, r);
      }
      std::set<std::string> iscope = scope;
      Renaming ir = r;
      for (std::string& l : out.labels) l = bind(l, iscope, ir.label);
      out.children[k] = run(n.children[k], iscope, ir);
    } else {
      for (auto& c : out.children) c = run(c, scope, inner);
    }
    ProofScript result(std::move(out));
    if (result == s) return s;
    return result;
  }

 private:
  std::string bind(const std::string& name, std::set<std::string>& scope,
                   std::map<std::string, std::string>& map) {
    std::string out = name;
    if (scope.count(name)) {
      int k = 1;
      do {
        out = name + "_" + std::to_string(k++);
      } while (taken_.count(out));
      taken_.insert(out);
      map[name] = out;
    } else {
      map.erase(name);
    }
    scope.insert(out);
    return out;
  }

  static std::string label(const std::string& l, const Renaming& r) {
    auto it = r.label.find(l);
    return it == r.label.end() ? l : it->second;
  }

  static Type type(const Type& t, const Renaming& r) {
    Type out = t;
    for (const auto& [from, to] : r.type) out = subst(out, from, tvar(to));
    return out;
  }

  static Term term(const Term& t, const Renaming& r) {
    Term out = t;
    std::map<std::string, Term> values;
    for (const auto& [from, to] : r.term) values[from] = var(to);
    out = subst(out, values);
    for (const auto& [from, to] : r.type) out = subst_type(out, from, tvar(to));
    return out;
  }

  static Formula formula(const Formula& p, const Renaming& r) {
    Formula out = p;
    for (const auto& [from, to] : r.term) out = subst(out, from, var(to));
    for (const auto& [from, to] : r.type) out = subst_type(out, from, tvar(to));
    for (const auto& [from, to] : r.pred) out = rename_pred(out, from, to);
    return out;
  }

  static Trace trace(const Trace& t, const Renaming& r) {
    Trace out = t;
    for (auto& [name, value] : out.instance) value = term(value, r);
    for (Trace& s : out.steps) s = trace(s, r);
    return out;
  }

  std::set<std::string> taken_;
};

}  // namespace

ProofScript freshen(const ProofScript& script,
                    const std::set<std::string>& avoid) {
  Freshener f(script, avoid);
  return f.run(script, avoid, Renaming{});
}

}  // namespace elx
