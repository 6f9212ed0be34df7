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

#include "elx/rewrite.hpp"

#include <functional>
#include <map>
#include <set>

#include "elx/error.hpp"
#include "elx/library.hpp"

namespace elx {

bool operator==(const Equation& a, const Equation& b) {
  return a.name == b.name && equation_formula(a) == equation_formula(b);
}

Formula equation_formula(const Equation& eq) {
  Formula p = equality(eq.type, eq.lhs, eq.rhs);
  for (auto it = eq.params.rbegin(); it != eq.params.rend(); ++it) {
    p = forall1(it->first, it->second, p);
  }
  return p;
}

Equation equation_from_formula(const std::string& name, const Formula& p) {
  Equation eq;
  eq.name = name;
  Formula cur = p;
  std::set<std::string> used = free_term_vars(p);
  while (cur.kind() == FormulaKind::Forall1) {
    std::string x = cur.name().empty() ? "x" : cur.name();
    while (used.count(x)) x += "'";
    used.insert(x);
    eq.params.emplace_back(x, cur.type());
    cur = open_with(cur, x);
  }
  auto parts = match_equality(cur);
  if (!parts) {
    fail(ErrorCode::IllFormedPayload,
         "equation " + name + " is not of the form forall x.. t1 = t2");
  }
  eq.type = parts->type;
  eq.lhs = parts->lhs;
  eq.rhs = parts->rhs;
  return eq;
}

const Equations& standard_equations() {
  static const Equations eqs = [] {
    Type n = nat_type();
    Type nn = arrow(n, n);
    Term x = var("x"), y = var("y"), f = var("f");
    Term zero = var("0");
    auto s = [](const Term& t) { return app(var("s"), t); };
    auto call = [](const char* fn, std::vector<Term> args) {
      return app(var(fn), args);
    };
    Type a = tvar("a");
    Term succ_body = tylam(
        "a", lam("f", arrow(a, a),
                 lam("x", a, app(tyapp(var("n"), a),
                                 {var("f"), app(var("f"), var("x"))}))));
    Equations out = {
        {"zero_def", {}, n, zero, church_numeral(0)},
        {"succ_def", {{"n", n}}, n, s(var("n")), succ_body},
        {"plus_succ", {{"x", n}, {"y", n}}, n, call("plus", {x, s(y)}),
         s(call("plus", {x, y}))},
        {"plus_zero", {{"x", n}}, n, call("plus", {x, zero}), x},
        {"mult_succ", {{"x", n}, {"y", n}}, n, call("mult", {x, s(y)}),
         call("plus", {x, call("mult", {x, y})})},
        {"mult_zero", {{"x", n}}, n, call("mult", {x, zero}), zero},
        {"pred_succ", {{"x", n}}, n, call("pred", {s(x)}), x},
        {"pred_zero", {}, n, call("pred", {zero}), zero},
        {"minus_succ", {{"x", n}, {"y", n}}, n, call("minus", {x, s(y)}),
         call("pred", {call("minus", {x, y})})},
        {"minus_zero", {{"x", n}}, n, call("minus", {x, zero}), x},
        {"sum_succ", {{"x", n}, {"f", nn}}, n, call("sum", {f, s(x)}),
         call("plus", {call("sum", {f, x}), app(f, x)})},
        {"sum_zero", {{"f", nn}}, n, call("sum", {f, zero}), zero},
        {"prod_succ", {{"x", n}, {"f", nn}}, n, call("prod", {f, s(x)}),
         call("mult", {call("prod", {f, x}), app(f, x)})},
        {"prod_zero", {{"f", nn}}, n, call("prod", {f, zero}), s(zero)},
    };
    return out;
  }();
  return eqs;
}

const Equation* find_equation(const Equations& eqs, const std::string& name) {
  for (const Equation& e : eqs) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

bool is_constructor_definition(const std::string& name) {
  return name == "zero_def" || name == "succ_def";
}

// ---------------------------------------------------------------------------
// Traces

Trace Trace::refl() { return Trace{}; }

Trace Trace::axiom(std::string equation, bool reversed, Position position,
                   std::vector<std::pair<std::string, Term>> instance) {
  Trace t;
  t.kind = TraceKind::Axiom;
  t.equation = std::move(equation);
  t.reversed = reversed;
  t.position = std::move(position);
  t.instance = std::move(instance);
  return t;
}

Trace Trace::beta(Position position, bool expansion) {
  Trace t;
  t.kind = TraceKind::Beta;
  t.position = std::move(position);
  t.reversed = expansion;
  return t;
}

Trace Trace::sym(Trace inner) {
  Trace t;
  t.kind = TraceKind::Sym;
  t.steps.push_back(std::move(inner));
  return t;
}

Trace Trace::trans(std::vector<Trace> steps) {
  Trace t;
  t.kind = TraceKind::Trans;
  t.steps = std::move(steps);
  return t;
}

Trace Trace::cong(Position position, Trace inner) {
  Trace t;
  t.kind = TraceKind::Cong;
  t.position = std::move(position);
  t.steps.push_back(std::move(inner));
  return t;
}

Trace Trace::ext(std::string v, Trace inner) {
  Trace t;
  t.kind = TraceKind::Ext;
  t.var = std::move(v);
  t.steps.push_back(std::move(inner));
  return t;
}

bool operator==(const Trace& a, const Trace& b) {
  return a.kind == b.kind && a.equation == b.equation &&
         a.instance == b.instance && a.reversed == b.reversed &&
         a.position == b.position && a.var == b.var && a.steps == b.steps;
}

int trace_size(const Trace& t) {
  int n = 1;
  for (const Trace& s : t.steps) n += trace_size(s);
  return n;
}

std::string to_string(const Position& pos) {
  std::string out = "[";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(pos[i]);
  }
  return out + "]";
}

namespace {

[[noreturn]] void mismatch(int step, const std::string& message) {
  Error e(ErrorCode::StepMismatch, message);
  e.set_step(step);
  throw e;
}

[[noreturn]] void fail_at_step(ErrorCode code, int step,
                               const std::string& message) {
  Error e(code, message);
  e.set_step(step);
  throw e;
}

int child_count(const Term& t) {
  switch (t.kind()) {
    case TermKind::App:
      return 2;
    case TermKind::TyApp:
    case TermKind::Lam:
    case TermKind::TyLam:
      return 1;
    default:
      return 0;
  }
}

using Rewriter = std::function<Term(const Term&, const Context&)>;

// Replaces the subterm of t at pos[i..] by f(subterm, context).
Term rewrite_at(const Term& t, const Position& pos, std::size_t i,
                const Context& ctx, const Rewriter& f, int step) {
  if (i == pos.size()) return f(t, ctx);
  int c = pos[i];
  if (c < 0 || c >= child_count(t)) {
    fail_at_step(ErrorCode::PositionOutOfRange, step,
                 "position " + to_string(pos) + " does not exist in " +
                     to_string(t));
  }
  switch (t.kind()) {
    case TermKind::App:
      if (c == 0) return app(rewrite_at(t.fn(), pos, i + 1, ctx, f, step), t.arg());
      return app(t.fn(), rewrite_at(t.arg(), pos, i + 1, ctx, f, step));
    case TermKind::TyApp:
      return tyapp(rewrite_at(t.fn(), pos, i + 1, ctx, f, step), t.type());
    case TermKind::Lam: {
      std::string x = fresh_name();
      Term r = rewrite_at(open_with(t, x), pos, i + 1,
                          ctx.with_term_var(x, t.type()), f, step);
      return Term::lam_raw(t.name(), t.type(), close_term_var(r, x));
    }
    case TermKind::TyLam: {
      std::string a = fresh_name();
      Term r = rewrite_at(open_with(t, a), pos, i + 1, ctx.with_type_var(a), f,
                          step);
      return Term::tylam_raw(t.name(), close_type_var(r, a));
    }
    default:
      break;
  }
  fail_at_step(ErrorCode::PositionOutOfRange, step, "bad position");
}

using Checker =
    std::function<void(const Term&, const Term&, const Context&)>;

// Requires a and b to agree everywhere except below pos, and calls f on the
// two subterms at pos.
void check_at(const Term& a, const Term& b, const Position& pos,
              std::size_t i, const Context& ctx, const Checker& f, int step) {
  if (i == pos.size()) {
    f(a, b, ctx);
    return;
  }
  int c = pos[i];
  if (c < 0 || c >= child_count(a)) {
    fail_at_step(ErrorCode::PositionOutOfRange, step,
                 "position " + to_string(pos) + " does not exist in " +
                     to_string(a));
  }
  auto differ = [&]() {
    mismatch(step, "terms " + to_string(a) + " and " + to_string(b) +
                       " differ outside position " + to_string(pos));
  };
  if (a.kind() != b.kind()) differ();
  switch (a.kind()) {
    case TermKind::App:
      if (c == 0) {
        if (!(a.arg() == b.arg())) differ();
        check_at(a.fn(), b.fn(), pos, i + 1, ctx, f, step);
      } else {
        if (!(a.fn() == b.fn())) differ();
        check_at(a.arg(), b.arg(), pos, i + 1, ctx, f, step);
      }
      return;
    case TermKind::TyApp:
      if (!(a.type() == b.type())) differ();
      check_at(a.fn(), b.fn(), pos, i + 1, ctx, f, step);
      return;
    case TermKind::Lam: {
      if (!(a.type() == b.type())) differ();
      std::string x = fresh_name();
      check_at(open_with(a, x), open_with(b, x), pos, i + 1,
               ctx.with_term_var(x, a.type()), f, step);
      return;
    }
    case TermKind::TyLam: {
      std::string x = fresh_name();
      check_at(open_with(a, x), open_with(b, x), pos, i + 1,
               ctx.with_type_var(x), f, step);
      return;
    }
    default:
      differ();
  }
}

// First-order matching of `pattern` (whose metavariables are `params`)
// against `subject`.
bool match(const Term& pattern, const Term& subject,
           const std::set<std::string>& params,
           std::map<std::string, Term>& sigma) {
  if (pattern.kind() == TermKind::Var && params.count(pattern.name())) {
    if (!is_locally_closed(subject)) return false;
    auto it = sigma.find(pattern.name());
    if (it != sigma.end()) return it->second == subject;
    sigma.emplace(pattern.name(), subject);
    return true;
  }
  if (pattern.kind() != subject.kind()) return false;
  switch (pattern.kind()) {
    case TermKind::Var:
      return pattern.name() == subject.name();
    case TermKind::Bound:
      return pattern.index() == subject.index();
    case TermKind::App:
      return match(pattern.fn(), subject.fn(), params, sigma) &&
             match(pattern.arg(), subject.arg(), params, sigma);
    case TermKind::TyApp:
      return pattern.type() == subject.type() &&
             match(pattern.fn(), subject.fn(), params, sigma);
    case TermKind::Lam:
      return pattern.type() == subject.type() &&
             match(pattern.body(), subject.body(), params, sigma);
    case TermKind::TyLam:
      return match(pattern.body(), subject.body(), params, sigma);
  }
  return false;
}

std::optional<Term> contract(const Term& t) {
  if (t.kind() == TermKind::App && t.fn().kind() == TermKind::Lam) {
    return instantiate(t.fn(), t.arg());
  }
  if (t.kind() == TermKind::TyApp && t.fn().kind() == TermKind::TyLam) {
    return instantiate(t.fn(), t.type());
  }
  return std::nullopt;
}

class Engine {
 public:
  explicit Engine(const Equations& eqs) : eqs_(eqs) {}

  bool synthesizable(const Trace& t, bool forward) const {
    switch (t.kind) {
      case TraceKind::Refl:
        return true;
      case TraceKind::Axiom: {
        const Equation* eq = find_equation(eqs_, t.equation);
        if (!eq) return true;  // reported when applied
        bool rev = t.reversed != !forward;
        const Term& in = rev ? eq->rhs : eq->lhs;
        std::set<std::string> have = free_term_vars(in);
        for (const auto& [name, value] : t.instance) have.insert(name);
        for (const auto& [name, type] : eq->params) {
          if (!have.count(name)) return false;
        }
        return true;
      }
      case TraceKind::Beta:
        return t.reversed != forward;
      case TraceKind::Sym:
        return synthesizable(t.steps[0], !forward);
      case TraceKind::Trans:
        for (const Trace& s : t.steps) {
          if (!synthesizable(s, forward)) return false;
        }
        return true;
      case TraceKind::Cong:
      case TraceKind::Ext:
        return synthesizable(t.steps[0], forward);
    }
    return false;
  }

  void check(const Trace& t, const Context& ctx, const Term& a, const Term& b,
             int step) {
    switch (t.kind) {
      case TraceKind::Refl:
        if (!(a == b)) {
          mismatch(step, "reflexivity between different terms " +
                             to_string(a) + " and " + to_string(b));
        }
        return;
      case TraceKind::Axiom:
        check_at(a, b, t.position, 0, ctx,
                 [&](const Term& sa, const Term& sb, const Context& c) {
                   axiom(t, t.reversed, c, sa, &sb, step);
                 },
                 step);
        return;
      case TraceKind::Beta:
        check_at(a, b, t.position, 0, ctx,
                 [&](const Term& sa, const Term& sb, const Context&) {
                   const Term& redex = t.reversed ? sb : sa;
                   const Term& result = t.reversed ? sa : sb;
                   auto r = contract(redex);
                   if (!r) mismatch(step, to_string(redex) + " is not a redex");
                   if (!(*r == result)) {
                     mismatch(step, "contracting " + to_string(redex) +
                                        " gives " + to_string(*r) + ", not " +
                                        to_string(result));
                   }
                 },
                 step);
        return;
      case TraceKind::Sym:
        check(t.steps[0], ctx, b, a, step + 1);
        return;
      case TraceKind::Cong:
        check_at(a, b, t.position, 0, ctx,
                 [&](const Term& sa, const Term& sb, const Context& c) {
                   check(t.steps[0], c, sa, sb, step + 1);
                 },
                 step);
        return;
      case TraceKind::Ext: {
        ext_setup(t, ctx, a, &b, step, [&](const Context& c, const Term& fa,
                                           const Term& ga) {
          check(t.steps[0], c, fa, ga, step + 1);
        });
        return;
      }
      case TraceKind::Trans:
        check_trans(t, ctx, a, b, step);
        return;
    }
  }

  Term forward(const Trace& t, const Context& ctx, const Term& a, int step) {
    switch (t.kind) {
      case TraceKind::Refl:
        return a;
      case TraceKind::Axiom:
        return rewrite_at(a, t.position, 0, ctx,
                          [&](const Term& sa, const Context& c) {
                            return axiom(t, t.reversed, c, sa, nullptr, step);
                          },
                          step);
      case TraceKind::Beta:
        if (t.reversed) mismatch(step, "a beta expansion cannot be computed");
        return rewrite_at(a, t.position, 0, ctx,
                          [&](const Term& sa, const Context&) {
                            auto r = contract(sa);
                            if (!r) {
                              mismatch(step, to_string(sa) + " is not a redex");
                            }
                            return *r;
                          },
                          step);
      case TraceKind::Sym:
        return backward(t.steps[0], ctx, a, step + 1);
      case TraceKind::Cong:
        return rewrite_at(a, t.position, 0, ctx,
                          [&](const Term& sa, const Context& c) {
                            return forward(t.steps[0], c, sa, step + 1);
                          },
                          step);
      case TraceKind::Ext: {
        Term result;
        ext_setup(t, ctx, a, nullptr, step,
                  [&](const Context& c, const Term& fa, const Term&) {
                    Term h = forward(t.steps[0], c, fa, step + 1);
                    result = unapply(h, t.var, step);
                  });
        return result;
      }
      case TraceKind::Trans: {
        Term cur = a;
        int s = step + 1;
        for (const Trace& sub : t.steps) {
          cur = forward(sub, ctx, cur, s);
          s += trace_size(sub);
        }
        return cur;
      }
    }
    return a;
  }

  Term backward(const Trace& t, const Context& ctx, const Term& b, int step) {
    switch (t.kind) {
      case TraceKind::Refl:
        return b;
      case TraceKind::Axiom:
        return rewrite_at(b, t.position, 0, ctx,
                          [&](const Term& sb, const Context& c) {
                            return axiom(t, !t.reversed, c, sb, nullptr, step);
                          },
                          step);
      case TraceKind::Beta:
        if (!t.reversed) mismatch(step, "a beta expansion cannot be computed");
        return rewrite_at(b, t.position, 0, ctx,
                          [&](const Term& sb, const Context&) {
                            auto r = contract(sb);
                            if (!r) {
                              mismatch(step, to_string(sb) + " is not a redex");
                            }
                            return *r;
                          },
                          step);
      case TraceKind::Sym:
        return forward(t.steps[0], ctx, b, step + 1);
      case TraceKind::Cong:
        return rewrite_at(b, t.position, 0, ctx,
                          [&](const Term& sb, const Context& c) {
                            return backward(t.steps[0], c, sb, step + 1);
                          },
                          step);
      case TraceKind::Ext: {
        Term result;
        ext_setup(t, ctx, b, nullptr, step,
                  [&](const Context& c, const Term& gb, const Term&) {
                    Term h = backward(t.steps[0], c, gb, step + 1);
                    result = unapply(h, t.var, step);
                  });
        return result;
      }
      case TraceKind::Trans: {
        Term cur = b;
        int s = step + trace_size(t);
        for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) {
          s -= trace_size(*it);
          cur = backward(*it, ctx, cur, s);
        }
        return cur;
      }
    }
    return b;
  }

 private:
  // Applies one equation at the root of `in`. With `expected` set, also
  // matches the output side against it and checks the result.
  Term axiom(const Trace& t, bool reversed, const Context& ctx, const Term& in,
             const Term* expected, int step) {
    const Equation* eq = find_equation(eqs_, t.equation);
    if (!eq) mismatch(step, "unknown equation " + t.equation);
    const Term& from = reversed ? eq->rhs : eq->lhs;
    const Term& to = reversed ? eq->lhs : eq->rhs;
    std::set<std::string> params;
    for (const auto& p : eq->params) params.insert(p.first);
    std::map<std::string, Term> sigma;
    for (const auto& [name, value] : t.instance) {
      if (!params.count(name)) {
        mismatch(step, "equation " + eq->name + " has no parameter " + name);
      }
      sigma[name] = value;
    }
    if (!match(from, in, params, sigma)) {
      mismatch(step, "equation " + eq->name + " does not apply to " +
                         to_string(in));
    }
    if (expected && !match(to, *expected, params, sigma)) {
      mismatch(step, "equation " + eq->name + " does not rewrite " +
                         to_string(in) + " to " + to_string(*expected));
    }
    for (const auto& [name, type] : eq->params) {
      auto it = sigma.find(name);
      if (it == sigma.end()) {
        mismatch(step, "parameter " + name + " of " + eq->name +
                           " is not determined");
      }
      Type actual;
      try {
        actual = infer_type(ctx, it->second);
      } catch (const Error& e) {
        fail_at_step(ErrorCode::IllTypedInstance, step,
                     "instance " + name + " := " + to_string(it->second) +
                         " is ill-typed: " + e.what());
      }
      if (!(actual == type)) {
        fail_at_step(ErrorCode::IllTypedInstance, step,
                     "instance " + name + " := " + to_string(it->second) +
                         " has type " + to_string(actual) + ", expected " +
                         to_string(type));
      }
    }
    Term out = subst(to, sigma);
    if (expected && !(out == *expected)) {
      mismatch(step, "equation " + eq->name + " gives " + to_string(out) +
                         ", not " + to_string(*expected));
    }
    return out;
  }

  // Checks the extensionality side conditions for f (and g if given) and
  // calls k with the extended context and the applications f x, g x.
  template <class K>
  void ext_setup(const Trace& t, const Context& ctx, const Term& f,
                 const Term* g, int step, K&& k) {
    const std::string& x = t.var;
    bool clash = ctx.declares(x) || free_term_vars(f).count(x) ||
                 (g && free_term_vars(*g).count(x));
    if (x.empty() || clash) {
      fail_at_step(ErrorCode::NonFreshExtensionVariable, step,
                   "extensionality variable " + x + " is not fresh");
    }
    Type ft = infer_type(ctx, f);
    if (ft.kind() != TypeKind::Arrow) {
      mismatch(step, "extensionality at non-function type " + to_string(ft));
    }
    Context c = ctx.with_term_var(x, ft.from());
    k(c, app(f, var(x)), g ? app(*g, var(x)) : Term());
  }

  Term unapply(const Term& h, const std::string& x, int step) {
    if (h.kind() != TermKind::App || !(h.arg() == var(x)) ||
        free_term_vars(h.fn()).count(x)) {
      mismatch(step, "extensionality body " + to_string(h) +
                         " is not an application to " + x);
    }
    return h.fn();
  }

  void check_trans(const Trace& t, const Context& ctx, const Term& a,
                   const Term& b, int step) {
    const auto& steps = t.steps;
    std::vector<int> index(steps.size());
    int s = step + 1;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      index[i] = s;
      s += trace_size(steps[i]);
    }
    std::size_t k = 0;
    while (k < steps.size() && synthesizable(steps[k], true)) ++k;
    Term left = a;
    for (std::size_t i = 0; i < k; ++i) {
      left = forward(steps[i], ctx, left, index[i]);
    }
    if (k == steps.size()) {
      if (!(left == b)) {
        mismatch(steps.empty() ? step : index.back(),
                 "trace ends at " + to_string(left) + ", expected " +
                     to_string(b));
      }
      return;
    }
    Term right = b;
    for (std::size_t i = steps.size() - 1; i > k; --i) {
      if (!synthesizable(steps[i], false)) {
        mismatch(index[i], "two steps of a transitivity chain can only be "
                           "checked, not computed");
      }
      right = backward(steps[i], ctx, right, index[i]);
    }
    check(steps[k], ctx, left, right, index[k]);
  }

  const Equations& eqs_;
};

}  // namespace

void verify_trace(const Context& ctx, const Equations& eqs, const Type& type,
                  const Term& t1, const Term& t2, const Trace& trace) {
  for (const Term* t : {&t1, &t2}) {
    Type actual = infer_type(ctx, *t);
    if (!(actual == type)) {
      fail(ErrorCode::PreconditionViolation,
           to_string(*t) + " has type " + to_string(actual) + ", expected " +
               to_string(type));
    }
  }
  Engine(eqs).check(trace, ctx, t1, t2, 0);
}

Term rewrite_forward(const Context& ctx, const Equations& eqs, const Term& t,
                     const Trace& trace) {
  return Engine(eqs).forward(trace, ctx, t, 0);
}

Term subterm_at(const Term& t, const Position& pos) {
  Term out;
  rewrite_at(t, pos, 0, Context(),
             [&out](const Term& sub, const Context&) {
               out = sub;
               return sub;
             },
             0);
  return out;
}

namespace {

class Normalizer {
 public:
  Normalizer(const Equations& eqs, std::uint64_t fuel) : eqs_(eqs), fuel_(fuel) {
    for (const Equation& e : eqs_) {
      std::set<std::string> ps;
      for (const auto& p : e.params) ps.insert(p.first);
      params_.push_back(std::move(ps));
    }
  }

  // One leftmost-outermost step.
  std::optional<Term> step(const Term& t) {
    if (auto r = contract(t)) return r;
    for (std::size_t i = 0; i < eqs_.size(); ++i) {
      std::map<std::string, Term> sigma;
      if (match(eqs_[i].lhs, t, params_[i], sigma) &&
          sigma.size() == params_[i].size()) {
        return subst(eqs_[i].rhs, sigma);
      }
    }
    switch (t.kind()) {
      case TermKind::App:
        if (auto f = step(t.fn())) return app(*f, t.arg());
        if (auto a = step(t.arg())) return app(t.fn(), *a);
        return std::nullopt;
      case TermKind::TyApp:
        if (auto f = step(t.fn())) return tyapp(*f, t.type());
        return std::nullopt;
      case TermKind::Lam:
        if (auto b = step(t.body())) {
          return Term::lam_raw(t.name(), t.type(), *b);
        }
        return std::nullopt;
      case TermKind::TyLam:
        if (auto b = step(t.body())) return Term::tylam_raw(t.name(), *b);
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  Term run(const Term& t) {
    Term cur = t;
    std::uint64_t used = 0;
    while (auto next = step(cur)) {
      if (++used > fuel_) {
        fail(ErrorCode::FuelExhausted,
             "rewriting did not terminate within " + std::to_string(fuel_) +
                 " steps");
      }
      cur = *next;
    }
    return cur;
  }

 private:
  const Equations& eqs_;
  std::vector<std::set<std::string>> params_;
  std::uint64_t fuel_;
};

}  // namespace

Term normalize_with_equations(const Term& t, const Equations& eqs,
                              std::uint64_t fuel) {
  return Normalizer(eqs, fuel).run(t);
}

Term normalize_with_h0(const Term& t, std::uint64_t fuel) {
  static const Equations oriented = [] {
    Equations out;
    for (const Equation& e : standard_equations()) {
      if (!is_constructor_definition(e.name)) out.push_back(e);
    }
    return out;
  }();
  return normalize_with_equations(t, oriented, fuel);
}

}  // namespace elx
