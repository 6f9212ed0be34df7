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


#include "properties.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>

#include "elx/error.hpp"
#include "elx/library.hpp"
#include "elx/projections.hpp"
#include "elx/proof.hpp"
#include "elx/rewrite.hpp"
#include "elx/syntax.hpp"
#include "elx/wellformed.hpp"
#include "named.hpp"
#include "oracle.hpp"

namespace props {
namespace {

using elx::ErrorCode;
using elx::Formula;
using elx::FormulaKind;
using elx::Term;
using elx::TermKind;
using elx::Trace;
using elx::Type;
using elx::TypeKind;

int roll(std::mt19937_64& rng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[roll(rng, static_cast<int>(v.size()))];
}

class Recorder {
 public:
  explicit Recorder(std::string name)
      : start_(std::chrono::steady_clock::now()) {
    out_.name = std::move(name);
  }

  // One generated case; `problems` lists the checks it failed.
  void record(const std::vector<std::string>& problems,
              const std::string& witness) {
    ++out_.cases;
    if (problems.empty()) return;
    if (out_.failures++ == 0) {
      out_.first_failure = problems.front() + " on " + witness;
    }
  }

  void bump(const std::string& counter, std::size_t by = 1) {
    out_.counters[counter] += by;
  }

  Outcome finish() {
    out_.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
    return out_;
  }

 private:
  Outcome out_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Well-typed System F terms with plenty of term and type redexes.

class TypedGen {
 public:
  explicit TypedGen(std::mt19937_64& rng) : rng_(rng) {
    ctx_.add_type_var("a").add_type_var("b");
    Type a = elx::tvar("a"), b = elx::tvar("b");
    add("u", a);
    add("v", b);
    add("g", elx::forall_type("c", elx::arrow(elx::tvar("c"), elx::tvar("c"))));
    add("h", elx::arrow(a, b));
    add("k", elx::arrow(b, elx::arrow(a, a)));
  }

  const elx::Context& context() const { return ctx_; }

  Type goal() { return type(2, {"a", "b"}); }

  std::optional<Term> term(const Type& goal, int depth) {
    budget_ = 4000;
    Scope s{globals_, {"a", "b"}};
    return gen(goal, depth, s);
  }

 private:
  struct Scope {
    std::vector<std::pair<std::string, Type>> vars;
    std::vector<std::string> tvars;
  };

  void add(const std::string& x, const Type& t) {
    ctx_.add_term_var(x, t);
    globals_.emplace_back(x, t);
  }

  std::string fresh(const char* prefix) {
    return prefix + std::to_string(counter_++);
  }

  // Quantified types always start with an argument of the bound type, so
  // every type variable in scope has an inhabitant.
  Type type(int depth, const std::vector<std::string>& tvars) {
    int r = depth <= 0 ? 0 : roll(rng_, 4);
    if (r <= 1) return elx::tvar(pick(rng_, tvars));
    if (r == 2) return elx::arrow(type(depth - 1, tvars), type(depth - 1, tvars));
    std::string c = fresh("c");
    std::vector<std::string> inner = tvars;
    inner.push_back(c);
    return elx::forall_type(c,
                            elx::arrow(elx::tvar(c), type(depth - 1, inner)));
  }

  std::optional<Term> gen(const Type& goal, int depth, const Scope& scope) {
    if (--budget_ < 0) return std::nullopt;
    std::vector<int> options = {0, 1, 2};
    if (depth > 0) options.insert(options.end(), {3, 3, 4, 5, 6});
    std::shuffle(options.begin(), options.end(), rng_);
    // Variables first at the leaves so small terms stay small.
    if (depth <= 0) options = {0, 1, 2};
    for (int o : options) {
      if (auto t = attempt(o, goal, depth, scope)) return t;
    }
    return std::nullopt;
  }

  std::optional<Term> attempt(int option, const Type& goal, int depth,
                              const Scope& scope) {
    switch (option) {
      case 0: {
        std::vector<std::string> hits;
        for (const auto& [x, t] : scope.vars) {
          if (t == goal) hits.push_back(x);
        }
        if (hits.empty()) return std::nullopt;
        return elx::var(pick(rng_, hits));
      }
      case 1: {
        if (goal.kind() != TypeKind::Arrow) return std::nullopt;
        std::string x = fresh("x");
        Scope inner = scope;
        inner.vars.emplace_back(x, goal.from());
        auto body = gen(goal.to(), depth, inner);
        if (!body) return std::nullopt;
        return elx::lam(x, goal.from(), *body);
      }
      case 2: {
        if (goal.kind() != TypeKind::Forall) return std::nullopt;
        std::string c = fresh("t");
        Scope inner = scope;
        inner.tvars.push_back(c);
        auto body = gen(elx::instantiate(goal, elx::tvar(c)), depth, inner);
        if (!body) return std::nullopt;
        return elx::tylam(c, *body);
      }
      case 3: {
        Type sigma = type(1, scope.tvars);
        std::string x = fresh("x");
        Scope inner = scope;
        inner.vars.emplace_back(x, sigma);
        auto body = gen(goal, depth - 1, inner);
        if (!body) return std::nullopt;
        auto arg = gen(sigma, depth - 1, scope);
        if (!arg) return std::nullopt;
        return elx::app(elx::lam(x, sigma, *body), *arg);
      }
      case 4: {
        std::vector<std::string> vs;
        std::set<std::string> ftv = elx::free_type_vars(goal);
        for (const std::string& v : scope.tvars) {
          if (ftv.count(v)) vs.push_back(v);
        }
        if (vs.empty()) return std::nullopt;
        const std::string& v = pick(rng_, vs);
        std::string c = fresh("c");
        Type rho = elx::forall_type(
            c, elx::arrow(elx::tvar(c), elx::subst(goal, v, elx::tvar(c))));
        auto f = gen(rho, depth - 1, scope);
        if (!f) return std::nullopt;
        auto a = gen(elx::tvar(v), depth - 1, scope);
        if (!a) return std::nullopt;
        return elx::app(elx::tyapp(*f, elx::tvar(v)), *a);
      }
      case 5: {
        std::vector<std::pair<std::string, Type>> fs;
        for (const auto& [x, t] : scope.vars) {
          if (t.kind() == TypeKind::Arrow && t.to() == goal) fs.emplace_back(x, t);
        }
        if (fs.empty()) return std::nullopt;
        const auto& [f, t] = pick(rng_, fs);
        auto a = gen(t.from(), depth - 1, scope);
        if (!a) return std::nullopt;
        return elx::app(elx::var(f), *a);
      }
      case 6: {
        auto a = gen(goal, depth - 1, scope);
        if (!a) return std::nullopt;
        return elx::app(elx::tyapp(elx::var("g"), goal), *a);
      }
    }
    return std::nullopt;
  }

  std::mt19937_64& rng_;
  elx::Context ctx_;
  std::vector<std::pair<std::string, Type>> globals_;
  int counter_ = 0;
  int budget_ = 0;
};

// ---------------------------------------------------------------------------
// Random linear proofs over propositional atoms, with the expected linear
// context of every node computed alongside.

using Multiset = std::vector<std::pair<std::string, std::string>>;

Multiset multiset(const std::vector<elx::Hypothesis>& delta) {
  Multiset m;
  for (const auto& h : delta) m.emplace_back(h.label, elx::to_string(h.formula));
  std::sort(m.begin(), m.end());
  return m;
}

struct LinNode {
  elx::ProofScript script;
  Formula goal;
  std::vector<elx::Hypothesis> delta;
  std::vector<LinNode> kids;
};

int count(const std::vector<elx::Hypothesis>& delta, const std::string& l) {
  int n = 0;
  for (const auto& h : delta) n += h.label == l;
  return n;
}

class LinearGen {
 public:
  explicit LinearGen(std::mt19937_64& rng) : rng_(rng) {}

  static elx::Context context() {
    elx::Context c;
    c.add_pred_var("A", {}).add_pred_var("B", {}).add_pred_var("C", {});
    return c;
  }

  Formula atom() { return elx::atom(pick(rng_, std::vector<std::string>{"A", "B", "C"})); }

  Formula formula(int depth) {
    int r = depth <= 0 ? 0 : roll(rng_, 4);
    if (r <= 1) return atom();
    if (r == 2) return elx::lolli(formula(depth - 1), formula(depth - 1));
    return elx::bang(formula(depth - 1));
  }

  Formula bang_formula() {
    static const std::vector<Formula> pool = {
        elx::bang(elx::atom("A")), elx::bang(elx::atom("B")),
        elx::bang(elx::lolli(elx::atom("A"), elx::atom("B"))),
        elx::bang(elx::atom("C"), 2)};
    return pick(rng_, pool);
  }

  // !-formulas share one label per formula so that uses can be contracted.
  std::string label_for(const Formula& f) {
    if (f.kind() == FormulaKind::Bang) {
      std::string key = elx::to_string(f);
      auto it = pool_.find(key);
      if (it != pool_.end()) return it->second;
      std::string l = "b" + std::to_string(pool_.size());
      pool_[key] = l;
      return l;
    }
    return fresh("l");
  }

  std::string fresh(const char* prefix) {
    return prefix + std::to_string(counter_++);
  }

  LinNode axiom(const Formula& f) {
    std::string l = label_for(f);
    return {elx::rules::axiom(l, f), f, {{l, f}}, {}};
  }

  LinNode leaf() { return axiom(roll(rng_, 2) ? formula(2) : bang_formula()); }

  LinNode application(LinNode fn, LinNode arg) {
    std::optional<elx::LabelSplit> split;
    if (roll(rng_, 2)) {
      split = elx::LabelSplit{};
      for (const auto& h : fn.delta) split->left.push_back(h.label);
      for (const auto& h : arg.delta) split->right.push_back(h.label);
    }
    LinNode n;
    n.script = elx::rules::application(fn.script, arg.script, split);
    n.goal = fn.goal.rhs();
    n.delta = fn.delta;
    n.delta.insert(n.delta.end(), arg.delta.begin(), arg.delta.end());
    n.kids = {std::move(fn), std::move(arg)};
    return n;
  }

  LinNode contraction(LinNode c, const std::string& l) {
    LinNode n;
    n.script = elx::rules::contraction(l, c.script);
    n.goal = c.goal;
    bool dropped = false;
    for (const auto& h : c.delta) {
      if (!dropped && h.label == l) {
        dropped = true;
        continue;
      }
      n.delta.push_back(h);
    }
    n.kids = {std::move(c)};
    return n;
  }

  LinNode gen(int depth) {
    if (depth <= 0) return leaf();
    switch (roll(rng_, 6)) {
      case 0:
        return leaf();
      case 1: {
        LinNode c = gen(depth - 1);
        Formula f = roll(rng_, 2) ? formula(2) : bang_formula();
        std::string l = label_for(f);
        if (count(c.delta, l)) {
          f = formula(1);
          l = fresh("w");
        }
        LinNode n;
        n.script = elx::rules::weakening(l, f, c.script);
        n.goal = c.goal;
        n.delta = c.delta;
        n.delta.push_back({l, f});
        n.kids = {std::move(c)};
        return n;
      }
      case 2: {
        if (roll(rng_, 2)) {
          LinNode fn = gen(depth - 1);
          if (fn.goal.kind() == FormulaKind::Lolli) {
            LinNode arg = axiom(fn.goal.lhs());
            return application(std::move(fn), std::move(arg));
          }
        }
        LinNode arg = gen(depth - 1);
        LinNode fn = axiom(elx::lolli(arg.goal, formula(1)));
        return application(std::move(fn), std::move(arg));
      }
      case 3: {
        LinNode c = gen(depth - 1);
        std::vector<std::string> once;
        for (const auto& h : c.delta) {
          if (count(c.delta, h.label) == 1) once.push_back(h.label);
        }
        if (once.empty()) return c;
        std::string l = pick(rng_, once);
        LinNode n;
        n.script = elx::rules::abstraction(l, c.script);
        Formula p;
        for (const auto& h : c.delta) {
          if (h.label == l) {
            p = h.formula;
          } else {
            n.delta.push_back(h);
          }
        }
        n.goal = elx::lolli(p, c.goal);
        n.kids = {std::move(c)};
        return n;
      }
      case 4: {
        LinNode c = gen(depth - 1);
        std::vector<std::string> dup;
        for (const auto& h : c.delta) {
          if (count(c.delta, h.label) > 1) dup.push_back(h.label);
        }
        if (dup.empty()) {
          // Manufacture two uses of one !-hypothesis.
          Formula f = bang_formula();
          LinNode fn = axiom(elx::lolli(f, elx::lolli(f, atom())));
          LinNode once = application(std::move(fn), axiom(f));
          c = application(std::move(once), axiom(f));
          dup = {label_for(f)};
        }
        return contraction(std::move(c), pick(rng_, dup));
      }
      default: {
        LinNode inner = gen(depth - 1);
        for (const auto& h : inner.delta) {
          if (count(inner.delta, h.label) != 1) return inner;
        }
        std::vector<std::pair<std::string, elx::ProofScript>> premises;
        LinNode n;
        for (const auto& h : inner.delta) {
          LinNode p = axiom(elx::bang(h.formula));
          premises.emplace_back(h.label, p.script);
          n.delta.insert(n.delta.end(), p.delta.begin(), p.delta.end());
          n.kids.push_back(std::move(p));
        }
        n.script = elx::rules::promotion(premises, inner.script);
        n.goal = elx::bang(inner.goal);
        n.kids.push_back(std::move(inner));
        return n;
      }
    }
  }

 private:
  std::mt19937_64& rng_;
  std::map<std::string, std::string> pool_;
  int counter_ = 0;
};

std::string compare(const elx::Derivation& d, const LinNode& n) {
  if (multiset(d.sequent.delta) != multiset(n.delta)) {
    std::string got, want;
    for (const auto& [l, f] : multiset(d.sequent.delta)) got += l + ":" + f + " ";
    for (const auto& [l, f] : multiset(n.delta)) want += l + ":" + f + " ";
    return std::string(elx::rule_name(d.rule)) + " context {" + got +
           "} expected {" + want + "}";
  }
  if (!(d.sequent.goal == n.goal)) {
    return std::string(elx::rule_name(d.rule)) + " goal " +
           elx::to_string(d.sequent.goal);
  }
  if (d.children.size() != n.kids.size()) return "premise count";
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    std::string r = compare(d.children[i], n.kids[i]);
    if (!r.empty()) return r;
  }
  return "";
}

// ---------------------------------------------------------------------------
// First-order nat terms over the standard signature.

class NatGen {
 public:
  explicit NatGen(std::mt19937_64& rng) : rng_(rng) {}

  Term leaf(const std::vector<std::string>& vars) {
    switch (roll(rng_, 4)) {
      case 0:
        return elx::var("0");
      case 1:
        return elx::app(elx::var("s"), elx::var("0"));
      default:
        return elx::var(pick(rng_, vars));
    }
  }

  Term function(bool for_product) {
    Type n = elx::nat_type();
    std::string z = fresh();
    switch (roll(rng_, for_product ? 4 : 5)) {
      case 0:
        return elx::lam(z, n, elx::var(z));
      case 1:
        return elx::lam(z, n, elx::var("0"));
      case 2:
        return elx::lam(z, n, elx::app(elx::var("s"), elx::var("0")));
      case 3:
        return for_product ? elx::lam(z, n, elx::var(z)) : elx::var("s");
      default:
        return elx::lam(z, n, elx::app(elx::var("plus"), {elx::var(z), elx::var(z)}));
    }
  }

  Term term(const std::vector<std::string>& vars, int depth) {
    if (depth <= 0) return leaf(vars);
    auto sub = [&](int d) { return term(vars, d); };
    switch (roll(rng_, 11)) {
      case 0:
      case 1:
        return leaf(vars);
      case 2:
        return elx::app(elx::var("s"), sub(depth - 1));
      case 3:
        return elx::app(elx::var("plus"), {sub(depth - 1), sub(depth - 1)});
      case 4:
        return elx::app(elx::var("mult"), {sub(depth - 2), sub(depth - 2)});
      case 5:
        return elx::app(elx::var("pred"), sub(depth - 1));
      case 6:
        return elx::app(elx::var("minus"), {sub(depth - 1), sub(depth - 1)});
      case 7:
        return elx::app(elx::var("sum"), {function(false), leaf(vars)});
      case 8:
        return elx::app(elx::var("prod"), {function(true), leaf(vars)});
      default: {
        std::string w = fresh();
        std::vector<std::string> inner = vars;
        inner.push_back(w);
        return elx::app(elx::lam(w, elx::nat_type(), term(inner, depth - 1)),
                        sub(depth - 1));
      }
    }
  }

  std::string fresh() { return "w" + std::to_string(counter_++); }

 private:
  std::mt19937_64& rng_;
  int counter_ = 0;
};

void positions(const Term& t, elx::Position& here,
               std::vector<elx::Position>& out) {
  out.push_back(here);
  auto down = [&](int i, const Term& c) {
    here.push_back(i);
    positions(c, here, out);
    here.pop_back();
  };
  switch (t.kind()) {
    case TermKind::App:
      down(0, t.fn());
      down(1, t.arg());
      break;
    case TermKind::TyApp:
      down(0, t.fn());
      break;
    case TermKind::Lam:
    case TermKind::TyLam:
      down(0, t.body());
      break;
    default:
      break;
  }
}

std::vector<elx::Position> positions(const Term& t) {
  std::vector<elx::Position> out;
  elx::Position here;
  positions(t, here, out);
  return out;
}

// One verified rewrite step from `t`, or nullopt.
std::optional<std::pair<Trace, Term>> random_step(std::mt19937_64& rng,
                                                  NatGen& gen,
                                                  const elx::Context& ctx,
                                                  const Term& t) {
  const elx::Equations& eqs = elx::standard_equations();
  std::vector<elx::Position> ps = positions(t);
  Type type = elx::infer_type(ctx, t);
  for (int attempt = 0; attempt < 40; ++attempt) {
    const elx::Position& p = pick(rng, ps);
    Trace step;
    if (roll(rng, 6) == 0) {
      step = Trace::beta(p);
    } else {
      const elx::Equation& eq = pick(rng, eqs);
      bool reversed = roll(rng, 2);
      std::vector<std::pair<std::string, Term>> instance;
      if (reversed) {
        std::set<std::string> known = elx::free_term_vars(eq.rhs);
        for (const auto& [x, ty] : eq.params) {
          if (known.count(x)) continue;
          instance.emplace_back(x, ty == elx::nat_type()
                                       ? gen.leaf({"x", "y"})
                                       : gen.function(false));
        }
      }
      if (!p.empty() && roll(rng, 2)) {
        step = Trace::cong(p, Trace::axiom(eq.name, reversed, {}, instance));
      } else {
        step = Trace::axiom(eq.name, reversed, p, instance);
      }
    }
    try {
      Term next = elx::rewrite_forward(ctx, eqs, t, step);
      elx::verify_trace(ctx, eqs, type, t, next, step);
      return std::make_pair(step, next);
    } catch (const elx::Error&) {
    }
  }
  return std::nullopt;
}

std::string show_env(const std::map<std::string, std::uint64_t>& env) {
  std::string out;
  for (const auto& [k, v] : env) out += k + "=" + std::to_string(v) + " ";
  return out;
}

}  // namespace

Outcome substitution_alpha(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("substitution/alpha commutation");
  const std::vector<std::string> tm_names = {"x", "y", "z"};
  const std::vector<std::string> ty_names = {"a", "b", "c"};
  for (std::size_t i = 0; i < cases; ++i) {
    std::vector<std::string> bad;
    auto expect = [&bad](bool ok, const std::string& what) {
      if (!ok) bad.push_back(what);
    };
    named::FmP p = named::random_formula(rng, 4);
    named::TmP t = named::random_term(rng, 4);
    named::TyP ty = named::random_type(rng, 3);
    named::TmP s = named::random_term(rng, 2);
    named::TyP sigma = named::random_type(rng, 2);
    named::FmP q = named::random_formula(rng, 2);
    std::string x = pick(rng, tm_names);
    std::string a = pick(rng, ty_names);
    std::string pred = roll(rng, 2) ? "X" : "Y";
    std::vector<std::string> params = tm_names;
    std::shuffle(params.begin(), params.end(), rng);
    params.resize(roll(rng, 3));
    Formula P = named::build(p);
    Term T = named::build(t);
    Type TY = named::build(ty);
    Term S = named::build(s);
    Type SIG = named::build(sigma);
    try {
      expect(named::build(named::alpha_variant(p)) == P, "alpha variant (formula)");
      expect(named::build(named::alpha_variant(t)) == T, "alpha variant (term)");
      expect(named::build(named::alpha_variant(ty)) == TY, "alpha variant (type)");
      named::FmP pm = named::rename_some_binders(p, rng);
      bool same = named::alpha_equal(p, pm);
      expect(same == (named::build(pm) == P), "alpha_eq decision (formula)");
      if (!same) rec.bump("capturing renamings");
      named::TmP tm = named::rename_some_binders(t, rng);
      expect(named::alpha_equal(t, tm) == (named::build(tm) == T),
             "alpha_eq decision (term)");

      expect(elx::subst(TY, a, SIG) == named::build(named::subst(ty, a, sigma)),
             "type in type");
      expect(elx::subst(T, x, S) == named::build(named::subst(t, x, s)),
             "term in term");
      expect(elx::subst_type(T, a, SIG) ==
                 named::build(named::subst(t, a, sigma)),
             "type in term");
      Formula px = elx::subst(P, x, S);
      expect(px == named::build(named::subst(p, x, s)), "term in formula");
      if (!(px == P)) rec.bump("formula changed by substitution");
      expect(elx::subst_type(P, a, SIG) ==
                 named::build(named::subst(p, a, sigma)),
             "type in formula");

      std::optional<named::FmP> want;
      try {
        want = named::subst_pred(p, pred, params, q);
      } catch (const named::ArityError&) {
      }
      try {
        Formula got = elx::subst_pred(P, pred, params, named::build(q));
        expect(want && got == named::build(*want), "predicate in formula");
        if (!(got == P)) rec.bump("predicate substitutions");
      } catch (const elx::Error& e) {
        rec.bump("arity mismatches");
        if (want || e.code() != ErrorCode::ArityMismatch) {
          bad.push_back("predicate substitution error " + e.describe() +
                        (want ? " where the oracle succeeds" : ""));
        }
      }

      // Renaming a free variable y to a fresh r commutes with [S/x].
      std::string y = x == "x" ? "y" : "x";
      Term r = elx::var(named::fresh_oracle_name());
      auto ren = [&](const Formula& f) { return elx::subst(f, y, r); };
      expect(elx::subst(ren(P), x, elx::subst(S, y, r)) ==
                 ren(elx::subst(P, x, S)),
             "renaming commutes with substitution (formula)");
      expect(elx::subst(elx::subst(T, y, r), x, elx::subst(S, y, r)) ==
                 elx::subst(elx::subst(T, x, S), y, r),
             "renaming commutes with substitution (term)");
      expect(elx::subst(named::build(named::alpha_variant(p)), x, S) ==
                 elx::subst(P, x, S),
             "substitution on an alpha variant");

      Formula shadow = elx::forall1(x, SIG, P);
      expect(elx::subst(shadow, x, S) == shadow, "shadowed forall");
      Term shadow_lam = elx::lam(x, SIG, T);
      expect(elx::subst(shadow_lam, x, S) == shadow_lam, "shadowed lambda");
      Type shadow_ty = elx::forall_type(a, TY);
      expect(elx::subst(shadow_ty, a, SIG) == shadow_ty, "shadowed type");
    } catch (const std::exception& e) {
      bad.push_back(std::string("exception: ") + e.what());
    }
    rec.record(bad, elx::to_string(P) + " / " + elx::to_string(T));
  }
  return rec.finish();
}

Outcome beta_idempotence(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  TypedGen gen(rng);
  Recorder rec("beta idempotence and strategy agreement");
  std::size_t done = 0;
  for (std::size_t tries = 0; done < cases && tries < cases * 50; ++tries) {
    Type goal = gen.goal();
    auto t = gen.term(goal, 4);
    if (!t) continue;
    ++done;
    std::vector<std::string> bad;
    try {
      Term n1 = elx::beta_normalize(*t, 1'000'000);
      rec.bump("input size", t->size());
      if (!(n1 == *t)) rec.bump("non-normal inputs");
      if (!elx::is_beta_normal(n1)) bad.emplace_back("result not normal");
      if (!(elx::beta_normalize(n1) == n1)) bad.emplace_back("not idempotent");
      if (!(elx::beta_normalize_innermost(*t, 1'000'000) == n1))
        bad.emplace_back("innermost strategy disagrees");
      Formula f = elx::atom("X", {*t});
      if (!(elx::beta_normalize(f) == elx::atom("X", {n1})))
        bad.emplace_back("formula normalization disagrees");
      auto o = oracle::normalize(oracle::from_pure(elx::erase(*t)), 1'000'000);
      if (!o) {
        bad.emplace_back("oracle out of fuel");
      } else if (!oracle::alpha_equal(*o, oracle::from_pure(elx::erase(n1)))) {
        bad.emplace_back("erased normal form differs from the oracle");
      }
    } catch (const elx::Error& e) {
      bad.push_back(e.describe());
    }
    rec.record(bad, elx::to_string(*t));
  }
  return rec.finish();
}

Outcome subject_reduction(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  TypedGen gen(rng);
  Recorder rec("subject reduction");
  std::size_t done = 0;
  for (std::size_t tries = 0; done < cases && tries < cases * 50; ++tries) {
    Type goal = gen.goal();
    auto t = gen.term(goal, 4);
    if (!t) continue;
    ++done;
    std::vector<std::string> bad;
    try {
      Term cur = *t;
      if (!(elx::infer_type(gen.context(), cur) == goal))
        bad.emplace_back("generated term has the wrong type");
      for (int step = 0; step < 400 && bad.empty(); ++step) {
        auto next = elx::beta_step(cur);
        if (!next) break;
        rec.bump("beta steps");
        cur = *next;
        Type got = elx::infer_type(gen.context(), cur);
        if (!(got == goal)) {
          bad.push_back("type changed to " + elx::to_string(got) + " at " +
                        elx::to_string(cur));
        }
      }
    } catch (const elx::Error& e) {
      bad.push_back(e.describe());
    }
    rec.record(bad, elx::to_string(*t) + " : " + elx::to_string(goal));
  }
  return rec.finish();
}

Outcome linear_bookkeeping(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("linear bookkeeping");
  elx::Context gamma = LinearGen::context();
  for (std::size_t i = 0; i < cases; ++i) {
    LinearGen gen(rng);
    LinNode root = gen.gen(2 + roll(rng, 4));
    std::vector<std::string> bad;
    try {
      elx::CheckedProof c = elx::check_proof(root.script, {}, gamma);
      rec.bump("rules checked", root.script.size());
      std::string diff = compare(c.root, root);
      if (!diff.empty()) bad.push_back(diff);
    } catch (const elx::Error& e) {
      bad.push_back("valid proof rejected: " + e.describe());
    }

    // One mutation that breaks exact accounting must be rejected.
    std::vector<std::pair<elx::ProofScript, ErrorCode>> mutants;
    const elx::ProofScript& p = root.script;
    mutants.emplace_back(elx::rules::abstraction("absent", p),
                         ErrorCode::LinearityViolation);
    {
      std::string f = gen.fresh("f");
      elx::LabelSplit split;
      for (const auto& h : root.delta) split.left.push_back(h.label);
      split.right = {f};
      mutants.emplace_back(
          elx::rules::application(
              elx::rules::axiom(f, elx::lolli(root.goal, elx::atom("C"))), p,
              split),
          ErrorCode::LinearityViolation);
    }
    for (const auto& h : root.delta) {
      if (h.formula.kind() == FormulaKind::Bang) continue;
      Formula g = elx::lolli(root.goal, elx::lolli(h.formula, elx::atom("C")));
      mutants.emplace_back(
          elx::rules::application(
              elx::rules::application(elx::rules::axiom(gen.fresh("h"), g), p),
              elx::rules::axiom(h.label, h.formula)),
          ErrorCode::LinearityViolation);
      mutants.emplace_back(elx::rules::contraction(h.label, p),
                           ErrorCode::NonBangContraction);
      break;
    }
    if (!root.delta.empty()) {
      const auto& h = root.delta.front();
      mutants.emplace_back(elx::rules::weakening(h.label, h.formula, p),
                           ErrorCode::LinearityViolation);
      bool distinct = true;
      for (const auto& g : root.delta) distinct &= count(root.delta, g.label) == 1;
      if (distinct) {
        std::vector<std::pair<std::string, elx::ProofScript>> premises;
        for (std::size_t k = 0; k + 1 < root.delta.size(); ++k) {
          const auto& g = root.delta[k];
          premises.emplace_back(g.label,
                                elx::rules::axiom(gen.fresh("p"),
                                                  elx::bang(g.formula)));
        }
        mutants.emplace_back(elx::rules::promotion(premises, p),
                             ErrorCode::PromotionShape);
      }
    }
    const auto& [mutant, code] = pick(rng, mutants);
    rec.bump(std::string("mutants ") + std::string(elx::error_code_name(code)));
    try {
      elx::check_proof(mutant, {}, gamma);
      bad.push_back("mutant accepted: expected " +
                    std::string(elx::error_code_name(code)));
    } catch (const elx::Error& e) {
      if (e.code() != code) {
        bad.push_back("mutant rejected with " + e.describe() + ", expected " +
                      std::string(elx::error_code_name(code)));
      }
    }
    rec.record(bad, elx::to_string(root.goal) + " (" +
                        std::to_string(root.script.size()) + " rules)");
  }
  return rec.finish();
}

Outcome trace_soundness(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  NatGen gen(rng);
  Recorder rec("equality trace soundness");
  const elx::Equations& eqs = elx::standard_equations();
  elx::Context ctx = elx::standard_signature();
  ctx.add_term_var("x", elx::nat_type()).add_term_var("y", elx::nat_type());
  for (std::size_t i = 0; i < cases; ++i) {
    std::vector<std::string> bad;
    bool ext = roll(rng, 4) == 0;
    std::string e = "e" + std::to_string(i);
    elx::Context c = ext ? ctx.with_term_var(e, elx::nat_type()) : ctx;
    std::vector<std::string> vars = {"x", "y"};
    if (ext) vars.push_back(e);
    Term t1 = gen.term(vars, 3);
    Term cur = t1;
    std::vector<Trace> steps;
    int n = 1 + roll(rng, 4);
    for (int k = 0; k < n; ++k) {
      auto s = random_step(rng, gen, c, cur);
      if (!s) break;
      steps.push_back(s->first);
      cur = s->second;
    }
    Trace trace = steps.empty() ? Trace::refl()
                  : steps.size() == 1 ? steps.front()
                                      : Trace::trans(steps);
    rec.bump("rewrite steps", steps.size());
    if (ext) rec.bump("extensionality cases");
    Term lhs = t1, rhs = cur;
    Type type = elx::nat_type();
    if (ext) {
      lhs = elx::lam(e, elx::nat_type(), t1);
      rhs = elx::lam(e, elx::nat_type(), cur);
      trace = Trace::ext(e, Trace::trans({Trace::beta(), trace,
                                          Trace::beta({}, true)}));
      type = elx::arrow(type, type);
    }
    if (roll(rng, 3) == 0) {
      std::swap(lhs, rhs);
      trace = Trace::sym(trace);
    }
    std::string witness = elx::to_string(lhs) + " = " + elx::to_string(rhs);

    auto agree = [&](const Term& a, const Term& b, const char* what) {
      for (int k = 0; k < 3; ++k) {
        std::map<std::string, std::uint64_t> env = {
            {"x", roll(rng, 7)}, {"y", roll(rng, 7)}, {"n", roll(rng, 7)}};
        Term ea = ext ? elx::app(a, elx::var("n")) : a;
        Term eb = ext ? elx::app(b, elx::var("n")) : b;
        auto va = oracle::evaluate(ea, env);
        auto vb = oracle::evaluate(eb, env);
        if (!va || !vb) {
          bad.push_back(std::string(what) + ": oracle did not produce a "
                        "numeral at " + show_env(env));
          return;
        }
        rec.bump("oracle comparisons");
        if (*va != *vb) {
          bad.push_back(std::string(what) + ": oracle values " +
                        std::to_string(*va) + " and " + std::to_string(*vb) +
                        " differ at " + show_env(env));
          return;
        }
      }
    };

    try {
      elx::verify_trace(ctx, eqs, type, lhs, rhs, trace);
      agree(lhs, rhs, "accepted trace");
    } catch (const elx::Error& err) {
      bad.push_back("generated trace rejected: " + err.describe());
    }
    // The same certificate against an unrelated right-hand side.
    if (!ext) {
      Term other = gen.term(vars, 2);
      bool accepted = true;
      try {
        elx::verify_trace(ctx, eqs, type, lhs, other, trace);
      } catch (const elx::Error&) {
        accepted = false;
      }
      if (accepted) {
        rec.bump("unrelated right-hand sides accepted");
        agree(lhs, other, "accepted unrelated trace");
      }
    }
    rec.record(bad, witness);
  }
  return rec.finish();
}

std::vector<Outcome> run_all(std::uint64_t seed, std::size_t cases) {
  return {substitution_alpha(seed, cases), beta_idempotence(seed + 1, cases),
          subject_reduction(seed + 2, cases),
          linear_bookkeeping(seed + 3, cases), trace_soundness(seed + 4, cases)};
}

}  // namespace props
