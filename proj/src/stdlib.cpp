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

#include "elx/stdlib.hpp"

#include <map>

#include "elx/error.hpp"
#include "elx/library.hpp"

namespace elx::stdlib {

using namespace rules;

namespace {

Type nat() { return nat_type(); }
Term v(const std::string& name) { return var(name); }
Term zero() { return var(kZero); }
Term s(const Term& t) { return app(var(kSucc), t); }
Term call(const char* fn, std::vector<Term> args) { return app(var(fn), args); }
Formula N(const Term& t) { return nat_pred(t); }
Formula X(const std::string& p, const Term& t) { return atom(p, {t}); }

// forall z. P z -o P (s z) for the predicate variable P.
Formula step_formula(const std::string& p) {
  return forall1("z", nat(), lolli(X(p, v("z")), X(p, s(v("z")))));
}

ProofScript embed(const ProofScript& proof, std::set<std::string> avoid) {
  return freshen(proof, avoid);
}

// P (x) Q from proofs of P and Q. `t` names the bound predicate and must be
// fresh for the surrounding context.
ProofScript tensor_intro(const ProofScript& a, const ProofScript& b,
                         const Formula& p, const Formula& q,
                         const std::string& t, const std::string& label) {
  Formula target = atom(t, {});
  return intro2(
      t, {},
      abstraction(label,
                  application(application(axiom(label, lolli(p, lolli(q, target))),
                                          a),
                              b)));
}

// Eliminates a proof of P (x) Q into R; `body` has hypotheses u : P, v : Q.
ProofScript tensor_elim(const ProofScript& pair, const Formula& r,
                        const std::string& u, const std::string& w,
                        const ProofScript& body) {
  return application(elim2({}, r, pair), abstraction(u, abstraction(w, body)));
}

ProofScript promote_times(const ProofScript& p, int k) {
  ProofScript out = p;
  for (int i = 0; i < k; ++i) out = promotion({}, out);
  return out;
}

ProofScript elims(const ProofScript& p, const std::vector<Term>& args) {
  ProofScript out = p;
  for (const Term& a : args) out = elim1(a, out);
  return out;
}

Trace use(const char* equation, bool reversed,
          std::vector<std::pair<std::string, Term>> instance = {}) {
  return Trace::axiom(equation, reversed, {}, std::move(instance));
}

CheckOptions fast_options() {
  CheckOptions o;
  o.check_extraction = false;
  return o;
}

}  // namespace

ProofScript proof_zero() {
  static const ProofScript p = [] {
    Formula x0 = X("X", zero());
    return intro2(
        "X", {nat()},
        abstraction("h", weakening("h", bang(step_formula("X")),
                                   promotion({}, abstraction("z", axiom("z", x0))))));
  }();
  return p;
}

ProofScript proof_succ() {
  static const ProofScript p = [] {
    Term y = v("y");
    Formula g = step_formula("X");
    Formula x0 = X("X", zero());
    ProofScript iterate = application(
        elim2({"w"}, X("X", v("w")), axiom("n", N(y))), axiom("h", bang(g)));
    ProofScript inner = abstraction(
        "z0", application(elim1(y, axiom("g", g)),
                          application(axiom("k", lolli(x0, X("X", y))),
                                      axiom("z0", x0))));
    ProofScript body = contraction(
        "h", promotion({{"k", iterate}, {"g", axiom("h", bang(g))}}, inner));
    return intro1("y", nat(),
                  abstraction("n", intro2("X", {nat()}, abstraction("h", body))));
  }();
  return p;
}

ProofScript proof_one() {
  static const ProofScript p =
      application(elim1(zero(), proof_succ()), proof_zero());
  return p;
}

ProofScript proof_identity() {
  static const ProofScript p =
      intro1("y", nat(), abstraction("n", axiom("n", N(v("y")))));
  return p;
}

ProofScript proof_const_zero() {
  static const ProofScript p = intro1(
      "y", nat(),
      abstraction("n", weakening("n", N(v("y")), embed(proof_zero(), {"y"}))));
  return p;
}

ProofScript proof_const_one() {
  static const ProofScript p = intro1(
      "y", nat(),
      abstraction("n", weakening("n", N(v("y")), embed(proof_one(), {"y"}))));
  return p;
}

ProofScript proof_coercion() {
  static const ProofScript p = [] {
    Term x = v("x");
    std::set<std::string> avoid = {"x", "w"};
    Formula n0_nx = lolli(N(zero()), N(x));
    ProofScript iterate =
        application(elim2({"w"}, N(v("w")), axiom("n", N(x))),
                    promotion({}, embed(proof_succ(), avoid)));
    ProofScript close = abstraction(
        "a", promotion({{"k", axiom("a", bang(n0_nx))}},
                       application(axiom("k", n0_nx),
                                   embed(proof_zero(), avoid))));
    return intro1("x", nat(),
                  abstraction("n", application(close, iterate)));
  }();
  return p;
}

ProofScript proof_plus() {
  static const ProofScript p = [] {
    Term x = v("x"), y = v("y"), z = v("z");
    Formula g = step_formula("X");
    Formula x0 = X("X", zero());
    Term pxy = call("plus", {x, y});
    ProofScript first = application(
        elim2({"w"}, X("X", v("w")), axiom("nx", N(x))), axiom("h", bang(g)));
    ProofScript step = promotion(
        {{"g", axiom("h", bang(g))}},
        intro1("z", nat(),
               equality("w", nat(),
                        lolli(X("X", call("plus", {x, z})), X("X", v("w"))),
                        s(call("plus", {x, z})), call("plus", {x, s(z)}),
                        false, use("plus_succ", true),
                        elim1(call("plus", {x, z}), axiom("g", g)))));
    ProofScript second = equality(
        "w", nat(), bang(lolli(X("X", v("w")), X("X", pxy))),
        call("plus", {x, zero()}), x, false, use("plus_zero", false),
        application(elim2({"w"}, X("X", call("plus", {x, v("w")})),
                          axiom("ny", N(y))),
                    step));
    ProofScript inner = abstraction(
        "z0", application(axiom("b", lolli(X("X", x), X("X", pxy))),
                          application(axiom("a", lolli(x0, X("X", x))),
                                      axiom("z0", x0))));
    ProofScript body =
        contraction("h", promotion({{"a", first}, {"b", second}}, inner));
    return intro1(
        "x", nat(),
        intro1("y", nat(),
               abstraction("nx", abstraction("ny", intro2("X", {nat()},
                                                          abstraction("h", body))))));
  }();
  return p;
}

ProofScript proof_mult() {
  static const ProofScript p = [] {
    Term x = v("x"), y = v("y"), z = v("z");
    std::set<std::string> avoid = {"x", "y", "z", "w"};
    Term mxz = call("mult", {x, z});
    ProofScript plus = embed(proof_plus(), avoid);
    ProofScript step = promotion(
        {{"c", axiom("mx", bang(N(x)))}},
        intro1("z", nat(),
               equality("w", nat(), lolli(N(mxz), N(v("w"))),
                        call("plus", {x, mxz}), call("mult", {x, s(z)}), false,
                        use("mult_succ", true),
                        application(elims(plus, {x, mxz}), axiom("c", N(x))))));
    ProofScript iterate = application(
        elim2({"w"}, N(call("mult", {x, v("w")})), axiom("ny", N(y))), step);
    ProofScript base = equality(
        "w", nat(), bang(N(v("w"))), zero(), call("mult", {x, zero()}), false,
        use("mult_zero", true), promotion({}, embed(proof_zero(), avoid)));
    Formula m0 = N(call("mult", {x, zero()}));
    Formula mxy = N(call("mult", {x, y}));
    ProofScript body = promotion(
        {{"k", iterate}, {"b", base}},
        application(axiom("k", lolli(m0, mxy)), axiom("b", m0)));
    return intro1("x", nat(),
                  intro1("y", nat(),
                         abstraction("mx", abstraction("ny", body))));
  }();
  return p;
}

ProofScript proof_pred() {
  static const ProofScript p = [] {
    Term y = v("y"), z = v("z");
    Formula g = step_formula("X");
    Formula x0 = X("X", zero());
    auto xp = [](const Term& t) { return X("X", t); };
    auto pred = [](const Term& t) { return call("pred", {t}); };
    // D(w) = (X 0 -o X (pred w)) (x) (X (pred w) -o X w)
    auto d = [&](const Term& w) {
      return tensor(lolli(x0, xp(pred(w))), lolli(xp(pred(w)), xp(w)));
    };
    Term sz = s(z);
    ProofScript first = equality(
        "w", nat(), lolli(x0, xp(v("w"))), z, pred(sz), false,
        use("pred_succ", true),
        abstraction("q", application(axiom("v", lolli(xp(pred(z)), xp(z))),
                                     application(axiom("u", lolli(x0, xp(pred(z)))),
                                                 axiom("q", x0)))));
    ProofScript second =
        equality("w", nat(), lolli(xp(v("w")), xp(sz)), z, pred(sz), false,
                 use("pred_succ", true), elim1(z, axiom("g", g)));
    ProofScript shifted =
        tensor_intro(first, second, lolli(x0, xp(pred(sz))),
                     lolli(xp(pred(sz)), xp(sz)), "T", "kt");
    ProofScript step = promotion(
        {{"g", axiom("h", bang(g))}},
        intro1("z", nat(),
               abstraction("p", tensor_elim(axiom("p", d(z)), d(sz), "u", "v",
                                            shifted))));
    ProofScript base = promotion(
        {}, tensor_intro(
                equality("w", nat(), lolli(x0, xp(v("w"))), zero(),
                         pred(zero()), false, use("pred_zero", true),
                         abstraction("q", axiom("q", x0))),
                equality("w", nat(), lolli(xp(v("w")), x0), zero(),
                         pred(zero()), false, use("pred_zero", true),
                         abstraction("q", axiom("q", x0))),
                lolli(x0, xp(pred(zero()))), lolli(xp(pred(zero())), x0), "T",
                "kt"));
    ProofScript iterate =
        application(elim2({"w"}, d(v("w")), axiom("ny", N(y))), step);
    Formula left = lolli(x0, xp(pred(y)));
    Formula right = lolli(xp(pred(y)), xp(y));
    ProofScript project = tensor_elim(
        application(axiom("k", lolli(d(zero()), d(y))), axiom("d", d(zero()))),
        left, "u", "v", weakening("v", right, axiom("u", left)));
    ProofScript body = promotion({{"k", iterate}, {"d", base}}, project);
    return intro1("y", nat(),
                  abstraction("ny", intro2("X", {nat()}, abstraction("h", body))));
  }();
  return p;
}

ProofScript proof_minus() {
  static const ProofScript p = [] {
    Term x = v("x"), y = v("y"), z = v("z");
    std::set<std::string> avoid = {"x", "y", "z", "w"};
    Term mxz = call("minus", {x, z});
    ProofScript step = promotion(
        {}, intro1("z", nat(),
                   equality("w", nat(), lolli(N(mxz), N(v("w"))),
                            call("pred", {mxz}), call("minus", {x, s(z)}),
                            false, use("minus_succ", true),
                            elim1(mxz, embed(proof_pred(), avoid)))));
    ProofScript iterate = application(
        elim2({"w"}, N(call("minus", {x, v("w")})), axiom("ny", N(y))), step);
    ProofScript base =
        equality("w", nat(), bang(N(v("w"))), x, call("minus", {x, zero()}),
                 false, use("minus_zero", true), axiom("mx", bang(N(x))));
    Formula m0 = N(call("minus", {x, zero()}));
    Formula mxy = N(call("minus", {x, y}));
    ProofScript body = promotion(
        {{"k", iterate}, {"b", base}},
        application(axiom("k", lolli(m0, mxy)), axiom("b", m0)));
    return intro1("x", nat(),
                  intro1("y", nat(),
                         abstraction("mx", abstraction("ny", body))));
  }();
  return p;
}

ProofScript proof_double() {
  static const ProofScript p =
      compose_scheme(proof_plus(), {proof_identity(), proof_identity()});
  return p;
}

// ---------------------------------------------------------------------------
// Totality statements

std::optional<Totality> match_totality(const Formula& p,
                                       const std::vector<std::string>& names) {
  Totality out;
  Formula cur = p;
  while (cur.kind() == FormulaKind::Forall1) {
    if (!(cur.type() == nat_type())) return std::nullopt;
    std::size_t i = out.vars.size();
    std::string name =
        i < names.size() ? names[i] : "x" + std::to_string(i + 1);
    out.vars.push_back(name);
    cur = open_with(cur, name);
  }
  for (const std::string& name : out.vars) {
    if (cur.kind() != FormulaKind::Lolli) return std::nullopt;
    auto [k, premise] = strip_bangs(cur.lhs());
    auto t = match_nat_pred(premise);
    if (!t || !(*t == var(name))) return std::nullopt;
    out.premise_bangs.push_back(k);
    cur = cur.rhs();
  }
  auto [k, goal] = strip_bangs(cur);
  auto t = match_nat_pred(goal);
  if (!t) return std::nullopt;
  out.output_bangs = k;
  out.result = *t;
  return out;
}

Formula totality_formula(const Totality& t) {
  Formula out = bang(N(t.result), t.output_bangs);
  for (std::size_t i = t.vars.size(); i-- > 0;) {
    out = lolli(bang(N(var(t.vars[i])), t.premise_bangs[i]), out);
  }
  for (std::size_t i = t.vars.size(); i-- > 0;) {
    out = forall1(t.vars[i], nat_type(), out);
  }
  return out;
}

Formula conclusion_of(const ProofScript& proof) {
  return check_proof(proof, fast_options()).conclusion();
}

namespace {

Totality require_totality(const ProofScript& proof,
                          const std::vector<std::string>& names) {
  Formula c = conclusion_of(proof);
  auto t = match_totality(c, names);
  if (!t) {
    fail(ErrorCode::ShapeMismatch,
         "not a totality statement: " + to_string(c));
  }
  return *t;
}

// From p : !^j N(t) to !^(j+1) N(t) by a coercion under j boxes.
ProofScript lift_coercion(const ProofScript& p, const Term& t, int j,
                          const ProofScript& coercion) {
  if (j == 0) return application(elim1(t, coercion), p);
  std::string r = "r" + std::to_string(j);
  return promotion({{r, p}},
                   lift_coercion(axiom(r, bang(N(t), j - 1)), t, j - 1,
                                 coercion));
}

ProofScript raise(const ProofScript& p, const Term& t, int from, int to,
                  const ProofScript& coercion) {
  ProofScript out = p;
  for (int j = from; j < to; ++j) out = lift_coercion(out, t, j, coercion);
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& names) {
  std::set<std::string> out(names.begin(), names.end());
  return out;
}

}  // namespace

ProofScript normalize_totality(const ProofScript& proof,
                               const std::optional<std::vector<int>>& shape) {
  Totality t = require_totality(proof, {});
  if (shape && *shape != t.premise_bangs) {
    fail(ErrorCode::ShapeMismatch,
         "premise exponents do not match the expected shape");
  }
  bool normal = true;
  for (int k : t.premise_bangs) normal = normal && k == 0;
  if (normal) return proof;
  std::set<std::string> avoid = as_set(t.vars);
  ProofScript coercion = embed(proof_coercion(), avoid);
  ProofScript body = elims(embed(proof, avoid), [&] {
    std::vector<Term> args;
    for (const auto& x : t.vars) args.push_back(var(x));
    return args;
  }());
  std::size_t n = t.vars.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::string b = "b" + std::to_string(i + 1);
    Term x = var(t.vars[i]);
    body = application(body, raise(axiom(b, N(x)), x, 0, t.premise_bangs[i],
                                   coercion));
  }
  for (std::size_t i = n; i-- > 0;) {
    body = abstraction("b" + std::to_string(i + 1), body);
  }
  for (std::size_t i = n; i-- > 0;) body = intro1(t.vars[i], nat_type(), body);
  return body;
}

ProofScript compose_scheme(const ProofScript& f,
                           const std::vector<ProofScript>& gs) {
  Totality ft = require_totality(f, {});
  std::size_t p = ft.vars.size();
  if (gs.size() != p) {
    fail(ErrorCode::ArityMismatch,
         "the outer function takes " + std::to_string(p) + " arguments, " +
             std::to_string(gs.size()) + " inner functions given");
  }
  if (p == 0) fail(ErrorCode::ArityMismatch, "nothing to compose");
  std::vector<Totality> gt;
  std::size_t q = 0;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<std::string> ys;
    Formula c = conclusion_of(gs[i]);
    auto t0 = match_totality(c);
    if (!t0) {
      fail(ErrorCode::ShapeMismatch,
           "inner function " + std::to_string(i + 1) +
               " is not a totality statement");
    }
    for (std::size_t j = 0; j < t0->vars.size(); ++j) {
      ys.push_back("y" + std::to_string(j + 1));
    }
    gt.push_back(*match_totality(c, ys));
    if (i == 0) q = ys.size();
    if (ys.size() != q) {
      fail(ErrorCode::ArityMismatch,
           "inner functions disagree on their number of arguments");
    }
  }
  auto check_normal = [](const Totality& t, const char* what) {
    for (int k : t.premise_bangs) {
      if (k != 0) {
        fail(ErrorCode::ShapeMismatch,
             std::string(what) + " has decorated premises; normalize it first");
      }
    }
  };
  check_normal(ft, "the outer function");
  for (const Totality& t : gt) check_normal(t, "an inner function");

  std::vector<std::string> ys = gt[0].vars;
  std::set<std::string> avoid = as_set(ys);
  ProofScript coercion = embed(proof_coercion(), avoid);
  int s = 0;
  for (const Totality& t : gt) s += t.output_bangs;
  int k = ft.output_bangs;

  auto label = [](std::size_t i, std::size_t j) {
    return "c" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  // Inner functions applied to their own copies of the inputs, raised to
  // exponent s.
  std::vector<ProofScript> raised;
  std::vector<Term> inner_terms;
  for (std::size_t i = 0; i < p; ++i) {
    ProofScript g = elims(embed(gs[i], avoid), [&] {
      std::vector<Term> args;
      for (const auto& y : ys) args.push_back(var(y));
      return args;
    }());
    for (std::size_t j = 0; j < q; ++j) {
      g = application(g, axiom(label(i, j), N(var(ys[j]))));
    }
    raised.push_back(raise(g, gt[i].result, gt[i].output_bangs, s, coercion));
    inner_terms.push_back(gt[i].result);
  }
  // The outer function under s boxes.
  ProofScript outer = embed(f, avoid);
  std::function<ProofScript(const std::vector<ProofScript>&, int)> lift =
      [&](const std::vector<ProofScript>& args, int level) -> ProofScript {
    if (level == 0) {
      ProofScript out = elims(outer, inner_terms);
      for (const ProofScript& a : args) out = application(out, a);
      return out;
    }
    std::vector<std::pair<std::string, ProofScript>> premises;
    std::vector<ProofScript> next;
    for (std::size_t i = 0; i < p; ++i) {
      std::string r = "e" + std::to_string(level) + "_" + std::to_string(i + 1);
      premises.push_back({r, args[i]});
      next.push_back(axiom(r, bang(N(inner_terms[i]), level - 1)));
    }
    return promotion(premises, lift(next, level - 1));
  };
  ProofScript core = lift(raised, s);
  // Box the whole computation; every input copy comes from !N(y_j).
  std::vector<std::pair<std::string, ProofScript>> premises;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      std::string a = "a" + std::to_string(j + 1);
      premises.push_back({label(i, j), axiom(a, bang(N(var(ys[j]))))});
    }
  }
  ProofScript body = promotion(premises, core);
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t i = 1; i < p; ++i) {
      body = contraction("a" + std::to_string(j + 1), body);
    }
  }
  for (std::size_t j = q; j-- > 0;) {
    body = abstraction("a" + std::to_string(j + 1), body);
  }
  for (std::size_t j = 0; j < q; ++j) {
    std::string b = "b" + std::to_string(j + 1);
    Term y = var(ys[j]);
    body = application(body, lift_coercion(axiom(b, N(y)), y, 0, coercion));
  }
  for (std::size_t j = q; j-- > 0;) {
    body = abstraction("b" + std::to_string(j + 1), body);
  }
  for (std::size_t j = q; j-- > 0;) body = intro1(ys[j], nat_type(), body);
  (void)k;
  return body;
}

std::pair<Term, int> unary_function(const ProofScript& f) {
  Totality t = require_totality(f, {"y"});
  if (t.vars.size() != 1 || t.premise_bangs[0] != 0) {
    fail(ErrorCode::ShapeMismatch,
         "expected a unary normal totality statement");
  }
  const Term& e = t.result;
  if (e.kind() == TermKind::App && e.arg() == var("y") &&
      !free_term_vars(e.fn()).count("y")) {
    return {e.fn(), t.output_bangs};
  }
  return {lam("y", nat_type(), e), t.output_bangs};
}

namespace {

// p : !^k N(a), q : !^k N(b) gives !^k N(plus a b).
ProofScript lifted_plus(const ProofScript& pa, const ProofScript& pb,
                        const Term& a, const Term& b, int k,
                        const ProofScript& plus) {
  if (k == 0) return application(application(elims(plus, {a, b}), pa), pb);
  std::string ia = "ia" + std::to_string(k), ib = "ib" + std::to_string(k);
  return promotion({{ia, pa}, {ib, pb}},
                   lifted_plus(axiom(ia, bang(N(a), k - 1)),
                               axiom(ib, bang(N(b), k - 1)), a, b, k - 1, plus));
}

// p : !^(k+1) N(a), q : !^k N(b) gives !^(k+1) N(mult a b).
ProofScript lifted_mult(const ProofScript& pa, const ProofScript& pb,
                        const Term& a, const Term& b, int k,
                        const ProofScript& mult) {
  if (k == 0) return application(application(elims(mult, {a, b}), pa), pb);
  std::string ia = "ia" + std::to_string(k), ib = "ib" + std::to_string(k);
  return promotion({{ia, pa}, {ib, pb}},
                   lifted_mult(axiom(ia, bang(N(a), k)),
                               axiom(ib, bang(N(b), k - 1)), a, b, k - 1, mult));
}

// Shared skeleton of bounded sum and product. The accumulator carries
// `acc` exponents; `base` proves !^acc N(op F 0) and `combine` builds
// !^acc N(op F (s y)) from the accumulator and the function value.
ProofScript bounded_scheme(
    const Term& f, int k, const char* op, int acc, const ProofScript& base,
    const std::function<ProofScript(const ProofScript&, const ProofScript&)>&
        combine) {
  Type n = nat_type();
  Term y = var("y"), nv = var("n");
  auto total = [&](const Term& w) { return call(op, {f, w}); };
  Formula h = forall1("y", n, lolli(N(y), bang(N(app(f, y)), k)));
  auto a_of = [&](const Term& w) {
    return tensor(N(w), bang(N(total(w)), acc));
  };
  auto b_of = [&](const Term& w) { return bang(a_of(w)); };
  Formula k1 = forall1("y", n, lolli(b_of(y), b_of(s(y))));
  Formula k2 = lolli(b_of(zero()), b_of(nv));
  std::set<std::string> avoid = {"n", "y", "w"};

  ProofScript first = tensor_elim(
      axiom("p1", a_of(y)), N(s(y)), "u1", "v1",
      weakening("v1", bang(N(total(y)), acc),
                application(elim1(y, embed(proof_succ(), avoid)),
                            axiom("u1", N(y)))));
  ProofScript second = tensor_elim(
      axiom("p2", a_of(y)), bang(N(total(s(y))), acc), "u2", "v2",
      combine(axiom("v2", bang(N(total(y)), acc)),
              application(elim1(y, axiom("hi", h)), axiom("u2", N(y)))));
  ProofScript step = intro1(
      "y", n,
      abstraction(
          "b", contraction(
                   "b", promotion({{"p1", axiom("b", b_of(y))},
                                   {"p2", axiom("b", b_of(y))},
                                   {"hi", axiom("hk", bang(h))}},
                                  tensor_intro(first, second, N(s(y)),
                                               bang(N(total(s(y))), acc), "T",
                                               "kt")))));
  ProofScript iterate = application(
      elim2({"w"}, b_of(var("w")), axiom("nn", N(nv))),
      promotion({{"hk", axiom("hh", bang(h, 2))}}, step));
  ProofScript start = application(axiom("kk", k2), base);
  ProofScript project = promotion(
      {{"pp", start}},
      tensor_elim(axiom("pp", a_of(nv)), bang(N(total(nv)), acc), "u", "v",
                  weakening("u", N(nv), axiom("v", bang(N(total(nv)), acc)))));
  ProofScript body = promotion({{"kk", iterate}}, project);
  return abstraction("hh", intro1("n", n, abstraction("nn", body)));
}

}  // namespace

ProofScript bounded_sum_scheme(const Term& f, int k) {
  std::set<std::string> avoid = {"n", "y", "w"};
  Type n = nat_type();
  Term y = var("y");
  ProofScript zero_pair = tensor_intro(
      embed(proof_zero(), avoid), promote_times(embed(proof_zero(), avoid), k),
      N(zero()), bang(N(zero()), k), "T", "kt");
  ProofScript base = promotion(
      {}, equality("w", n, tensor(N(zero()), bang(N(var("w")), k)), zero(),
                   call("sum", {f, zero()}), false,
                   use("sum_zero", true, {{"f", f}}), zero_pair));
  ProofScript plus = embed(proof_plus(), avoid);
  auto combine = [&](const ProofScript& accp, const ProofScript& fy) {
    Term a = call("sum", {f, y});
    Term b = app(f, y);
    return equality("w", n, bang(N(var("w")), k), call("plus", {a, b}),
                    call("sum", {f, s(y)}), false,
                    use("sum_succ", true, {{"f", f}, {"x", y}}),
                    lifted_plus(accp, fy, a, b, k, plus));
  };
  return bounded_scheme(f, k, "sum", k, base, combine);
}

ProofScript bounded_product_scheme(const Term& f, int k) {
  std::set<std::string> avoid = {"n", "y", "w"};
  Type n = nat_type();
  Term y = var("y");
  int acc = k + 1;
  ProofScript one_pair = tensor_intro(
      embed(proof_zero(), avoid), promote_times(embed(proof_one(), avoid), acc),
      N(zero()), bang(N(s(zero())), acc), "T", "kt");
  ProofScript base = promotion(
      {}, equality("w", n, tensor(N(zero()), bang(N(var("w")), acc)), s(zero()),
                   call("prod", {f, zero()}), false,
                   use("prod_zero", true, {{"f", f}}), one_pair));
  ProofScript mult = embed(proof_mult(), avoid);
  auto combine = [&](const ProofScript& accp, const ProofScript& fy) {
    Term a = call("prod", {f, y});
    Term b = app(f, y);
    return equality("w", n, bang(N(var("w")), acc), call("mult", {a, b}),
                    call("prod", {f, s(y)}), false,
                    use("prod_succ", true, {{"f", f}, {"x", y}}),
                    lifted_mult(accp, fy, a, b, k, mult));
  };
  return bounded_scheme(f, k, "prod", acc, base, combine);
}

namespace {

ProofScript discharge(const ProofScript& scheme, const ProofScript& f) {
  return application(scheme, promote_times(f, 2));
}

}  // namespace

ProofScript bounded_sum(const ProofScript& f, int k) {
  auto [fn, fk] = unary_function(f);
  if (fk != k) {
    fail(ErrorCode::ShapeMismatch, "the function concludes at exponent " +
                                       std::to_string(fk) + ", not " +
                                       std::to_string(k));
  }
  return discharge(bounded_sum_scheme(fn, k), f);
}

ProofScript bounded_product(const ProofScript& f, int k) {
  auto [fn, fk] = unary_function(f);
  if (fk != k) {
    fail(ErrorCode::ShapeMismatch, "the function concludes at exponent " +
                                       std::to_string(fk) + ", not " +
                                       std::to_string(k));
  }
  return discharge(bounded_product_scheme(fn, k), f);
}

const std::vector<LibraryFunction>& function_library() {
  static const std::vector<LibraryFunction> lib = {
      {"id", proof_identity(), [](std::uint64_t n) { return n; }},
      {"succ", proof_succ(), [](std::uint64_t n) { return n + 1; }},
      {"zero", proof_const_zero(), [](std::uint64_t) -> std::uint64_t { return 0; }},
      {"one", proof_const_one(), [](std::uint64_t) -> std::uint64_t { return 1; }},
      {"double", proof_double(), [](std::uint64_t n) { return 2 * n; }},
  };
  return lib;
}

const LibraryFunction* find_library_function(const std::string& name) {
  for (const LibraryFunction& f : function_library()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const std::vector<NamedProof>& corpus() {
  static const std::vector<NamedProof> all = [] {
    std::vector<NamedProof> out = {
        {"zero", proof_zero()},
        {"succ", proof_succ()},
        {"one", proof_one()},
        {"identity", proof_identity()},
        {"const_zero", proof_const_zero()},
        {"const_one", proof_const_one()},
        {"coercion", proof_coercion()},
        {"plus", proof_plus()},
        {"mult", proof_mult()},
        {"pred", proof_pred()},
        {"minus", proof_minus()},
        {"mult_normal", normalize_totality(proof_mult())},
        {"minus_normal", normalize_totality(proof_minus())},
        {"double", proof_double()},
    };
    for (const LibraryFunction& f : function_library()) {
      auto [fn, k] = unary_function(f.proof);
      out.push_back({"sum_" + f.name, bounded_sum(f.proof, k)});
    }
    for (const LibraryFunction& f : function_library()) {
      auto [fn, k] = unary_function(f.proof);
      out.push_back({"prod_" + f.name, bounded_product(f.proof, k)});
    }
    out.push_back({"plus_succ_id",
                   compose_scheme(proof_plus(),
                                  {proof_succ(), proof_identity()})});
    out.push_back({"mult_double_succ",
                   compose_scheme(normalize_totality(proof_mult()),
                                  {proof_double(), proof_succ()})});
    return out;
  }();
  return all;
}

}  // namespace elx::stdlib
