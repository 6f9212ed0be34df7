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

#include <gtest/gtest.h>

#include "elx/error.hpp"
#include "elx/library.hpp"
#include "elx/syntax.hpp"
#include "named.hpp"

namespace {

using namespace elx;
using named::build;

Type a_() { return tvar("a"); }
Type b_() { return tvar("b"); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::SyntaxError;
}

TEST(Alpha, RenamedBinderIsEqual) {
  EXPECT_EQ(lam("x", a_(), var("x")), lam("y", a_(), var("y")));
  EXPECT_FALSE(lam("x", a_(), var("x")) == lam("x", b_(), var("x")));
  EXPECT_EQ(forall2("X", {nat_type()}, atom("X", {var("0")})),
            forall2("Y", {nat_type()}, atom("Y", {var("0")})));
  EXPECT_EQ(forall_type("a", arrow(a_(), a_())),
            forall_type("c", arrow(tvar("c"), tvar("c"))));
}

TEST(Alpha, FreeNamesMatter) {
  EXPECT_FALSE(var("x") == var("y"));
  EXPECT_FALSE(atom("X", {}) == atom("Y", {}));
  EXPECT_FALSE(lam("x", a_(), var("y")) == lam("x", a_(), var("z")));
}

TEST(Alpha, FreeVariablesSurviveRenaming) {
  named::TmP t = named::tm_lam(
      "x", named::ty_var("a"),
      named::tm_app(named::tm_var("f"), named::tm_app(named::tm_var("x"),
                                                      named::tm_var("y"))));
  Term built = build(t);
  Term renamed = build(named::alpha_variant(t));
  EXPECT_EQ(built, renamed);
  EXPECT_EQ(free_term_vars(built), (std::set<std::string>{"f", "y"}));
  EXPECT_EQ(free_term_vars(renamed), free_term_vars(built));
  EXPECT_EQ(free_type_vars(built), std::set<std::string>{"a"});
}

TEST(SubstTypeInType, Examples) {
  EXPECT_EQ(subst(arrow(a_(), a_()), "a", b_()), arrow(b_(), b_()));
  Type closed = forall_type("a", a_());
  EXPECT_EQ(subst(closed, "a", b_()), closed);

  // (forall g. g -> a)[g/a]: the binder must move out of the way.
  Type t = forall_type("g", arrow(tvar("g"), a_()));
  Type got = subst(t, "a", tvar("g"));
  named::TyP want = named::ty_forall(
      "g2", named::ty_arrow(named::ty_var("g2"), named::ty_var("g")));
  EXPECT_EQ(got, build(want));
  EXPECT_EQ(free_type_vars(got), std::set<std::string>{"g"});
}

TEST(SubstTermInTerm, Examples) {
  Term s = app(var("k"), var("m"));
  EXPECT_EQ(subst(var("x"), "x", s), s);
  Term shadow = lam("x", a_(), var("x"));
  EXPECT_EQ(subst(shadow, "x", s), shadow);
  Term id = lam("y", a_(), var("y"));
  EXPECT_EQ(subst(app(var("f"), var("x")), "x", id), app(var("f"), id));
}

TEST(SubstTermInTerm, AvoidsCapture) {
  // (fun(y:a) x)[y/x] is fun(z:a) y, not the identity.
  Term got = subst(lam("y", a_(), var("x")), "x", var("y"));
  EXPECT_EQ(got, lam("z", a_(), var("y")));
  EXPECT_FALSE(got == lam("y", a_(), var("y")));
}

TEST(SubstTypeInTerm, ReachesAnnotationsAndTypeArguments) {
  Term t = tyapp(lam("x", a_(), var("x")), arrow(a_(), a_()));
  Term got = subst_type(t, "a", b_());
  EXPECT_EQ(got, tyapp(lam("x", b_(), var("x")), arrow(b_(), b_())));
  Term bound = tylam("a", lam("x", a_(), var("x")));
  EXPECT_EQ(subst_type(bound, "a", b_()), bound);
}

TEST(SubstInFormula, TermAndTypeSorts) {
  Formula p = forall1("y", a_(), atom("X", {var("x"), var("y")}));
  EXPECT_EQ(subst(p, "x", var("y")),
            forall1("w", a_(), atom("X", {var("y"), var("w")})));
  Formula q = forall_type("b", forall1("y", a_(), atom("X", {var("y")})));
  EXPECT_EQ(subst_type(q, "a", b_()),
            forall_type("c", forall1("y", b_(), atom("X", {var("y")}))));
}

TEST(SubstPred, TwoAtoms) {
  Term t1 = var("t1");
  Term t2 = app(var("s"), var("t2"));
  Formula q = atom("Y", {var("x"), var("x")});
  Formula p = lolli(atom("X", {t1}), atom("X", {t2}));
  EXPECT_EQ(subst_pred(p, "X", {"x"}, q),
            lolli(atom("Y", {t1, t1}), atom("Y", {t2, t2})));
}

TEST(SubstPred, UnderFirstOrderBinder) {
  Formula p = forall1("y", a_(), atom("X", {var("y")}));
  Formula q = atom("Y", {var("x")});
  EXPECT_EQ(subst_pred(p, "X", {"x"}, q),
            forall1("y", a_(), atom("Y", {var("y")})));

  // Q mentions a free y: the binder must be renamed.
  Formula q2 = atom("Y", {var("x"), var("y")});
  EXPECT_EQ(subst_pred(p, "X", {"x"}, q2),
            forall1("v", a_(), atom("Y", {var("v"), var("y")})));
}

TEST(SubstPred, ArityMismatch) {
  Formula p = atom("X", {var("a"), var("b")});
  EXPECT_EQ(code_of([&] { subst_pred(p, "X", {"x"}, atom("Y", {})); }),
            ErrorCode::ArityMismatch);
}

TEST(SubstPred, BoundPredicateUntouched) {
  Formula p = forall2("X", {a_()}, atom("X", {var("u")}));
  EXPECT_EQ(subst_pred(p, "X", {"x"}, atom("Y", {})), p);
}

TEST(BetaStep, Examples) {
  EXPECT_EQ(*beta_step(app(lam("x", a_(), var("x")), var("y"))), var("y"));
  Term poly = tylam("a", lam("x", a_(), var("x")));
  EXPECT_EQ(*beta_step(tyapp(poly, b_())), lam("x", b_(), var("x")));
  EXPECT_FALSE(beta_step(var("x")).has_value());
}

TEST(BetaStep, LeftmostOutermost) {
  Term inner = app(lam("y", a_(), var("y")), var("z"));
  Term outer = app(lam("x", a_(), var("x")), inner);
  EXPECT_EQ(*beta_step(outer), inner);
}

TEST(BetaStep, InsideFormulaArguments) {
  Formula p = atom("X", {app(lam("x", a_(), var("x")), var("y"))});
  EXPECT_EQ(*beta_step(p), atom("X", {var("y")}));
  EXPECT_FALSE(beta_step(atom("X", {var("y")})).has_value());
}

TEST(BetaNormalize, Examples) {
  Term t = app(lam("x", a_(), var("x")),
               app(lam("y", a_(), var("y")), var("z")));
  EXPECT_EQ(beta_normalize(t), var("z"));

  // Church two at nat applied to s' and z', unfolded by hand.
  Term two = church_numeral(2);
  Term got = beta_normalize(app(tyapp(two, nat_type()), {var("s'"), var("z'")}));
  EXPECT_EQ(got, app(var("s'"), app(var("s'"), var("z'"))));
}

TEST(BetaNormalize, FuelExhausted) {
  Term id = lam("x", a_(), var("x"));
  Term three = app(id, app(id, app(id, var("z"))));
  EXPECT_EQ(code_of([&] { beta_normalize(three, 1); }),
            ErrorCode::FuelExhausted);
  EXPECT_EQ(beta_normalize(three, 3), var("z"));
}

TEST(BetaNormalize, StrategiesAgree) {
  Term id = lam("x", a_(), var("x"));
  Term k = lam("u", a_(), lam("v", b_(), var("u")));
  Term t = app(app(k, app(id, var("p"))), app(id, var("q")));
  EXPECT_EQ(beta_normalize(t), beta_normalize_innermost(t));
  EXPECT_EQ(beta_normalize(t), var("p"));
  EXPECT_TRUE(is_beta_normal(beta_normalize(t)));
}

TEST(BetaNormalize, Formulas) {
  Term id = lam("x", nat_type(), var("x"));
  Formula p = nat_pred(app(id, var("n")));
  EXPECT_EQ(beta_normalize(p), nat_pred(var("n")));
  EXPECT_TRUE(beta_equivalent(p, nat_pred(var("n"))));
}

TEST(FormulaLibrary, EqualityUnfolds) {
  Type tau = a_();
  named::FmP want = named::fm_forall2(
      "X", {named::ty_var("a")},
      named::fm_lolli(named::fm_atom("X", {named::tm_var("t1")}),
                      named::fm_atom("X", {named::tm_var("t2")})));
  EXPECT_EQ(equality(tau, var("t1"), var("t2")), build(want));
}

TEST(FormulaLibrary, NatUnfolds) {
  using namespace named;
  TyP nat = ty_forall("a", ty_arrow(ty_arrow(ty_var("a"), ty_var("a")),
                                    ty_arrow(ty_var("a"), ty_var("a"))));
  EXPECT_EQ(build(nat), nat_type());
  FmP step = fm_forall1(
      "y", nat,
      fm_lolli(fm_atom("X", {tm_var("y")}),
               fm_atom("X", {tm_app(tm_var("s"), tm_var("y"))})));
  FmP base = fm_lolli(fm_atom("X", {tm_var("0")}), fm_atom("X", {tm_var("x")}));
  FmP want = fm_forall2("X", {nat}, fm_lolli(fm_bang(step), fm_bang(base)));
  EXPECT_EQ(nat_pred(var("x")), build(want));
}

TEST(FormulaLibrary, TensorUnfolds) {
  using namespace named;
  FmP p = fm_atom("P", {});
  FmP q = fm_atom("Q", {tm_var("u")});
  FmP t = fm_atom("T", {});
  FmP want = fm_forall2("T", {}, fm_lolli(fm_lolli(p, fm_lolli(q, t)), t));
  EXPECT_EQ(tensor(build(p), build(q)), build(want));
  // A component that mentions the name of the tensor's own binder.
  Formula clash = atom("T", {});
  Formula got = tensor(clash, clash);
  auto parts = match_tensor(got);
  ASSERT_TRUE(parts.has_value());
  EXPECT_EQ(parts->first, clash);
  EXPECT_EQ(free_pred_vars(got), std::set<std::string>{"T"});
}

TEST(FormulaLibrary, MatchersInvertConstructors) {
  Term t = app(var("s"), var("0"));
  EXPECT_EQ(*match_nat_pred(nat_pred(t)), t);
  auto eq = match_equality(equality(nat_type(), var("a"), var("b")));
  ASSERT_TRUE(eq.has_value());
  EXPECT_EQ(eq->lhs, var("a"));
  EXPECT_EQ(eq->rhs, var("b"));
  EXPECT_FALSE(match_nat_pred(atom("X", {t})).has_value());
  auto [k, core] = strip_bangs(bang(nat_pred(t), 3));
  EXPECT_EQ(k, 3);
  EXPECT_EQ(core, nat_pred(t));
}

TEST(AlphaInjection, DeterministicInjectiveAndReserved) {
  EXPECT_EQ(alpha_of("X"), alpha_of("X"));
  EXPECT_NE(alpha_of("X"), alpha_of("Y"));
  EXPECT_NE(alpha_of("X"), "X");
  EXPECT_TRUE(is_alpha_name(alpha_of("X")));
  EXPECT_FALSE(is_alpha_name("a"));
  EXPECT_FALSE(is_alpha_name("X"));
}

}  // namespace
