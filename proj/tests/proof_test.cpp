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

#include "elx/library.hpp"
#include "elx/projections.hpp"
#include "elx/proof.hpp"
#include "elx/script.hpp"
#include "elx/stdlib.hpp"

namespace {

using namespace elx;
using namespace elx::rules;

Context preds() {
  return Context{}.add_pred_var("X", {}).add_pred_var("Y", {});
}

Formula X() { return atom("X"); }
Formula Y() { return atom("Y"); }

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::SyntaxError, "none");
}

// f : X -o X -o Y applied to h twice.
ProofScript twice(const Formula& h, std::optional<LabelSplit> split = {}) {
  Formula f = lolli(h, lolli(h, Y()));
  return application(application(axiom("f", f), axiom("h", h)),
                     axiom("h", h), split);
}

TEST(Axiom, Sequent) {
  Context g = Context{}.add_term_var("x", nat_type());
  CheckedProof p = check_proof(axiom("h", nat_pred(var("x"))), {}, g);
  ASSERT_EQ(p.root.sequent.delta.size(), 1u);
  EXPECT_EQ(p.root.sequent.delta[0].label, "h");
  EXPECT_EQ(p.root.sequent.delta[0].formula, nat_pred(var("x")));
  EXPECT_EQ(p.term(), var("h"));
  EXPECT_EQ(p.conclusion(), nat_pred(var("x")));
}

TEST(Coercion, ClosedTermAtBangedConclusion) {
  CheckedProof p = check_proof(stdlib::proof_coercion());
  EXPECT_EQ(p.conclusion(), parse_formula("forall x:nat. N(x) -o !N(x)"));
  EXPECT_TRUE(p.root.sequent.delta.empty());
  EXPECT_TRUE(free_term_vars(p.term()).empty());
  EXPECT_EQ(minus_proj(p.conclusion()), arrow(nat_type(), nat_type()));
}

TEST(Application, SharedLinearHypothesis) {
  Error e = error_of([] { check_proof(twice(X()), {}, preds()); });
  EXPECT_EQ(e.code(), ErrorCode::LinearityViolation);
}

TEST(Application, ExplicitSplits) {
  Formula f = lolli(X(), Y());
  Context g = preds();
  ProofScript ok =
      application(axiom("f", f), axiom("h", X()), LabelSplit{{"f"}, {"h"}});
  CheckedProof p = check_proof(ok, {}, g);
  EXPECT_EQ(p.term(), app(var("f"), var("h")));
  EXPECT_EQ(p.conclusion(), Y());

  ProofScript swapped =
      application(axiom("f", f), axiom("h", X()), LabelSplit{{"h"}, {"f"}});
  EXPECT_EQ(error_of([&] { check_proof(swapped, {}, g); }).code(),
            ErrorCode::LinearityViolation);
  ProofScript overlap =
      application(axiom("f", f), axiom("h", X()), LabelSplit{{"f"}, {"f"}});
  EXPECT_EQ(error_of([&] { check_proof(overlap, {}, g); }).code(),
            ErrorCode::LinearityViolation);
  ProofScript omitted =
      application(axiom("f", f), axiom("h", X()), LabelSplit{{"f"}, {}});
  EXPECT_EQ(error_of([&] { check_proof(omitted, {}, g); }).code(),
            ErrorCode::LinearityViolation);
}

TEST(Abstraction, AnnotatesWithMinusProjection) {
  CheckedProof p = check_proof(abstraction("h", axiom("h", X())), {}, preds());
  EXPECT_EQ(p.term(), lam("h", tvar(alpha_of("X")), var("h")));
  EXPECT_EQ(p.conclusion(), lolli(X(), X()));
  EXPECT_EQ(error_of([] {
              check_proof(abstraction("k", axiom("h", X())), {}, preds());
            }).code(),
            ErrorCode::LinearityViolation);
}

TEST(Contraction, MergesBangedCopies) {
  ProofScript child = twice(bang(X()));
  ProofScript merged = contraction("h", child);
  CheckedProof c = check_proof(child, {}, preds());
  CheckedProof p = check_proof(merged, {}, preds());
  EXPECT_EQ(c.root.sequent.delta.size(), 3u);
  EXPECT_EQ(p.root.sequent.delta.size(), 2u);
  EXPECT_EQ(p.term(), c.term());
}

TEST(Contraction, NonBang) {
  ProofScript s = contraction("h", axiom("h", X()));
  EXPECT_EQ(error_of([&] { check_proof(s, {}, preds()); }).code(),
            ErrorCode::NonBangContraction);
  ProofScript once = contraction("h", axiom("h", bang(X())));
  EXPECT_EQ(error_of([&] { check_proof(once, {}, preds()); }).code(),
            ErrorCode::LinearityViolation);
}

TEST(Weakening, KeepsTermAndAddsHypothesis) {
  ProofScript inner = axiom("h", X());
  CheckedProof p = check_proof(weakening("w", Y(), inner), {}, preds());
  EXPECT_EQ(p.term(), var("h"));
  EXPECT_EQ(p.root.sequent.delta.size(), 2u);
  EXPECT_EQ(error_of([&] {
              check_proof(weakening("h", Y(), inner), {}, preds());
            }).code(),
            ErrorCode::LinearityViolation);
}

TEST(Promotion, BoxesPremises) {
  ProofScript s = promotion({{"k", axiom("h", bang(X()))}}, axiom("k", X()));
  CheckedProof p = check_proof(s, {}, preds());
  EXPECT_EQ(p.conclusion(), bang(X()));
  ASSERT_EQ(p.root.sequent.delta.size(), 1u);
  EXPECT_EQ(p.root.sequent.delta[0].label, "h");
  EXPECT_EQ(p.term(), var("h"));
  CheckedProof closed = check_proof(promotion({}, abstraction("k", axiom("k", X()))),
                                    {}, preds());
  EXPECT_EQ(closed.conclusion(), bang(lolli(X(), X())));
}

TEST(Promotion, Shape) {
  ProofScript linear = promotion({{"k", axiom("h", X())}}, axiom("k", X()));
  EXPECT_EQ(error_of([&] { check_proof(linear, {}, preds()); }).code(),
            ErrorCode::PromotionShape);
  ProofScript stray = promotion({{"k", axiom("h", bang(X()))}}, axiom("j", X()));
  EXPECT_EQ(error_of([&] { check_proof(stray, {}, preds()); }).code(),
            ErrorCode::PromotionShape);
  ProofScript missing = promotion({}, axiom("k", X()));
  EXPECT_EQ(error_of([&] { check_proof(missing, {}, preds()); }).code(),
            ErrorCode::PromotionShape);
}

TEST(Intro, SideConditionFreeVariable) {
  ProofScript s = intro1("x", nat_type(), axiom("h", nat_pred(var("x"))));
  EXPECT_EQ(error_of([&] { check_proof(s); }).code(),
            ErrorCode::SideConditionFreeVariable);
  ProofScript t = intro2("Z", {}, axiom("h", atom("Z")));
  EXPECT_EQ(error_of([&] { check_proof(t); }).code(),
            ErrorCode::SideConditionFreeVariable);
}

TEST(Intro, ExtractionOfQuantifiers) {
  ProofScript id = intro2("Z", {}, abstraction("h", axiom("h", atom("Z"))));
  CheckedProof p = check_proof(id);
  Type az = tvar(alpha_of("Z"));
  EXPECT_EQ(p.term(), tylam(alpha_of("Z"), lam("h", az, var("h"))));
  EXPECT_EQ(p.conclusion(), forall2("Z", {}, lolli(atom("Z"), atom("Z"))));

  CheckedProof q = check_proof(elim2({}, X(), id), {}, preds());
  EXPECT_EQ(q.term(), tyapp(p.term(), tvar(alpha_of("X"))));
  EXPECT_EQ(q.conclusion(), lolli(X(), X()));
}

TEST(Elim, FirstOrderInstanceKeepsTerm) {
  CheckedProof succ = check_proof(stdlib::proof_succ());
  CheckedProof at0 = check_proof(elim1(var("0"), stdlib::proof_succ()));
  EXPECT_EQ(at0.term(), succ.term());
  EXPECT_EQ(at0.conclusion(),
            lolli(nat_pred(var("0")), nat_pred(app(var("s"), var("0")))));
}

TEST(Wellformedness, IllFormedAxiom) {
  EXPECT_EQ(error_of([] { check_proof(axiom("h", atom("Q"))); }).code(),
            ErrorCode::WellformednessFailure);
  EXPECT_EQ(
      error_of([] { check_proof(axiom("h", nat_pred(var("nowhere")))); }).code(),
      ErrorCode::WellformednessFailure);
}

TEST(ApplyEquality, Examples) {
  Term a = var("a");
  Term t1 = app(var("plus"), {a, var("0")});
  Formula q = nat_pred(var("y"));
  EXPECT_EQ(apply_equality(nat_pred(t1), q, "y", t1, a), nat_pred(a));
  Formula constant = nat_pred(var("0"));
  EXPECT_EQ(apply_equality(constant, constant, "y", t1, a), constant);
  EXPECT_EQ(error_of([&] { apply_equality(nat_pred(a), q, "y", t1, a); }).code(),
            ErrorCode::HoleMismatch);
}

TEST(Equality, RewritesGoalAndKeepsTerm) {
  Context g = Context{}.add_term_var("a", nat_type());
  Term a = var("a");
  Term t1 = app(var("plus"), {a, var("0")});
  ProofScript base = axiom("h", nat_pred(t1));
  ProofScript eq = equality("y", nat_type(), nat_pred(var("y")), t1, a, false,
                            Trace::axiom("plus_zero"), base);
  CheckedProof p = check_proof(eq, {}, g);
  EXPECT_EQ(p.conclusion(), nat_pred(a));
  EXPECT_EQ(p.term(), var("h"));

  ProofScript bad = equality("y", nat_type(), nat_pred(var("y")), t1, a, false,
                             Trace::axiom("plus_succ"), base);
  EXPECT_EQ(error_of([&] { check_proof(bad, {}, g); }).code(),
            ErrorCode::EqualityTraceRejected);
}

TEST(Errors, CarryDerivationPath) {
  Formula n = nat_pred(var("y"));
  ProofScript body = application(application(axiom("f", lolli(n, lolli(n, n))),
                                             axiom("n", n)),
                                 axiom("n", n));
  ProofScript s = intro1(
      "y", nat_type(), abstraction("f", abstraction("n", body)));
  Error e = error_of([&] { check_proof(s); });
  EXPECT_EQ(e.code(), ErrorCode::LinearityViolation);
  ASSERT_GE(e.path().size(), 2u);
  EXPECT_NE(e.path()[0].find(rule_name(Rule::Intro1)), std::string::npos);
  EXPECT_NE(e.describe().find("LinearityViolation"), std::string::npos);
}

TEST(Errors, PremiseOfWrongShape) {
  Formula n = nat_pred(var("0"));
  ProofScript s = application(axiom("a", n), axiom("b", n));
  EXPECT_EQ(error_of([&] { check_proof(s); }).code(), ErrorCode::RuleViolation);
}

TEST(Rules, NamesRoundTrip) {
  for (int r = 0; r <= static_cast<int>(Rule::Equality); ++r) {
    Rule rule = static_cast<Rule>(r);
    EXPECT_EQ(rule_from_name(rule_name(rule)), rule);
  }
  EXPECT_FALSE(rule_from_name("cut").has_value());
}

void expect_stable(const Derivation& d) {
  switch (d.rule) {
    case Rule::Weakening:
    case Rule::Contraction:
    case Rule::IntroType:
    case Rule::Intro1:
    case Rule::ElimType:
    case Rule::Elim1:
    case Rule::Equality:
      EXPECT_EQ(d.sequent.term, d.children.at(0).sequent.term)
          << rule_name(d.rule);
      break;
    default:
      break;
  }
  for (const Derivation& c : d.children) expect_stable(c);
}

TEST(Corpus, ExtractionStableAndDeterministic) {
  for (const auto& named : stdlib::corpus()) {
    CheckedProof a = check_proof(named.proof);
    CheckedProof b = check_proof(named.proof);
    EXPECT_EQ(a.term(), b.term()) << named.name;
    EXPECT_EQ(a.conclusion(), b.conclusion()) << named.name;
    EXPECT_TRUE(a.root.sequent.delta.empty()) << named.name;
    expect_stable(a.root);
    CheckedProof f = check_proof(freshen(named.proof, {"y", "n", "X", "h"}));
    EXPECT_EQ(f.term(), a.term()) << named.name;
    EXPECT_TRUE(beta_equivalent(f.conclusion(), a.conclusion())) << named.name;
  }
}

}  // namespace
