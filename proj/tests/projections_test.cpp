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

#include <algorithm>
#include <random>

#include "elx/library.hpp"
#include "elx/projections.hpp"
#include "elx/proof.hpp"
#include "elx/stdlib.hpp"
#include "named.hpp"
#include "oracle.hpp"

namespace {

using namespace elx;

Type alpha(const std::string& pred) { return tvar(alpha_of(pred)); }

EalType e_arrow(const EalType& a, const EalType& b) {
  return EalType::arrow(a, b);
}

TEST(MinusProj, Anchors) {
  EXPECT_EQ(minus_proj(equality(nat_type(), var("a"), var("b"))), unit_type());
  EXPECT_EQ(minus_proj(equality(tvar("c"), var("a"), var("b"))), unit_type());
  EXPECT_EQ(minus_proj(nat_pred(var("x"))), nat_type());
  EXPECT_EQ(minus_proj(nat_pred(app(var("s"), var("0")))), nat_type());
}

TEST(MinusProj, Clauses) {
  EXPECT_EQ(minus_proj(forall1("x", tvar("t"), atom("X", {var("x")}))),
            alpha("X"));
  EXPECT_EQ(minus_proj(lolli(atom("X"), atom("Y"))),
            arrow(alpha("X"), alpha("Y")));
  EXPECT_EQ(minus_proj(bang(atom("X", {var("u")}), 2)), alpha("X"));
  EXPECT_EQ(minus_proj(forall_type("c", atom("X"))), alpha("X"));
  EXPECT_EQ(minus_proj(forall2("X", {nat_type()}, atom("X", {var("0")}))),
            forall_type("a", tvar("a")));
}

TEST(MinusProj, TensorIsChurchPair) {
  Type want = forall_type(
      "t", arrow(arrow(alpha("P"), arrow(alpha("Q"), tvar("t"))), tvar("t")));
  EXPECT_EQ(minus_proj(tensor(atom("P"), atom("Q"))), want);
}

TEST(CircleProj, Examples) {
  EalType a = EalType::var("a");
  EalType n = eal_forall(
      "a", e_arrow(EalType::bang(e_arrow(a, a)), EalType::bang(e_arrow(a, a))));
  EXPECT_EQ(circle_proj(nat_pred(var("x"))), n);
  EXPECT_EQ(eal_nat(), n);
  EalType ax = EalType::var(alpha_of("X"));
  EXPECT_EQ(circle_proj(atom("X", {var("t")})), ax);
  EXPECT_EQ(circle_proj(bang(atom("X", {var("t")}))), EalType::bang(ax));
  EXPECT_EQ(circle_proj(lolli(atom("X"), bang(atom("X")))),
            e_arrow(ax, EalType::bang(ax)));
}

TEST(GammaStar, Examples) {
  Context x = Context{}.add_pred_var("X", {nat_type()});
  EXPECT_EQ(gamma_star(x), Context{}.add_type_var(alpha_of("X")));
  Context plain = Context{}.add_type_var("a").add_term_var("x", tvar("a"));
  EXPECT_EQ(gamma_star(plain), plain);
  EXPECT_EQ(gamma_star(Context{}), Context{});
}

TEST(GammaMinus, Examples) {
  Context x = Context{}.add_pred_var("X", {nat_type()});
  Context want = Context{}
                     .add_type_var(alpha_of("X"))
                     .add_pred_var("X", {nat_type(), alpha("X")});
  EXPECT_EQ(gamma_minus(x), want);
  Context plain = Context{}.add_term_var("x", nat_type());
  EXPECT_EQ(gamma_minus(plain), plain);
  EXPECT_EQ(gamma_minus(Context{}), Context{});
}

TEST(Erase, Examples) {
  PureTerm zero = pure_lam("f", pure_lam("x", PureTerm::free("x")));
  EXPECT_EQ(erase(church_numeral(0)), zero);
  Term poly_id = tylam("a", lam("x", tvar("a"), var("x")));
  EXPECT_EQ(erase(tyapp(poly_id, nat_type())), pure_lam("x", PureTerm::free("x")));
}

TEST(Erase, PlusProofTermAddsChurchNumerals) {
  CheckedProof plus = check_proof(stdlib::proof_plus());
  PureTerm t = erase(plus.term());
  EXPECT_TRUE(free_vars(t).empty());
  oracle::L f = oracle::from_pure(t);
  for (std::uint64_t x = 0; x <= 4; ++x) {
    for (std::uint64_t y = 0; y <= 4; ++y) {
      auto nf = oracle::normalize(
          oracle::lapp(oracle::lapp(f, oracle::numeral(x)), oracle::numeral(y)),
          1'000'000);
      ASSERT_TRUE(nf.has_value());
      EXPECT_EQ(oracle::decode(*nf), x + y) << x << "+" << y;
    }
  }
}

TEST(Erase, CommutesWithBeta) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Term t = named::build(named::random_term(rng, 4));
    auto step = beta_step(t);
    if (!step) continue;
    auto a = oracle::normalize(oracle::from_pure(erase(t)), 10'000);
    auto b = oracle::normalize(oracle::from_pure(erase(*step)), 10'000);
    if (!a || !b) continue;
    EXPECT_TRUE(oracle::alpha_equal(*a, *b)) << to_string(t);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

int bang_count(const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::Lolli:
      return bang_count(p.lhs()) + bang_count(p.rhs());
    case FormulaKind::Bang:
      return 1 + bang_count(p.body());
    default:
      return bang_count(p.body());
  }
}

int bang_count(const EalType& t) {
  switch (t.kind()) {
    case EalKind::Var:
    case EalKind::Bound:
      return 0;
    case EalKind::Arrow:
      return bang_count(t.from()) + bang_count(t.to());
    case EalKind::Bang:
      return 1 + bang_count(t.body());
    case EalKind::Forall:
      return bang_count(t.body());
  }
  return 0;
}

int bang_depth(const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::Lolli:
      return std::max(bang_depth(p.lhs()), bang_depth(p.rhs()));
    case FormulaKind::Bang:
      return 1 + bang_depth(p.body());
    default:
      return bang_depth(p.body());
  }
}

int bang_depth(const EalType& t) {
  switch (t.kind()) {
    case EalKind::Var:
    case EalKind::Bound:
      return 0;
    case EalKind::Arrow:
      return std::max(bang_depth(t.from()), bang_depth(t.to()));
    case EalKind::Bang:
      return 1 + bang_depth(t.body());
    case EalKind::Forall:
      return bang_depth(t.body());
  }
  return 0;
}

TEST(Projections, CommuteWithSubstitutionAndKeepBangs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    named::FmP p = named::random_formula(rng, 5);
    Formula f = named::build(p);
    Term t = named::build(named::random_term(rng, 2));
    Type ty = named::build(named::random_type(rng, 2));
    EXPECT_EQ(minus_proj(subst(f, "x", t)), minus_proj(f)) << to_string(f);
    EXPECT_EQ(minus_proj(subst_type(f, "a", ty)), subst(minus_proj(f), "a", ty))
        << to_string(f);
    EalType c = circle_proj(f);
    EXPECT_EQ(bang_count(c), bang_count(f)) << to_string(f);
    EXPECT_EQ(bang_depth(c), bang_depth(f)) << to_string(f);
  }
}

TEST(Projections, AtomImagesAgree) {
  Formula p = atom("X", {var("u")});
  ASSERT_EQ(minus_proj(p).kind(), TypeKind::Var);
  ASSERT_EQ(circle_proj(p).kind(), EalKind::Var);
  EXPECT_EQ(minus_proj(p).name(), circle_proj(p).name());
}

}  // namespace
