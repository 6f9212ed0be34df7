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

// Proof scripts for the arithmetic library: totality of the signature
// symbols, coercion, and the composition and bounded sum/product schemes.
//
// A totality statement has the shape
//   forall x1 .. xn : nat. !^k1 N(x1) -o ... -o !^kn N(xn) -o !^k N(t)
// and is "normal" when every ki is zero.
//
// Achieved decorations:
//   plus    forall x y. N(x) -o N(y) -o N(plus x y)
//   mult    forall x y. !N(x) -o N(y) -o !N(mult x y)
//   pred    forall y. N(y) -o N(pred y)
//   minus   forall x y. !N(x) -o N(y) -o !N(minus x y)

#ifndef ELX_STDLIB_HPP_
#define ELX_STDLIB_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "elx/proof.hpp"

namespace elx::stdlib {

ProofScript proof_zero();        // N(0)
ProofScript proof_succ();        // forall y. N(y) -o N(s y)
ProofScript proof_one();         // N(s 0)
ProofScript proof_identity();    // forall y. N(y) -o N(y)
ProofScript proof_const_zero();  // forall y. N(y) -o N(0)
ProofScript proof_const_one();   // forall y. N(y) -o N(s 0)
ProofScript proof_coercion();    // forall x. N(x) -o !N(x)
ProofScript proof_plus();
ProofScript proof_mult();
ProofScript proof_pred();
ProofScript proof_minus();
// compose_scheme(plus, {identity, identity}): forall y. N(y) -o !N(plus y y)
ProofScript proof_double();

struct Totality {
  std::vector<std::string> vars;
  std::vector<int> premise_bangs;
  int output_bangs = 0;
  Term result;  // mentions vars
};

// Reads a totality statement, naming the quantified variables by `names`
// (default x1, x2, ...). Returns nullopt for other shapes.
std::optional<Totality> match_totality(
    const Formula& p, const std::vector<std::string>& names = {});
Formula totality_formula(const Totality& t);

// Conclusion of a closed script under the standard signature and equations.
Formula conclusion_of(const ProofScript& proof);

// Precomposes coercions so that every premise is undecorated. The optional
// shape lists the expected premise exponents. Throws ShapeMismatch.
ProofScript normalize_totality(const ProofScript& proof,
                               const std::optional<std::vector<int>>& shape =
                                   std::nullopt);

// f: normal totality in p variables with output exponent k; each g: normal
// totality in q variables with output exponent k_i. Concludes
//   forall y1..yq. N(y1) -o .. -o N(yq) -o !^(s+k+1) N(f (g1 y..) .. (gp y..))
// with s the sum of the k_i. Throws ArityMismatch or ShapeMismatch.
ProofScript compose_scheme(const ProofScript& f,
                           const std::vector<ProofScript>& gs);

// The function term F of a unary normal totality proof
// forall y. N(y) -o !^k N(e), as lambda y. e (eta-reduced when possible),
// together with k.
std::pair<Term, int> unary_function(const ProofScript& f);

// !!(forall y. N(y) -o !^k N(F y)) -o forall n. N(n) -o !^(k+2) N(sum F n)
ProofScript bounded_sum_scheme(const Term& f, int k);
// !!(forall y. N(y) -o !^k N(F y)) -o forall n. N(n) -o !^(k+3) N(prod F n)
ProofScript bounded_product_scheme(const Term& f, int k);
// The schemes discharged with a unary normal totality proof f whose output
// exponent must equal k. Throws ShapeMismatch.
ProofScript bounded_sum(const ProofScript& f, int k);
ProofScript bounded_product(const ProofScript& f, int k);

// A unary function of the sample library used for sum and prod.
struct LibraryFunction {
  std::string name;
  ProofScript proof;
  std::function<std::uint64_t(std::uint64_t)> reference;
};
const std::vector<LibraryFunction>& function_library();
const LibraryFunction* find_library_function(const std::string& name);

struct NamedProof {
  std::string name;
  ProofScript proof;
};
// Every script shipped with the library, in dependency order.
const std::vector<NamedProof>& corpus();

}  // namespace elx::stdlib

#endif  // ELX_STDLIB_HPP_
