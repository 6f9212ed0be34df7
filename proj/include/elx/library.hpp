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

// Derived types and formulas: Church naturals, Leibniz equality, the
// natural-number predicate N, the second-order tensor and extensionality.

#ifndef ELX_LIBRARY_HPP_
#define ELX_LIBRARY_HPP_

#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "elx/syntax.hpp"

namespace elx {

// forall a. (a -> a) -> a -> a
Type nat_type();
// forall a. a -> a
Type unit_type();

// Fun(a) fun(f : a -> a) fun(x : a) f (... (f x))
Term church_numeral(int n);

// Signature constants used by the library formulas.
inline const char kZero[] = "0";
inline const char kSucc[] = "s";

// forall2 X:[type]. X(a) -o X(b)
Formula equality(const Type& type, const Term& a, const Term& b);
// forall2 X:[nat]. !(forall y:nat. X(y) -o X(s y)) -o !(X(0) -o X(t))
Formula nat_pred(const Term& t);
// forall2 T:[]. (p -o q -o T) -o T
Formula tensor(const Formula& p, const Formula& q);
// forall a b:Type. forall f g:a->b. (forall x:a. f x = g x) -o f = g
Formula extensionality();

struct EqualityParts {
  Type type;
  Term lhs;
  Term rhs;
};

// Structural recognizers; each succeeds exactly when the formula is
// alpha-equal to the corresponding constructor applied to the result.
std::optional<Term> match_nat_pred(const Formula& p);
std::optional<EqualityParts> match_equality(const Formula& p);
std::optional<std::pair<Formula, Formula>> match_tensor(const Formula& p);

// Strips k leading bangs; returns (k, rest).
std::pair<int, Formula> strip_bangs(const Formula& p);

}  // namespace elx

#endif  // ELX_LIBRARY_HPP_
