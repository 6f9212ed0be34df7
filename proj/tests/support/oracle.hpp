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


// Independent evaluation oracle: a named untyped lambda calculus with
// textbook capture-avoiding substitution, Church-coded arithmetic and plain
// integer reference functions. Shares no code with the library beyond
// reading the public structure of terms.

#ifndef ELX_TESTS_ORACLE_HPP_
#define ELX_TESTS_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elx/projections.hpp"
#include "elx/syntax.hpp"

namespace oracle {

struct LNode;
using L = std::shared_ptr<const LNode>;

struct LNode {
  enum Kind { Var, Abs, App } kind;
  std::string name;  // Var, Abs
  L a;               // Abs body, App function
  L b;               // App argument
};

L lvar(const std::string& name);
L labs(const std::string& name, L body);
L lapp(L f, L a);

// Parses "\f x. f (n f x)" style text; juxtaposition is application.
L parse(std::string_view text);
std::string show(const L& t);

// Normal-order normal form, or nullopt when `fuel` steps do not suffice.
std::optional<L> normalize(const L& t, std::uint64_t fuel,
                           std::uint64_t* steps = nullptr);
bool alpha_equal(const L& a, const L& b);

L numeral(std::uint64_t n);
std::optional<std::uint64_t> decode(const L& t);

L from_pure(const elx::PureTerm& t);

// Church implementation of a signature symbol, or nullptr.
L church_symbol(const std::string& name);

// Erases a typed term, replacing signature symbols by their Church
// implementations and free variables bound in `env` by numerals.
L interpret(const elx::Term& t, const std::map<std::string, std::uint64_t>& env);

// Evaluates a nat-typed term through the Church interpretation.
std::optional<std::uint64_t> evaluate(
    const elx::Term& t, const std::map<std::string, std::uint64_t>& env,
    std::uint64_t fuel = 2'000'000);

// Reference arithmetic, written directly on integers.
std::uint64_t ref_plus(std::uint64_t x, std::uint64_t y);
std::uint64_t ref_mult(std::uint64_t x, std::uint64_t y);
std::uint64_t ref_pred(std::uint64_t x);
std::uint64_t ref_minus(std::uint64_t x, std::uint64_t y);
template <class F>
std::uint64_t ref_sum(F f, std::uint64_t n) {
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i < n; ++i) acc += f(i);
  return acc;
}
template <class F>
std::uint64_t ref_prod(F f, std::uint64_t n) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < n; ++i) acc *= f(i);
  return acc;
}

}  // namespace oracle

#endif  // ELX_TESTS_ORACLE_HPP_
