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

#include "elx/realizability.hpp"

#include <map>
#include <memory>

#include "elx/library.hpp"
#include "elx/projections.hpp"
#include "elx/stdlib.hpp"

namespace elx {

Formula realizes(const Term& t, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<Term> args = f.args();
      args.push_back(t);
      return f.is_bound_atom() ? Formula::bound_atom(f.index(), std::move(args))
                               : Formula::atom(f.name(), std::move(args));
    }
    case FormulaKind::Lolli: {
      std::string x = fresh_name();
      Formula body = lolli(realizes(var(x), f.lhs()),
                           realizes(app(t, var(x)), f.rhs()));
      return Formula::forall1_raw("x", minus_proj(f.lhs()),
                                  close_term_var(body, x));
    }
    case FormulaKind::Forall2: {
      std::string x = fresh_name();
      std::string a = alpha_of(x);
      Formula inner = realizes(tyapp(t, tvar(a)), open_with(f, x));
      std::vector<Type> kind = f.pred_kind();
      kind.push_back(tvar(a));
      Formula q = Formula::forall2_raw(f.name(), std::move(kind),
                                       close_pred_var(inner, x));
      return Formula::forall_type_raw(alpha_of(f.name()),
                                      close_type_var(q, a));
    }
    case FormulaKind::Forall1: {
      std::string x = fresh_name();
      Formula inner = realizes(t, open_with(f, x));
      return Formula::forall1_raw(f.name(), f.type(), close_term_var(inner, x));
    }
    case FormulaKind::ForallType: {
      std::string a = fresh_name();
      Formula inner = realizes(t, open_with(f, a));
      return Formula::forall_type_raw(f.name(), close_type_var(inner, a));
    }
    case FormulaKind::Bang:
      return bang(realizes(t, f.body()));
  }
  return Formula();
}

void check_realizer_wf(const RealizabilityGoal& goal) {
  try {
    check_formula(goal.context, goal.formula);
    check_term(gamma_star(goal.context), goal.realizer,
               minus_proj(goal.formula));
  } catch (const Error& e) {
    fail(ErrorCode::PreconditionViolation,
         "realizability goal is ill-formed: " + e.describe());
  }
  check_formula(gamma_minus(goal.context),
                realizes(goal.realizer, goal.formula));
}

DataTypeSpec nat_data_type() {
  return {"N", "x", nat_pred(var("x")), nat_type()};
}

// ---------------------------------------------------------------------------
// Reference evaluation

namespace {

using Nat = std::uint64_t;

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Value {
  bool is_function = false;
  Nat number = 0;
  std::function<ValuePtr(const ValuePtr&)> apply;
};

ValuePtr number(Nat n) {
  auto v = std::make_shared<Value>();
  v->number = n;
  return v;
}

ValuePtr function(std::function<ValuePtr(const ValuePtr&)> f) {
  auto v = std::make_shared<Value>();
  v->is_function = true;
  v->apply = std::move(f);
  return v;
}

Nat as_number(const ValuePtr& v) {
  if (v->is_function) fail(ErrorCode::ShapeMismatch, "expected a number");
  return v->number;
}

ValuePtr call(const ValuePtr& f, const ValuePtr& arg) {
  if (!f->is_function) fail(ErrorCode::ShapeMismatch, "applied a number");
  return f->apply(arg);
}

Nat plus_ref(Nat x, Nat y) { return x + y; }
Nat mult_ref(Nat x, Nat y) { return x * y; }
Nat pred_ref(Nat y) { return y == 0 ? 0 : y - 1; }
Nat minus_ref(Nat x, Nat y) { return x > y ? x - y : 0; }

Nat sum_ref(const std::function<Nat(Nat)>& f, Nat n) {
  Nat acc = 0;
  for (Nat i = 0; i < n; ++i) acc += f(i);
  return acc;
}

Nat prod_ref(const std::function<Nat(Nat)>& f, Nat n) {
  Nat acc = 1;
  for (Nat i = 0; i < n; ++i) acc *= f(i);
  return acc;
}

ValuePtr binary(Nat (*op)(Nat, Nat)) {
  return function([op](const ValuePtr& x) {
    return function([op, x](const ValuePtr& y) {
      return number(op(as_number(x), as_number(y)));
    });
  });
}

ValuePtr iterated(Nat (*op)(const std::function<Nat(Nat)>&, Nat)) {
  return function([op](const ValuePtr& f) {
    return function([op, f](const ValuePtr& n) {
      auto fn = [f](Nat i) { return as_number(call(f, number(i))); };
      return number(op(fn, as_number(n)));
    });
  });
}

const std::map<std::string, ValuePtr>& symbols() {
  static const std::map<std::string, ValuePtr> table = {
      {"0", number(0)},
      {"s", function([](const ValuePtr& x) { return number(as_number(x) + 1); })},
      {"pred",
       function([](const ValuePtr& x) { return number(pred_ref(as_number(x))); })},
      {"plus", binary(plus_ref)},
      {"mult", binary(mult_ref)},
      {"minus", binary(minus_ref)},
      {"sum", iterated(sum_ref)},
      {"prod", iterated(prod_ref)},
  };
  return table;
}

ValuePtr eval(const Term& t, const std::map<std::string, ValuePtr>& env) {
  switch (t.kind()) {
    case TermKind::Var: {
      if (auto it = env.find(t.name()); it != env.end()) return it->second;
      if (auto it = symbols().find(t.name()); it != symbols().end()) {
        return it->second;
      }
      fail(ErrorCode::UnboundVariable, "cannot evaluate " + t.name());
    }
    case TermKind::App:
      return call(eval(t.fn(), env), eval(t.arg(), env));
    case TermKind::TyApp:
      return eval(t.fn(), env);
    case TermKind::TyLam:
      return eval(open_with(t, fresh_name()), env);
    case TermKind::Lam:
      return function([t, env](const ValuePtr& v) {
        std::string x = fresh_name();
        auto inner = env;
        inner[x] = v;
        return eval(open_with(t, x), inner);
      });
    case TermKind::Bound:
      break;
  }
  fail(ErrorCode::ShapeMismatch, "cannot evaluate " + to_string(t));
}

}  // namespace

std::uint64_t evaluate_term(const Term& t,
                            const std::map<std::string, std::uint64_t>& env) {
  std::map<std::string, ValuePtr> values;
  for (const auto& [name, n] : env) values[name] = number(n);
  return as_number(eval(t, values));
}

std::optional<ReferenceFunction> reference_function(const std::string& name) {
  using Args = const std::vector<Nat>&;
  if (name == "plus") return [](Args a) { return plus_ref(a[0], a[1]); };
  if (name == "mult") return [](Args a) { return mult_ref(a[0], a[1]); };
  if (name == "pred") return [](Args a) { return pred_ref(a[0]); };
  if (name == "minus") return [](Args a) { return minus_ref(a[0], a[1]); };
  for (const char* scheme : {"sum:", "prod:"}) {
    std::string prefix = scheme;
    if (name.rfind(prefix, 0) != 0) continue;
    const stdlib::LibraryFunction* f =
        stdlib::find_library_function(name.substr(prefix.size()));
    if (!f) return std::nullopt;
    auto ref = f->reference;
    if (prefix == "sum:") {
      return [ref](Args a) { return sum_ref(ref, a[0]); };
    }
    return [ref](Args a) { return prod_ref(ref, a[0]); };
  }
  if (const stdlib::LibraryFunction* f = stdlib::find_library_function(name)) {
    auto ref = f->reference;
    return [ref](Args a) { return ref(a[0]); };
  }
  return std::nullopt;
}

std::size_t reference_arity(const std::string& name) {
  if (name == "plus" || name == "mult" || name == "minus") return 2;
  return reference_function(name) ? 1 : 0;
}

std::vector<std::vector<std::uint64_t>> default_grid(
    std::size_t arity, std::optional<std::uint64_t> max) {
  Nat top = max.value_or(arity <= 2 ? 6 : 4);
  std::vector<std::vector<Nat>> out = {{}};
  for (std::size_t i = 0; i < arity; ++i) {
    std::vector<std::vector<Nat>> next;
    for (const auto& prefix : out) {
      for (Nat v = 0; v <= top; ++v) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string_view strategy_name(Strategy s) {
  return s == Strategy::NormalOrder ? "normal-order" : "stratified";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "normal-order") return Strategy::NormalOrder;
  if (name == "stratified") return Strategy::Stratified;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Conformance

namespace {

stdlib::Totality totality_of(const CheckedProof& proof) {
  auto t = stdlib::match_totality(proof.conclusion());
  if (!t) {
    fail(ErrorCode::ShapeMismatch,
         "not a totality statement: " + to_string(proof.conclusion()));
  }
  return *t;
}

}  // namespace

std::uint64_t run_program(const CheckedProof& proof,
                          const std::vector<std::uint64_t>& inputs,
                          const ConformanceOptions& options,
                          std::uint64_t* steps, CostProfile* profile) {
  stdlib::Totality tot = totality_of(proof);
  if (inputs.size() != tot.vars.size()) {
    fail(ErrorCode::ArityMismatch,
         "program takes " + std::to_string(tot.vars.size()) +
             " arguments, got " + std::to_string(inputs.size()));
  }
  if (steps) *steps = 0;
  if (options.strategy == Strategy::NormalOrder) {
    PureTerm program = erase(proof.term());
    for (Nat n : inputs) program = PureTerm::app(program, church_encode(n));
    return church_decode(normal_order_normalize(program, options.fuel, steps));
  }
  BoxTerm program = to_box_term(proof);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    program =
        BoxTerm::app(program, box_numeral(inputs[i], tot.premise_bangs[i]));
  }
  try {
    StratifiedResult r = stratified_normalize(program, options.fuel);
    if (steps) *steps = r.profile.total_steps;
    if (profile) *profile = r.profile;
    return church_decode(r.normal_form);
  } catch (const FuelExhaustedError& e) {
    if (steps) *steps = e.partial().total_steps;
    if (profile) *profile = e.partial();
    throw;
  }
}

ConformanceReport conformance_test(
    const CheckedProof& proof, const std::vector<DataTypeSpec>& specs,
    const ReferenceFunction& reference,
    const std::vector<std::vector<std::uint64_t>>& samples,
    const ConformanceOptions& options) {
  stdlib::Totality tot = totality_of(proof);
  if (specs.size() != tot.vars.size()) {
    fail(ErrorCode::ShapeMismatch,
         "expected " + std::to_string(tot.vars.size()) +
             " data type specs, got " + std::to_string(specs.size()));
  }
  for (const DataTypeSpec& s : specs) {
    if (s.name != "N") {
      fail(ErrorCode::ShapeMismatch, "only N is executable, got " + s.name);
    }
  }
  ConformanceReport report;
  for (const auto& inputs : samples) {
    SampleResult r;
    r.inputs = inputs;
    r.expected = reference(inputs);
    CostProfile profile;
    try {
      r.actual = run_program(proof, inputs, options, &r.steps, &profile);
      r.passed = *r.actual == r.expected;
    } catch (const Error& e) {
      r.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    if (options.strategy == Strategy::Stratified) r.profile = profile;
    (r.passed ? report.passed : report.failed) += 1;
    report.samples.push_back(std::move(r));
  }
  return report;
}

}  // namespace elx
