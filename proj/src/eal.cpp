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

#include "elx/eal.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace elx {

// ---------------------------------------------------------------------------
// Derivations

std::string_view eal_rule_name(EalRule rule) {
  static constexpr std::array<std::string_view, 8> kNames = {
      "axiom",       "weakening",   "contraction",   "promotion",
      "application", "abstraction", "forall-intro",  "forall-elim"};
  return kNames[static_cast<std::size_t>(rule)];
}

namespace {

// Simultaneous substitution of free names; goes through private names so
// that a value mentioning another substituted name is left alone.
PureTerm subst_all(const PureTerm& t, const std::vector<std::string>& names,
                   const std::vector<PureTerm>& values) {
  PureTerm out = t;
  std::vector<std::string> tmp;
  for (const std::string& n : names) {
    tmp.push_back(fresh_name());
    out = subst(out, n, PureTerm::free(tmp.back()));
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    out = subst(out, tmp[i], values[i]);
  }
  return out;
}

std::vector<EalHypothesis> concat(const std::vector<EalHypothesis>& a,
                                  const std::vector<EalHypothesis>& b) {
  std::vector<EalHypothesis> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

EalDerivation translate(const Derivation& d) {
  const ProofNode& n = d.script.node();
  EalDerivation e;
  switch (d.rule) {
    case Rule::Axiom:
      e.rule = EalRule::Axiom;
      e.name = n.name;
      e.type = circle_proj(d.sequent.goal);
      e.delta = {{n.name, e.type}};
      e.term = PureTerm::free(n.name);
      return e;
    case Rule::Weakening: {
      EalDerivation c = translate(d.children[0]);
      e.rule = EalRule::Weakening;
      e.name = n.name;
      e.payload = circle_proj(n.formula);
      e.delta = concat(c.delta, {{n.name, e.payload}});
      e.term = c.term;
      e.type = c.type;
      e.children.push_back(std::move(c));
      return e;
    }
    case Rule::Application: {
      EalDerivation f = translate(d.children[0]);
      EalDerivation a = translate(d.children[1]);
      e.rule = EalRule::Application;
      e.delta = concat(f.delta, a.delta);
      e.term = PureTerm::app(f.term, a.term);
      e.type = f.type.kind() == EalKind::Arrow ? f.type.to() : EalType();
      e.children.push_back(std::move(f));
      e.children.push_back(std::move(a));
      return e;
    }
    case Rule::Abstraction: {
      EalDerivation c = translate(d.children[0]);
      e.rule = EalRule::Abstraction;
      e.name = n.name;
      EalType from;
      for (const EalHypothesis& h : c.delta) {
        if (h.label == n.name) from = h.type;
        else e.delta.push_back(h);
      }
      e.term = pure_lam(n.name, c.term);
      e.type = EalType::arrow(from, c.type);
      e.children.push_back(std::move(c));
      return e;
    }
    case Rule::Promotion: {
      e.rule = EalRule::Promotion;
      e.labels = n.labels;
      std::vector<PureTerm> values;
      for (std::size_t i = 0; i + 1 < d.children.size(); ++i) {
        EalDerivation p = translate(d.children[i]);
        e.delta = concat(e.delta, p.delta);
        values.push_back(p.term);
        e.children.push_back(std::move(p));
      }
      EalDerivation inner = translate(d.children.back());
      e.term = subst_all(inner.term, n.labels, values);
      e.type = EalType::bang(inner.type);
      e.children.push_back(std::move(inner));
      return e;
    }
    case Rule::Contraction: {
      EalDerivation c = translate(d.children[0]);
      e.rule = EalRule::Contraction;
      e.name = n.name;
      bool dropped = false;
      for (const EalHypothesis& h : c.delta) {
        if (!dropped && h.label == n.name) {
          dropped = true;
          continue;
        }
        e.delta.push_back(h);
      }
      e.term = c.term;
      e.type = c.type;
      e.children.push_back(std::move(c));
      return e;
    }
    case Rule::Intro2: {
      EalDerivation c = translate(d.children[0]);
      e.rule = EalRule::ForallIntro;
      e.name = alpha_of(n.name);
      e.delta = c.delta;
      e.term = c.term;
      e.type = eal_forall(e.name, c.type);
      e.children.push_back(std::move(c));
      return e;
    }
    case Rule::Elim2: {
      EalDerivation c = translate(d.children[0]);
      e.rule = EalRule::ForallElim;
      e.payload = circle_proj(n.formula);
      e.delta = c.delta;
      e.term = c.term;
      e.type = c.type.kind() == EalKind::Forall ? instantiate(c.type, e.payload)
                                                : EalType();
      e.children.push_back(std::move(c));
      return e;
    }
    case Rule::IntroType:
    case Rule::Intro1:
    case Rule::ElimType:
    case Rule::Elim1:
    case Rule::Equality:
      return translate(d.children[0]);
  }
  fail(ErrorCode::RuleViolation, "unknown rule");
}

[[noreturn]] void violation(const EalDerivation& d, const std::string& msg) {
  fail(ErrorCode::RuleViolation,
       std::string(eal_rule_name(d.rule)) + ": " + msg);
}

bool same_multiset(std::vector<EalHypothesis> a, std::vector<EalHypothesis> b) {
  if (a.size() != b.size()) return false;
  auto by_label = [](const EalHypothesis& x, const EalHypothesis& y) {
    return x.label < y.label;
  };
  std::stable_sort(a.begin(), a.end(), by_label);
  std::stable_sort(b.begin(), b.end(), by_label);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].label != b[i].label || !(a[i].type == b[i].type)) return false;
  }
  return true;
}

void require_children(const EalDerivation& d, std::size_t n) {
  if (d.children.size() != n) {
    violation(d, "expected " + std::to_string(n) + " premises, found " +
                     std::to_string(d.children.size()));
  }
}

// Multiset union where a label shared by both sides must have a !-type.
std::vector<EalHypothesis> join(const EalDerivation& d,
                                const std::vector<EalHypothesis>& a,
                                const std::vector<EalHypothesis>& b) {
  for (const EalHypothesis& h : b) {
    for (const EalHypothesis& g : a) {
      if (g.label == h.label &&
          (g.type.kind() != EalKind::Bang || !(g.type == h.type))) {
        violation(d, "label " + h.label + " shared at a non-! type");
      }
    }
  }
  return concat(a, b);
}

void check_node(const EalDerivation& d);

void check_child(const EalDerivation& d, std::size_t i) {
  try {
    check_node(d.children[i]);
  } catch (Error& err) {
    err.push_frame(std::string(eal_rule_name(d.rule)) + "[" +
                   std::to_string(i) + "]");
    throw;
  }
}

void check_node(const EalDerivation& d) {
  for (std::size_t i = 0; i < d.children.size(); ++i) check_child(d, i);
  std::vector<EalHypothesis> delta;
  PureTerm term;
  EalType type;
  switch (d.rule) {
    case EalRule::Axiom:
      require_children(d, 0);
      delta = {{d.name, d.type}};
      term = PureTerm::free(d.name);
      type = d.type;
      break;
    case EalRule::Weakening: {
      require_children(d, 1);
      const EalDerivation& c = d.children[0];
      delta = join(d, c.delta, {{d.name, d.payload}});
      term = c.term;
      type = c.type;
      break;
    }
    case EalRule::Contraction: {
      require_children(d, 1);
      const EalDerivation& c = d.children[0];
      int count = 0;
      bool dropped = false;
      for (const EalHypothesis& h : c.delta) {
        if (h.label != d.name) {
          delta.push_back(h);
          continue;
        }
        ++count;
        if (h.type.kind() != EalKind::Bang) {
          violation(d, "contracted label " + d.name + " is not a !-type");
        }
        if (dropped) delta.push_back(h);
        dropped = true;
      }
      if (count < 2) violation(d, "label " + d.name + " occurs fewer than twice");
      term = c.term;
      type = c.type;
      break;
    }
    case EalRule::Promotion: {
      std::size_t k = d.labels.size();
      require_children(d, k + 1);
      const EalDerivation& inner = d.children[k];
      std::vector<EalHypothesis> expected;
      std::vector<PureTerm> values;
      for (std::size_t i = 0; i < k; ++i) {
        const EalDerivation& p = d.children[i];
        if (p.type.kind() != EalKind::Bang) {
          violation(d, "premise " + std::to_string(i) + " is not a !-type");
        }
        expected.push_back({d.labels[i], p.type.body()});
        values.push_back(p.term);
        delta = join(d, delta, p.delta);
      }
      if (!same_multiset(expected, inner.delta)) {
        violation(d, "inner hypotheses do not match the premises");
      }
      term = subst_all(inner.term, d.labels, values);
      type = EalType::bang(inner.type);
      break;
    }
    case EalRule::Application: {
      require_children(d, 2);
      const EalDerivation& f = d.children[0];
      const EalDerivation& a = d.children[1];
      if (f.type.kind() != EalKind::Arrow || !(f.type.from() == a.type)) {
        violation(d, "cannot apply " + to_string(f.type) + " to " +
                         to_string(a.type));
      }
      delta = join(d, f.delta, a.delta);
      term = PureTerm::app(f.term, a.term);
      type = f.type.to();
      break;
    }
    case EalRule::Abstraction: {
      require_children(d, 1);
      const EalDerivation& c = d.children[0];
      EalType from;
      int count = 0;
      for (const EalHypothesis& h : c.delta) {
        if (h.label == d.name) {
          from = h.type;
          ++count;
        } else {
          delta.push_back(h);
        }
      }
      if (count != 1) {
        violation(d, "label " + d.name + " must occur exactly once");
      }
      term = pure_lam(d.name, c.term);
      type = EalType::arrow(from, c.type);
      break;
    }
    case EalRule::ForallIntro: {
      require_children(d, 1);
      const EalDerivation& c = d.children[0];
      for (const EalHypothesis& h : c.delta) {
        if (free_type_vars(h.type).count(d.name)) {
          violation(d, d.name + " is free in hypothesis " + h.label);
        }
      }
      delta = c.delta;
      term = c.term;
      type = eal_forall(d.name, c.type);
      break;
    }
    case EalRule::ForallElim: {
      require_children(d, 1);
      const EalDerivation& c = d.children[0];
      if (c.type.kind() != EalKind::Forall) {
        violation(d, "premise type " + to_string(c.type) + " is not universal");
      }
      delta = c.delta;
      term = c.term;
      type = instantiate(c.type, d.payload);
      break;
    }
  }
  if (!same_multiset(delta, d.delta)) violation(d, "hypotheses differ");
  if (!(term == d.term)) {
    violation(d, "term " + to_string(d.term) + " should be " + to_string(term));
  }
  if (!(type == d.type)) {
    violation(d, "type " + to_string(d.type) + " should be " + to_string(type));
  }
}

}  // namespace

EalDerivation translate_to_eal(const CheckedProof& proof) {
  return translate(proof.root);
}

void check_eal(const EalDerivation& d) { check_node(d); }

std::size_t eal_size(const EalDerivation& d) {
  std::size_t n = 1;
  for (const EalDerivation& c : d.children) n += eal_size(c);
  return n;
}

// ---------------------------------------------------------------------------
// Box terms

struct BoxTerm::Node {
  BoxKind kind;
  int index = 0;
  std::string name;
  BoxTerm a;  // Lam/Box body, App function
  BoxTerm b;  // App argument
  std::vector<BoxTerm> pending;
  std::uint64_t size = 1;
  int loose = 0;
  int depth = 0;
};

BoxTerm BoxTerm::var(int index) {
  auto n = std::make_shared<Node>();
  n->kind = BoxKind::Var;
  n->index = index;
  n->loose = index + 1;
  return BoxTerm(std::move(n));
}

BoxTerm BoxTerm::local(int slot) {
  auto n = std::make_shared<Node>();
  n->kind = BoxKind::Local;
  n->index = slot;
  return BoxTerm(std::move(n));
}

BoxTerm BoxTerm::free(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = BoxKind::Free;
  n->name = std::move(name);
  return BoxTerm(std::move(n));
}

BoxTerm BoxTerm::lam(std::string hint, BoxTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = BoxKind::Lam;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->loose = std::max(0, body.loose() - 1);
  n->depth = body.depth();
  n->a = std::move(body);
  return BoxTerm(std::move(n));
}

BoxTerm BoxTerm::app(BoxTerm fn, BoxTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = BoxKind::App;
  n->size = 1 + fn.size() + arg.size();
  n->loose = std::max(fn.loose(), arg.loose());
  n->depth = std::max(fn.depth(), arg.depth());
  n->a = std::move(fn);
  n->b = std::move(arg);
  return BoxTerm(std::move(n));
}

BoxTerm BoxTerm::box(BoxTerm body, std::vector<BoxTerm> pending) {
  auto n = std::make_shared<Node>();
  n->kind = BoxKind::Box;
  n->size = 1 + body.size();
  n->depth = body.depth() + 1;
  for (const BoxTerm& p : pending) {
    n->size += p.size();
    n->loose = std::max(n->loose, p.loose());
    n->depth = std::max(n->depth, p.depth());
  }
  n->a = std::move(body);
  n->pending = std::move(pending);
  return BoxTerm(std::move(n));
}

BoxKind BoxTerm::kind() const { return node_->kind; }
int BoxTerm::index() const { return node_->index; }
const std::string& BoxTerm::name() const { return node_->name; }
const BoxTerm& BoxTerm::body() const { return node_->a; }
const BoxTerm& BoxTerm::fn() const { return node_->a; }
const BoxTerm& BoxTerm::arg() const { return node_->b; }
const std::vector<BoxTerm>& BoxTerm::pending() const { return node_->pending; }
std::uint64_t BoxTerm::size() const { return node_->size; }
int BoxTerm::loose() const { return node_->loose; }
int BoxTerm::depth() const { return node_->depth; }

bool operator==(const BoxTerm& a, const BoxTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_null() || b.is_null()) return false;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case BoxKind::Var:
    case BoxKind::Local:
      return a.index() == b.index();
    case BoxKind::Free:
      return a.name() == b.name();
    case BoxKind::Lam:
      return a.body() == b.body();
    case BoxKind::App:
      return a.fn() == b.fn() && a.arg() == b.arg();
    case BoxKind::Box:
      return a.body() == b.body() && a.pending() == b.pending();
  }
  return false;
}

namespace {

// Every traversal below stays in the current box body: it enters pending
// lists but never the body of a nested box, which is closed apart from its
// own slots.

BoxTerm map_pending(const BoxTerm& t,
                    const std::function<BoxTerm(const BoxTerm&)>& f) {
  std::vector<BoxTerm> ps;
  ps.reserve(t.pending().size());
  for (const BoxTerm& p : t.pending()) ps.push_back(f(p));
  return BoxTerm::box(t.body(), std::move(ps));
}

BoxTerm close_name(const BoxTerm& t, const std::string& name, int depth) {
  switch (t.kind()) {
    case BoxKind::Free:
      return t.name() == name ? BoxTerm::var(depth) : t;
    case BoxKind::Var:
    case BoxKind::Local:
      return t;
    case BoxKind::Lam:
      return BoxTerm::lam(t.name(), close_name(t.body(), name, depth + 1));
    case BoxKind::App:
      return BoxTerm::app(close_name(t.fn(), name, depth),
                          close_name(t.arg(), name, depth));
    case BoxKind::Box:
      return map_pending(
          t, [&](const BoxTerm& p) { return close_name(p, name, depth); });
  }
  return t;
}

BoxTerm names_to_slots(const BoxTerm& t,
                       const std::map<std::string, int>& slots) {
  switch (t.kind()) {
    case BoxKind::Free: {
      auto it = slots.find(t.name());
      return it == slots.end() ? t : BoxTerm::local(it->second);
    }
    case BoxKind::Var:
    case BoxKind::Local:
      return t;
    case BoxKind::Lam:
      return BoxTerm::lam(t.name(), names_to_slots(t.body(), slots));
    case BoxKind::App:
      return BoxTerm::app(names_to_slots(t.fn(), slots),
                          names_to_slots(t.arg(), slots));
    case BoxKind::Box:
      return map_pending(
          t, [&](const BoxTerm& p) { return names_to_slots(p, slots); });
  }
  return t;
}

BoxTerm shift_box(const BoxTerm& t, int by, int cutoff) {
  if (t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case BoxKind::Var:
      return BoxTerm::var(t.index() + by);
    case BoxKind::Lam:
      return BoxTerm::lam(t.name(), shift_box(t.body(), by, cutoff + 1));
    case BoxKind::App:
      return BoxTerm::app(shift_box(t.fn(), by, cutoff),
                          shift_box(t.arg(), by, cutoff));
    case BoxKind::Box:
      return map_pending(
          t, [&](const BoxTerm& p) { return shift_box(p, by, cutoff); });
    default:
      return t;
  }
}

BoxTerm subst_var(const BoxTerm& t, int depth, const BoxTerm& value) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case BoxKind::Var:
      if (t.index() == depth) return shift_box(value, depth, 0);
      return BoxTerm::var(t.index() - 1);
    case BoxKind::Lam:
      return BoxTerm::lam(t.name(), subst_var(t.body(), depth + 1, value));
    case BoxKind::App:
      return BoxTerm::app(subst_var(t.fn(), depth, value),
                          subst_var(t.arg(), depth, value));
    case BoxKind::Box:
      return map_pending(
          t, [&](const BoxTerm& p) { return subst_var(p, depth, value); });
    default:
      return t;
  }
}

BoxTerm beta(const BoxTerm& lam, const BoxTerm& value) {
  return subst_var(lam.body(), 0, value);
}

// Replaces the slots of the enclosing box: slot i becomes map[i].
BoxTerm replace_slots(const BoxTerm& t, const std::vector<BoxTerm>& map) {
  switch (t.kind()) {
    case BoxKind::Local:
      return map[static_cast<std::size_t>(t.index())];
    case BoxKind::Var:
    case BoxKind::Free:
      return t;
    case BoxKind::Lam:
      return BoxTerm::lam(t.name(), replace_slots(t.body(), map));
    case BoxKind::App:
      return BoxTerm::app(replace_slots(t.fn(), map),
                          replace_slots(t.arg(), map));
    case BoxKind::Box:
      return map_pending(
          t, [&](const BoxTerm& p) { return replace_slots(p, map); });
  }
  return t;
}

BoxTerm renumber_slots(const BoxTerm& t, int by) {
  switch (t.kind()) {
    case BoxKind::Local:
      return BoxTerm::local(t.index() + by);
    case BoxKind::Var:
    case BoxKind::Free:
      return t;
    case BoxKind::Lam:
      return BoxTerm::lam(t.name(), renumber_slots(t.body(), by));
    case BoxKind::App:
      return BoxTerm::app(renumber_slots(t.fn(), by),
                          renumber_slots(t.arg(), by));
    case BoxKind::Box:
      return map_pending(
          t, [&](const BoxTerm& p) { return renumber_slots(p, by); });
  }
  return t;
}

BoxTerm from_derivation(const Derivation& d) {
  const ProofNode& n = d.script.node();
  switch (d.rule) {
    case Rule::Axiom:
      return BoxTerm::free(n.name);
    case Rule::Application:
      return BoxTerm::app(from_derivation(d.children[0]),
                          from_derivation(d.children[1]));
    case Rule::Abstraction:
      return BoxTerm::lam(n.name,
                          close_name(from_derivation(d.children[0]), n.name, 0));
    case Rule::Promotion: {
      std::vector<BoxTerm> pending;
      std::map<std::string, int> slots;
      for (std::size_t i = 0; i + 1 < d.children.size(); ++i) {
        pending.push_back(from_derivation(d.children[i]));
        slots[n.labels[i]] = static_cast<int>(i);
      }
      BoxTerm inner = from_derivation(d.children.back());
      return BoxTerm::box(names_to_slots(inner, slots), std::move(pending));
    }
    default:
      return from_derivation(d.children[0]);
  }
}

PureTerm erase_rec(const BoxTerm& t, const std::vector<PureTerm>& slots,
                   int lams) {
  switch (t.kind()) {
    case BoxKind::Var:
      return PureTerm::var(t.index());
    case BoxKind::Local:
      return shift(slots.at(static_cast<std::size_t>(t.index())), lams);
    case BoxKind::Free:
      return PureTerm::free(t.name());
    case BoxKind::Lam:
      return PureTerm::lam(t.name(), erase_rec(t.body(), slots, lams + 1));
    case BoxKind::App:
      return PureTerm::app(erase_rec(t.fn(), slots, lams),
                           erase_rec(t.arg(), slots, lams));
    case BoxKind::Box: {
      std::vector<PureTerm> inner;
      for (const BoxTerm& p : t.pending()) {
        inner.push_back(erase_rec(p, slots, lams));
      }
      return erase_rec(t.body(), inner, 0);
    }
  }
  return PureTerm();
}

void print_box(std::ostream& os, const BoxTerm& t,
               std::vector<std::string>& names, bool arg_position) {
  switch (t.kind()) {
    case BoxKind::Var: {
      auto i = static_cast<std::size_t>(t.index());
      if (i < names.size()) os << names[names.size() - 1 - i];
      else os << "^" << t.index();
      return;
    }
    case BoxKind::Local:
      os << "#" << t.index();
      return;
    case BoxKind::Free:
      os << t.name();
      return;
    case BoxKind::Lam: {
      if (arg_position) os << "(";
      std::string hint = t.name().empty() ? "x" : t.name();
      std::string name = hint;
      for (int k = 1; std::count(names.begin(), names.end(), name); ++k) {
        name = hint + std::to_string(k);
      }
      os << "fun " << name << ". ";
      names.push_back(name);
      print_box(os, t.body(), names, false);
      names.pop_back();
      if (arg_position) os << ")";
      return;
    }
    case BoxKind::App:
      if (arg_position) os << "(";
      if (t.fn().kind() == BoxKind::Lam) {
        print_box(os, t.fn(), names, true);
      } else {
        print_box(os, t.fn(), names, false);
      }
      os << " ";
      print_box(os, t.arg(), names, true);
      if (arg_position) os << ")";
      return;
    case BoxKind::Box: {
      os << "box[";
      for (std::size_t i = 0; i < t.pending().size(); ++i) {
        if (i) os << ", ";
        print_box(os, t.pending()[i], names, false);
      }
      os << "](";
      std::vector<std::string> inner;
      print_box(os, t.body(), inner, false);
      os << ")";
      return;
    }
  }
}

}  // namespace

BoxTerm to_box_term(const CheckedProof& proof) {
  return from_derivation(proof.root);
}

PureTerm erase_boxes(const BoxTerm& t) { return erase_rec(t, {}, 0); }

std::string to_string(const BoxTerm& t) {
  std::ostringstream os;
  std::vector<std::string> names;
  print_box(os, t, names, false);
  return os.str();
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

class NormalOrder {
 public:
  explicit NormalOrder(std::uint64_t budget) : budget_(budget) {}

  PureTerm run(const PureTerm& t) {
    PureTerm head = t;
    std::vector<PureTerm> args;  // innermost argument last
    for (;;) {
      while (head.kind() == PureKind::App) {
        args.push_back(head.arg());
        head = head.fn();
      }
      if (head.kind() != PureKind::Lam || args.empty()) break;
      if (steps_ >= budget_) {
        fail(ErrorCode::FuelExhausted,
             "normal-order reduction ran out of fuel after " +
                 std::to_string(steps_) + " steps");
      }
      ++steps_;
      head = instantiate(head, args.back());
      args.pop_back();
    }
    PureTerm out = head.kind() == PureKind::Lam
                       ? PureTerm::lam(head.name(), run(head.body()))
                       : head;
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
      out = PureTerm::app(out, run(*it));
    }
    return out;
  }

  std::uint64_t steps() const { return steps_; }

 private:
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
};

class Stratifier {
 public:
  explicit Stratifier(std::uint64_t budget) : budget_(budget) {}

  StratifiedResult run(const BoxTerm& input) {
    profile_.input_depth = input.depth();
    BoxTerm t = input;
    for (int d = 0; d <= input.depth(); ++d) {
      LevelCost level;
      level.depth = d;
      level.size_at_start = t.size();
      level.max_size = t.size();
      running_ = static_cast<std::int64_t>(t.size());
      profile_.levels.push_back(level);
      t = at_level(t, d, 0);
      if (!settled(t, d, 0)) profile_.stratified = false;
    }
    PureTerm erased = erase_boxes(t);
    std::uint64_t left = budget_ - profile_.total_steps;
    NormalOrder rest(left);
    PureTerm nf;
    try {
      nf = rest.run(erased);
    } catch (const Error&) {
      profile_.residual_steps = rest.steps();
      profile_.total_steps += rest.steps();
      throw FuelExhaustedError("residual reduction ran out of fuel", profile_);
    }
    profile_.residual_steps = rest.steps();
    profile_.total_steps += rest.steps();
    return {nf, profile_};
  }

 private:
  LevelCost& level() { return profile_.levels.back(); }

  void resize(std::int64_t delta) {
    running_ += delta;
    auto now = static_cast<std::uint64_t>(std::max<std::int64_t>(running_, 0));
    level().max_size = std::max(level().max_size, now);
  }

  // Descends to the nodes sitting at box depth `target`.
  BoxTerm at_level(const BoxTerm& t, int target, int depth) {
    if (depth == target) return normalize(t);
    if (depth + t.depth() < target) return t;
    switch (t.kind()) {
      case BoxKind::Lam:
        return BoxTerm::lam(t.name(), at_level(t.body(), target, depth));
      case BoxKind::App:
        return BoxTerm::app(at_level(t.fn(), target, depth),
                            at_level(t.arg(), target, depth));
      case BoxKind::Box: {
        std::vector<BoxTerm> ps;
        for (const BoxTerm& p : t.pending()) {
          ps.push_back(at_level(p, target, depth));
        }
        return BoxTerm::box(at_level(t.body(), target, depth + 1),
                            std::move(ps));
      }
      default:
        return t;
    }
  }

  // Normal order at the current depth; boxes are opaque apart from their
  // pending lists.
  BoxTerm normalize(const BoxTerm& t) {
    BoxTerm head = t;
    std::vector<BoxTerm> args;
    for (;;) {
      while (head.kind() == BoxKind::App) {
        args.push_back(head.arg());
        head = head.fn();
      }
      if (head.kind() != BoxKind::Lam || args.empty()) break;
      if (profile_.total_steps >= budget_) {
        throw FuelExhaustedError(
            "stratified reduction ran out of fuel at depth " +
                std::to_string(level().depth),
            profile_);
      }
      ++profile_.total_steps;
      ++level().steps;
      const BoxTerm& arg = args.back();
      BoxTerm next = beta(head, arg);
      resize(static_cast<std::int64_t>(next.size()) -
             static_cast<std::int64_t>(1 + head.size() + arg.size()));
      head = std::move(next);
      args.pop_back();
    }
    BoxTerm out;
    switch (head.kind()) {
      case BoxKind::Lam:
        out = BoxTerm::lam(head.name(), normalize(head.body()));
        break;
      case BoxKind::Box:
        out = normalize_box(head);
        break;
      default:
        out = head;
    }
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
      out = BoxTerm::app(out, normalize(*it));
    }
    return out;
  }

  // Normalizes the pending list, then merges every pending box into this
  // one: its body replaces the slot and its pending list is spliced in.
  BoxTerm normalize_box(const BoxTerm& b) {
    std::vector<BoxTerm> ps;
    bool any_box = false;
    for (const BoxTerm& p : b.pending()) {
      ps.push_back(normalize(p));
      any_box = any_box || ps.back().kind() == BoxKind::Box;
    }
    BoxTerm before = BoxTerm::box(b.body(), ps);
    if (!any_box) return before;
    std::vector<BoxTerm> merged;
    std::vector<BoxTerm> slot_map;
    for (const BoxTerm& p : ps) {
      if (p.kind() == BoxKind::Box) {
        int offset = static_cast<int>(merged.size());
        slot_map.push_back(renumber_slots(p.body(), offset));
        merged.insert(merged.end(), p.pending().begin(), p.pending().end());
        ++level().merges;
      } else {
        slot_map.push_back(BoxTerm::local(static_cast<int>(merged.size())));
        merged.push_back(p);
      }
    }
    BoxTerm after =
        BoxTerm::box(replace_slots(b.body(), slot_map), std::move(merged));
    resize(static_cast<std::int64_t>(after.size()) -
           static_cast<std::int64_t>(before.size()));
    return after;
  }

  // No redex and no unmerged box at depth <= target.
  static bool settled(const BoxTerm& t, int target, int depth) {
    if (depth > target) return true;
    switch (t.kind()) {
      case BoxKind::Lam:
        return settled(t.body(), target, depth);
      case BoxKind::App:
        if (t.fn().kind() == BoxKind::Lam) return false;
        return settled(t.fn(), target, depth) && settled(t.arg(), target, depth);
      case BoxKind::Box:
        for (const BoxTerm& p : t.pending()) {
          if (p.kind() == BoxKind::Box || !settled(p, target, depth)) {
            return false;
          }
        }
        return settled(t.body(), target, depth + 1);
      default:
        return true;
    }
  }

  std::uint64_t budget_;
  CostProfile profile_;
  std::int64_t running_ = 0;
};

}  // namespace

StratifiedResult stratified_normalize(const BoxTerm& t, std::uint64_t budget) {
  return Stratifier(budget).run(t);
}

PureTerm normal_order_normalize(const PureTerm& t, std::uint64_t budget,
                                std::uint64_t* steps) {
  NormalOrder n(budget);
  try {
    PureTerm out = n.run(t);
    if (steps) *steps = n.steps();
    return out;
  } catch (...) {
    if (steps) *steps = n.steps();
    throw;
  }
}

// ---------------------------------------------------------------------------
// Numerals

PureTerm church_encode(std::uint64_t n) {
  PureTerm body = PureTerm::var(0);
  for (std::uint64_t i = 0; i < n; ++i) {
    body = PureTerm::app(PureTerm::var(1), body);
  }
  return PureTerm::lam("f", PureTerm::lam("x", body));
}

std::uint64_t church_decode(const PureTerm& t) {
  if (t.kind() != PureKind::Lam || t.body().kind() != PureKind::Lam) {
    fail(ErrorCode::DecodeFailure, "not a numeral: " + to_string(t));
  }
  std::uint64_t n = 0;
  const PureTerm* cur = &t.body().body();
  while (cur->kind() == PureKind::App) {
    if (cur->fn().kind() != PureKind::Var || cur->fn().index() != 1) {
      fail(ErrorCode::DecodeFailure, "not a numeral: " + to_string(t));
    }
    ++n;
    cur = &cur->arg();
  }
  if (cur->kind() != PureKind::Var || cur->index() != 0) {
    fail(ErrorCode::DecodeFailure, "not a numeral: " + to_string(t));
  }
  return n;
}

BoxTerm box_numeral(std::uint64_t n, int bangs) {
  BoxTerm body = BoxTerm::var(0);
  for (std::uint64_t i = n; i-- > 0;) {
    body = BoxTerm::app(BoxTerm::local(static_cast<int>(i)), body);
  }
  std::vector<BoxTerm> pending(n, BoxTerm::var(0));
  BoxTerm t = BoxTerm::lam(
      "f", BoxTerm::box(BoxTerm::lam("x", body), std::move(pending)));
  for (int i = 0; i < bangs; ++i) t = BoxTerm::box(t, {});
  return t;
}

}  // namespace elx
