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

#include "elx/script.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "elx/error.hpp"
#include "elx/library.hpp"

namespace elx {

const Signature& ScriptFile::effective_signature() const {
  return signature ? *signature : standard_signature();
}

const Equations& ScriptFile::effective_equations() const {
  return equations ? *equations : standard_equations();
}

const ScriptProof* ScriptFile::find_proof(const std::string& name) const {
  for (const ScriptProof& p : proofs) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    std::size_t start = i;
    if (c == '@' || ident_char(c)) {
      std::size_t j = i + (c == '@' ? 1 : 0);
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j == i + 1 && c == '@') {
        fail(ErrorCode::SyntaxError, std::to_string(line) + ":" +
                                         std::to_string(column) +
                                         ": '@' must start a name");
      }
      t.text = std::string(src.substr(start, j - start));
      bool digits = std::all_of(t.text.begin(), t.text.end(), [](char ch) {
        return std::isdigit(static_cast<unsigned char>(ch));
      });
      t.kind = digits ? Tok::Int : Tok::Ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    static const char* kTwo[] = {"->", "<-", "-o", ":="};
    bool matched = false;
    for (const char* s : kTwo) {
      if (src.substr(i, 2) == s) {
        t.kind = Tok::Sym;
        t.text = s;
        advance(2);
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (std::string_view("()[]{},:;.!|$-").find(c) == std::string_view::npos) {
        fail(ErrorCode::SyntaxError, std::to_string(line) + ":" +
                                         std::to_string(column) +
                                         ": unexpected character '" +
                                         std::string(1, c) + "'");
      }
      t.kind = Tok::Sym;
      t.text = std::string(1, c);
      advance(1);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ScriptFile file() {
    ScriptFile f;
    while (!at_end()) {
      const Token& t = peek();
      if (is("signature")) {
        if (f.signature) error(t, "duplicate signature block");
        f.signature = signature();
      } else if (is("equations")) {
        if (f.equations) error(t, "duplicate equations block");
        f.equations = equations();
      } else if (is("formula")) {
        next();
        std::string name = ident();
        if (formulas_.count(name)) error(t, "formula " + name + " defined twice");
        expect(":=");
        Formula p = formula();
        expect(";");
        formulas_[name] = p;
        f.formulas.emplace_back(name, p);
      } else if (is("proof")) {
        next();
        std::string name = ident();
        if (proofs_.count(name)) error(t, "proof " + name + " defined twice");
        expect(":");
        Formula statement = formula();
        expect(":=");
        ProofScript p = proof();
        expect(";");
        proofs_[name] = p;
        f.proofs.push_back({name, statement, p});
      } else {
        error(t, "expected signature, equations, formula or proof, found '" +
                     t.text + "'");
      }
    }
    return f;
  }

  template <class F>
  auto whole(F&& parse) {
    auto out = parse();
    if (!at_end()) error(peek(), "unexpected '" + peek().text + "'");
    return out;
  }

  // ---- types

  Type type() {
    if (is("forall")) {
      next();
      std::string a = ident();
      expect(".");
      return forall_type(a, type());
    }
    Type from = type_atom();
    if (accept("->")) return arrow(from, type());
    return from;
  }

  Type type_atom() {
    if (accept("(")) {
      Type t = type();
      expect(")");
      return t;
    }
    const Token& t = peek();
    std::string name = ident();
    if (name == "nat") return nat_type();
    if (name == "unit") return unit_type();
    if (name == "Type") error(t, "'Type' is not a type");
    return tvar(name);
  }

  // ---- terms

  Term term() {
    if (is("fun")) {
      next();
      expect("(");
      std::string x = ident();
      expect(":");
      Type dom = type();
      expect(")");
      return lam(x, dom, term());
    }
    if (is("Fun")) {
      next();
      expect("(");
      std::string a = ident();
      expect(")");
      return tylam(a, term());
    }
    Term head = term_atom();
    for (;;) {
      if (accept("[")) {
        head = tyapp(head, type());
        expect("]");
      } else if (starts_term_atom()) {
        head = app(head, term_atom());
      } else if (is("fun") || is("Fun")) {
        head = app(head, term());
      } else {
        return head;
      }
    }
  }

  bool starts_term_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::Int) return true;
    if (t.kind == Tok::Ident) return t.text != "fun" && t.text != "Fun";
    return t.kind == Tok::Sym && t.text == "(";
  }

  Term term_atom() {
    if (accept("(")) {
      Term t = term();
      expect(")");
      return t;
    }
    return var(ident());
  }

  // ---- formulas

  Formula formula() {
    if (is("forall")) {
      next();
      std::string x = ident();
      expect(":");
      if (accept("Type")) {
        expect(".");
        return forall_type(x, formula());
      }
      Type ty = type();
      expect(".");
      return forall1(x, ty, formula());
    }
    if (is("forall2")) {
      next();
      std::string x = ident();
      expect(":");
      expect("[");
      std::vector<Type> kind;
      if (!is("]")) {
        kind.push_back(type());
        while (accept(",")) kind.push_back(type());
      }
      expect("]");
      expect(".");
      return forall2(x, kind, formula());
    }
    Formula lhs = unary();
    if (accept("-o")) return lolli(lhs, formula());
    return lhs;
  }

  Formula unary() {
    if (accept("!")) return bang(unary());
    return formula_atom();
  }

  Formula formula_atom() {
    if (accept("(")) {
      Formula p = formula();
      expect(")");
      return p;
    }
    if (accept("$")) {
      const Token& t = peek();
      std::string name = ident();
      auto it = formulas_.find(name);
      if (it == formulas_.end()) error(t, "unknown formula $" + name);
      return it->second;
    }
    const Token& t = peek();
    std::string name = ident();
    if (name == "N") {
      expect("(");
      Term a = term();
      expect(")");
      return nat_pred(a);
    }
    if (name == "Eq") {
      expect("[");
      Type ty = type();
      expect("]");
      expect("(");
      Term a = term();
      expect(",");
      Term b = term();
      expect(")");
      return equality(ty, a, b);
    }
    if (name == "Tensor") {
      expect("(");
      Formula p = formula();
      expect(",");
      Formula q = formula();
      expect(")");
      return tensor(p, q);
    }
    if (name == "forall" || name == "forall2" || name == "fun" ||
        name == "Fun") {
      error(t, "unexpected '" + name + "'");
    }
    std::vector<Term> args;
    if (accept("(")) {
      args.push_back(term());
      while (accept(",")) args.push_back(term());
      expect(")");
    }
    return atom(name, args);
  }

  // ---- proofs

  ProofScript proof() {
    const Token& open = peek();
    expect("(");
    const Token& kw = peek();
    std::string word = ident();
    if (word == "use") {
      const Token& t = peek();
      std::string name = ident();
      expect(")");
      auto it = proofs_.find(name);
      if (it == proofs_.end()) error(t, "unknown proof " + name);
      return it->second.with_origin(name);
    }
    std::optional<Rule> rule = rule_from_name(word);
    if (!rule) error(kw, "unknown rule '" + word + "'");
    ProofScript out;
    switch (*rule) {
      case Rule::Axiom: {
        std::string l = ident();
        Formula p = braced_formula();
        out = rules::axiom(l, p);
        break;
      }
      case Rule::Weakening: {
        std::string l = ident();
        Formula p = braced_formula();
        out = rules::weakening(l, p, proof());
        break;
      }
      case Rule::Application: {
        std::optional<LabelSplit> split;
        if (accept("[")) {
          LabelSplit s;
          while (!is("|")) s.left.push_back(ident());
          expect("|");
          while (!is("]")) s.right.push_back(ident());
          expect("]");
          split = s;
        }
        ProofScript f = proof();
        ProofScript a = proof();
        out = rules::application(f, a, split);
        break;
      }
      case Rule::Abstraction: {
        std::string l = ident();
        out = rules::abstraction(l, proof());
        break;
      }
      case Rule::Contraction: {
        std::string l = ident();
        out = rules::contraction(l, proof());
        break;
      }
      case Rule::Promotion: {
        expect("[");
        std::vector<std::string> labels;
        while (!is("]")) labels.push_back(ident());
        expect("]");
        std::vector<std::pair<std::string, ProofScript>> premises;
        for (const std::string& l : labels) premises.emplace_back(l, proof());
        out = rules::promotion(premises, proof());
        break;
      }
      case Rule::IntroType: {
        std::string a = ident();
        out = rules::intro_type(a, proof());
        break;
      }
      case Rule::Intro1: {
        std::string x = ident();
        expect("{");
        Type ty = type();
        expect("}");
        out = rules::intro1(x, ty, proof());
        break;
      }
      case Rule::Intro2: {
        std::string x = ident();
        expect("{");
        std::vector<Type> kind;
        if (!is("}")) {
          kind.push_back(type());
          while (accept(",")) kind.push_back(type());
        }
        expect("}");
        out = rules::intro2(x, kind, proof());
        break;
      }
      case Rule::ElimType: {
        expect("{");
        Type ty = type();
        expect("}");
        out = rules::elim_type(ty, proof());
        break;
      }
      case Rule::Elim1: {
        expect("{");
        Term t = term();
        expect("}");
        out = rules::elim1(t, proof());
        break;
      }
      case Rule::Elim2: {
        expect("{");
        std::vector<std::string> params;
        while (!is("|")) params.push_back(ident());
        expect("|");
        Formula q = formula();
        expect("}");
        out = rules::elim2(params, q, proof());
        break;
      }
      case Rule::Equality: {
        expect("{");
        std::string hole = ident();
        expect(":");
        Type ty = type();
        expect("|");
        Formula q = formula();
        expect("}");
        expect("{");
        Term t1 = term();
        expect("}");
        expect("{");
        Term t2 = term();
        expect("}");
        bool backward = direction();
        Trace tr = trace();
        out = rules::equality(hole, ty, q, t1, t2, backward, tr, proof());
        break;
      }
    }
    if (!accept(")")) {
      error(peek(), "expected ')' closing the " + word + " node opened at " +
                        where(open));
    }
    return out;
  }

  Trace trace() {
    const Token& open = peek();
    expect("(");
    const Token& kw = peek();
    std::string word = ident();
    Trace out;
    if (word == "refl") {
      out = Trace::refl();
    } else if (word == "beta") {
      bool back = direction();
      out = Trace::beta(position(), back);
    } else if (word == "axiom") {
      std::string name = ident();
      bool back = direction();
      Position pos = position();
      std::vector<std::pair<std::string, Term>> instance;
      if (accept("{")) {
        if (!is("}")) {
          do {
            std::string x = ident();
            expect(":=");
            instance.emplace_back(x, term());
          } while (accept(","));
        }
        expect("}");
      }
      out = Trace::axiom(name, back, pos, instance);
    } else if (word == "sym") {
      out = Trace::sym(trace());
    } else if (word == "trans") {
      std::vector<Trace> steps;
      while (is("(")) steps.push_back(trace());
      out = Trace::trans(steps);
    } else if (word == "cong") {
      Position pos = position();
      out = Trace::cong(pos, trace());
    } else if (word == "ext") {
      std::string x = ident();
      out = Trace::ext(x, trace());
    } else {
      error(kw, "unknown trace step '" + word + "'");
    }
    if (!accept(")")) {
      error(peek(), "expected ')' closing the " + word + " step opened at " +
                        where(open));
    }
    return out;
  }

 private:
  Signature signature() {
    next();
    expect("{");
    Signature sig;
    while (!accept("}")) {
      std::string name = ident();
      expect(":");
      Type ty = type();
      expect(";");
      sig.add_term_var(name, ty);
    }
    return sig;
  }

  Equations equations() {
    next();
    expect("{");
    Equations eqs;
    while (!accept("}")) {
      const Token& t = peek();
      std::string name = ident();
      expect(":");
      Formula p = formula();
      expect(";");
      try {
        eqs.push_back(equation_from_formula(name, p));
      } catch (const Error& e) {
        error(t, e.what());
      }
    }
    return eqs;
  }

  Formula braced_formula() {
    expect("{");
    Formula p = formula();
    expect("}");
    return p;
  }

  // '->' forward (false), '<-' backward (true).
  bool direction() {
    if (accept("->")) return false;
    if (accept("<-")) return true;
    error(peek(), "expected '->' or '<-'");
  }

  Position position() {
    expect("[");
    Position pos;
    while (peek().kind == Tok::Int) {
      pos.push_back(std::stoi(next().text));
    }
    expect("]");
    return pos;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(std::string_view text) const {
    return peek().kind != Tok::End && peek().text == text;
  }
  bool accept(std::string_view text) {
    if (!is(text)) return false;
    next();
    return true;
  }
  void expect(std::string_view text) {
    if (!accept(text)) {
      error(peek(), "expected '" + std::string(text) + "', found " +
                        describe(peek()));
    }
  }
  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident && t.kind != Tok::Int) {
      error(t, "expected a name, found " + describe(t));
    }
    return next().text;
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }
  static std::string where(const Token& t) {
    return std::to_string(t.line) + ":" + std::to_string(t.column);
  }
  [[noreturn]] static void error(const Token& t, const std::string& msg) {
    fail(ErrorCode::SyntaxError, where(t) + ": " + msg);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Formula> formulas_;
  std::map<std::string, ProofScript> proofs_;
};

// ---------------------------------------------------------------------------
// Printer

std::string braces(const std::string& s) { return "{" + s + "}"; }

std::string print_position(const Position& pos) {
  std::string out = "[";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(pos[i]);
  }
  return out + "]";
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::string types(const std::vector<Type>& ts) {
  std::vector<std::string> parts;
  for (const Type& t : ts) parts.push_back(to_string(t));
  return join(parts, ", ");
}

class ProofPrinter {
 public:
  explicit ProofPrinter(const std::vector<ScriptProof>& known)
      : known_(known) {}

  void print(std::ostream& os, const ProofScript& p, int indent) {
    const ProofNode& n = p.node();
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (indent > 0) {
      if (const std::string* name = shared(p)) {
        os << pad << "(use " << *name << ")";
        return;
      }
    }
    os << pad << "(" << rule_name(n.rule);
    switch (n.rule) {
      case Rule::Axiom:
        os << " " << n.name << " " << braces(to_string(n.formula)) << ")";
        return;
      case Rule::Weakening:
        os << " " << n.name << " " << braces(to_string(n.formula));
        break;
      case Rule::Application:
        if (n.split) {
          os << " [" << join(n.split->left, " ")
             << (n.split->left.empty() ? "| " : " | ")
             << join(n.split->right, " ") << "]";
        }
        break;
      case Rule::Abstraction:
      case Rule::Contraction:
      case Rule::IntroType:
        os << " " << n.name;
        break;
      case Rule::Promotion:
        os << " [" << join(n.labels, " ") << "]";
        break;
      case Rule::Intro1:
        os << " " << n.name << " " << braces(to_string(n.type));
        break;
      case Rule::Intro2:
        os << " " << n.name << " " << braces(types(n.kind));
        break;
      case Rule::ElimType:
        os << " " << braces(to_string(n.type));
        break;
      case Rule::Elim1:
        os << " " << braces(to_string(n.term));
        break;
      case Rule::Elim2:
        os << " {" << join(n.labels, " ") << (n.labels.empty() ? "| " : " | ")
           << to_string(n.formula) << "}";
        break;
      case Rule::Equality:
        os << " {" << n.name << " : " << to_string(n.type) << " | "
           << to_string(n.formula) << "} " << braces(to_string(n.lhs)) << " "
           << braces(to_string(n.rhs)) << (n.backward ? " <- " : " -> ")
           << print_trace(n.trace);
        break;
    }
    for (const ProofScript& c : n.children) {
      os << "\n";
      print(os, c, indent + 2);
    }
    os << ")";
  }

 private:
  // A known proof equal to p, preferring the one p was copied from.
  const std::string* shared(const ProofScript& p) {
    std::size_t n = size_of(p);
    const std::string* found = nullptr;
    for (const ScriptProof& k : known_) {
      if (size_of(k.proof) != n || !(k.proof == p)) continue;
      if (k.name == p->origin) return &k.name;
      if (!found) found = &k.name;
    }
    return found;
  }

  std::size_t size_of(const ProofScript& p) {
    auto it = sizes_.find(p.identity());
    if (it != sizes_.end()) return it->second;
    std::size_t n = 1;
    for (const ProofScript& c : p->children) n += size_of(c);
    sizes_[p.identity()] = n;
    return n;
  }

  const std::vector<ScriptProof>& known_;
  std::map<const void*, std::size_t> sizes_;
};

}  // namespace

ScriptFile parse_script(std::string_view text) { return Parser(text).file(); }

Type parse_type(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.type(); });
}

Term parse_term(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.term(); });
}

Formula parse_formula(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.formula(); });
}

ProofScript parse_proof(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.proof(); });
}

Trace parse_trace(std::string_view text) {
  Parser p(text);
  return p.whole([&] { return p.trace(); });
}

std::string print_trace(const Trace& t) {
  switch (t.kind) {
    case TraceKind::Refl:
      return "(refl)";
    case TraceKind::Beta:
      return std::string("(beta ") + (t.reversed ? "<- " : "-> ") +
             print_position(t.position) + ")";
    case TraceKind::Axiom: {
      std::string out = "(axiom " + t.equation + (t.reversed ? " <- " : " -> ") +
                        print_position(t.position);
      if (!t.instance.empty()) {
        std::vector<std::string> parts;
        for (const auto& [x, v] : t.instance) {
          parts.push_back(x + " := " + to_string(v));
        }
        out += " {" + join(parts, ", ") + "}";
      }
      return out + ")";
    }
    case TraceKind::Sym:
      return "(sym " + print_trace(t.steps.at(0)) + ")";
    case TraceKind::Trans: {
      std::string out = "(trans";
      for (const Trace& s : t.steps) out += " " + print_trace(s);
      return out + ")";
    }
    case TraceKind::Cong:
      return "(cong " + print_position(t.position) + " " +
             print_trace(t.steps.at(0)) + ")";
    case TraceKind::Ext:
      return "(ext " + t.var + " " + print_trace(t.steps.at(0)) + ")";
  }
  return "(refl)";
}

std::string print_proof(const ProofScript& proof,
                        const std::vector<ScriptProof>& known) {
  std::ostringstream os;
  ProofPrinter(known).print(os, proof, 0);
  return os.str();
}

std::string print_script(const ScriptFile& file) {
  std::ostringstream os;
  if (file.signature) {
    os << "signature {\n";
    for (const ContextEntry& e : file.signature->entries()) {
      if (e.kind != EntryKind::TermVar) {
        fail(ErrorCode::IllFormedPayload,
             "only term declarations can be printed in a signature");
      }
      os << "  " << e.name << " : " << to_string(e.type) << ";\n";
    }
    os << "}\n\n";
  }
  if (file.equations) {
    os << "equations {\n";
    for (const Equation& eq : *file.equations) {
      os << "  " << eq.name << " : " << to_string(equation_formula(eq))
         << ";\n";
    }
    os << "}\n\n";
  }
  for (const auto& [name, p] : file.formulas) {
    os << "formula " << name << " := " << to_string(p) << ";\n\n";
  }
  std::vector<ScriptProof> known;
  for (const ScriptProof& p : file.proofs) {
    os << "proof " << p.name << " : " << to_string(p.statement) << " :=\n"
       << print_proof(p.proof, known) << ";\n\n";
    known.push_back(p);
  }
  return os.str();
}

}  // namespace elx
