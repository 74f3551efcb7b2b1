/* Copyright 2026 The lpcode Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "lpcode/render.hpp"

#include <sstream>

namespace lpc {

namespace {

// Binding strength, loosest first. Quantifiers extend as far right as possible.
int precedence(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::ChAll:
    case K::ChExists:
    case K::BlindAll:
    case K::BlindExists:
      return 0;
    case K::Implies: return 1;
    case K::ParOr: return 2;
    case K::ParAnd: return 3;
    case K::ChoiceOr: return 4;
    case K::ChoiceAnd: return 5;
    case K::Neg: return 6;
    case K::Truth:
    case K::Falsity:
    case K::Atomic:
      return 7;
  }
  return 7;
}

const char* op_text(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::ParOr: return " | ";
    case K::ParAnd: return " & ";
    case K::ChoiceOr: return " #| ";
    case K::ChoiceAnd: return " #& ";
    case K::ChAll: return "!";
    case K::ChExists: return "?";
    case K::BlindAll: return "all ";
    case K::BlindExists: return "exi ";
    default: return "";
  }
}

void render_term(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Int:
      os << t.value();
      return;
    case Term::Kind::Var:
      os << t.name();
      return;
    case Term::Kind::Sum:
      render_term(os, t.lhs());
      os << '+';
      if (t.rhs().is_sum()) {
        os << '(';
        render_term(os, t.rhs());
        os << ')';
      } else {
        render_term(os, t.rhs());
      }
      return;
  }
}

void render_formula(std::ostream& os, const Formula& f, int min_prec) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens) os << '(';
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Truth:
      os << "tt";
      break;
    case K::Falsity:
      os << "ff";
      break;
    case K::Atomic:
      os << render(f.atom());
      break;
    case K::Neg:
      os << '~';
      render_formula(os, f.body(), 6);
      break;
    case K::Implies:
      render_formula(os, f.antecedent(), 2);
      os << " -> ";
      render_formula(os, f.consequent(), 1);
      break;
    case K::ParOr:
    case K::ParAnd:
    case K::ChoiceOr:
    case K::ChoiceAnd: {
      bool first = true;
      for (const auto& p : f.parts()) {
        if (!first) os << op_text(f.kind());
        first = false;
        render_formula(os, p, prec + 1);
      }
      break;
    }
    case K::ChAll:
    case K::ChExists:
    case K::BlindAll:
    case K::BlindExists: {
      os << op_text(f.kind()) << f.var() << ". ";
      // Compound bodies are parenthesised for readability; the parser
      // accepts either form.
      int body_prec = precedence(f.body().kind());
      render_formula(os, f.body(), body_prec == 0 || body_prec >= 6 ? 0 : 8);
      break;
    }
  }
  if (parens) os << ')';
}

std::string render_index(const IndexExpr& e) {
  if (e.is_literal()) return std::to_string(e.offset);
  std::string out = *e.var;
  if (e.offset > 0) out += "+" + std::to_string(e.offset);
  if (e.offset < 0) out += "-" + std::to_string(-e.offset);
  return out;
}

}  // namespace

std::string render(const Term& t) {
  std::ostringstream os;
  render_term(os, t);
  return os.str();
}

std::string render(const Atom& a) {
  std::ostringstream os;
  os << a.predicate;
  if (!a.args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ',';
      render_term(os, a.args[i]);
    }
    os << ')';
  }
  return os.str();
}

std::string render(const Formula& f) {
  std::ostringstream os;
  render_formula(os, f, 0);
  return os.str();
}

std::string render(const Location& l) {
  std::string out = "/" + l.name;
  if (l.index) out += "[" + std::to_string(*l.index) + "]";
  return out;
}

std::string render(const LocRef& l) {
  std::string out = "/" + l.name;
  if (l.index) out += "[" + render_index(*l.index) + "]";
  return out;
}

std::string render(const Dep& d) {
  switch (d.kind) {
    case Dep::Kind::Ind: return "IND";
    case Dep::Kind::Gind: return "GIND";
    case Dep::Kind::Loc: return render(d.loc);
  }
  return {};
}

std::string render(const std::vector<Dep>& deps) {
  std::string out = "{";
  for (std::size_t i = 0; i < deps.size(); ++i) {
    if (i) out += ", ";
    out += render(deps[i]);
  }
  return out + "}";
}

std::string render(const Assignment& a) {
  std::string out = render(a.target) + " = " + render(a.formula);
  if (!a.deps.empty()) out += " ^ " + render(a.deps);
  return out;
}

std::string render(const ForLoop& loop) {
  std::string out = render(loop.name) + " = for " + loop.index_var + " in " +
                    std::to_string(loop.lower) + "..";
  out += loop.upper ? std::to_string(*loop.upper) : std::string("inf");
  return out + ": " + render(loop.body);
}

std::string render(const Statement& s) {
  std::string out;
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += "; ";
    out += std::visit([](const auto& item) { return render(item); }, s.items[i]);
  }
  return out + ".";
}

std::string render(const Program& p) {
  std::string out;
  for (const auto& s : p.statements) out += render(s) + "\n";
  return out;
}

std::string render(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s) {
    if (!first) out += ", ";
    first = false;
    out += k + "=" + render(v);
  }
  return out + "}";
}

}  // namespace lpc
