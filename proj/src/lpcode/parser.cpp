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

#include "lpcode/parser.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace lpc {

namespace {

std::string join_expected(const std::set<std::string>& expected) {
  std::string out;
  for (const auto& e : expected) {
    if (!out.empty()) out += ", ";
    out += e;
  }
  return out;
}

std::string format_error(int line, int column, const std::set<std::string>& expected,
                         const std::string& found) {
  std::ostringstream os;
  os << line << ":" << column << ": expected " << join_expected(expected) << ", found "
     << found;
  return os.str();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

ParseError::ParseError(int line, int column, std::set<std::string> expected, std::string found)
    : std::runtime_error(format_error(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Slash: return "'/'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Semicolon: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Eq: return "'='";
    case Tok::Caret: return "'^'";
    case Tok::Bang: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::HashAmp: return "'#&'";
    case Tok::HashBar: return "'#|'";
    case Tok::Arrow: return "'->'";
    case Tok::Tilde: return "'~'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool is_reserved_word(std::string_view word) {
  static const std::set<std::string_view> reserved{"tt", "ff",  "all", "exi", "for",
                                                   "in", "inf", "IND", "GIND"};
  return reserved.count(word) != 0;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) bump(1);
      tok.kind = Tok::Ident;
      tok.text = std::string(text.substr(start, i - start));
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) bump(1);
      tok.kind = Tok::Int;
      tok.text = std::string(text.substr(start, i - start));
      out.push_back(std::move(tok));
      continue;
    }
    char next = i + 1 < text.size() ? text[i + 1] : '\0';
    std::size_t width = 1;
    switch (c) {
      case '/': tok.kind = Tok::Slash; break;
      case '[': tok.kind = Tok::LBracket; break;
      case ']': tok.kind = Tok::RBracket; break;
      case '(': tok.kind = Tok::LParen; break;
      case ')': tok.kind = Tok::RParen; break;
      case '{': tok.kind = Tok::LBrace; break;
      case '}': tok.kind = Tok::RBrace; break;
      case '<': tok.kind = Tok::Lt; break;
      case '>': tok.kind = Tok::Gt; break;
      case ',': tok.kind = Tok::Comma; break;
      case ';': tok.kind = Tok::Semicolon; break;
      case ':': tok.kind = Tok::Colon; break;
      case '=': tok.kind = Tok::Eq; break;
      case '^': tok.kind = Tok::Caret; break;
      case '!': tok.kind = Tok::Bang; break;
      case '?': tok.kind = Tok::Question; break;
      case '&': tok.kind = Tok::Amp; break;
      case '|': tok.kind = Tok::Bar; break;
      case '~': tok.kind = Tok::Tilde; break;
      case '+': tok.kind = Tok::Plus; break;
      case '.':
        if (next == '.') {
          tok.kind = Tok::DotDot;
          width = 2;
        } else {
          tok.kind = Tok::Dot;
        }
        break;
      case '-':
        if (next == '>') {
          tok.kind = Tok::Arrow;
          width = 2;
        } else {
          tok.kind = Tok::Minus;
        }
        break;
      case '#':
        if (next == '&') {
          tok.kind = Tok::HashAmp;
        } else if (next == '|') {
          tok.kind = Tok::HashBar;
        } else {
          throw ParseError(line, col, {"'#&'", "'#|'"}, "'#'");
        }
        width = 2;
        break;
      default:
        throw ParseError(line, col, {"token"}, std::string("'") + c + "'");
    }
    bump(width);
    tok.text = std::string(text.substr(start, width));
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------

Parser::Parser(std::string_view text) : tokens_(tokenize(text)) {}

const Token& Parser::peek(std::size_t ahead) const {
  std::size_t idx = pos_ + ahead;
  return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

bool Parser::at_ident(std::string_view word) const {
  return peek().kind == Tok::Ident && peek().text == word;
}

bool Parser::accept(Tok kind) {
  if (!at(kind)) return false;
  ++pos_;
  return true;
}

Token Parser::advance() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

void Parser::fail(std::set<std::string> expected) const {
  const Token& t = peek();
  std::string found = t.kind == Tok::End ? describe(Tok::End) : "'" + t.text + "'";
  throw ParseError(t.line, t.column, std::move(expected), found);
}

Token Parser::expect(Tok kind) {
  if (!at(kind)) fail({describe(kind)});
  return advance();
}

void Parser::expect_ident(std::string_view word) {
  if (!at_ident(word)) fail({"'" + std::string(word) + "'"});
  advance();
}

BigInt Parser::integer() {
  Token t = expect(Tok::Int);
  return BigInt(t.text);
}

std::int64_t Parser::small_integer() {
  const Token& t = peek();
  BigInt v = integer();
  if (v > std::numeric_limits<std::int64_t>::max())
    throw ParseError(t.line, t.column, {"integer below 2^63"}, "'" + t.text + "'");
  return static_cast<std::int64_t>(v);
}

std::string Parser::identifier() {
  if (!at(Tok::Ident) || is_reserved_word(peek().text)) fail({describe(Tok::Ident)});
  return advance().text;
}

Program Parser::program() {
  Program p;
  while (!at(Tok::End)) {
    p.statements.push_back(statement());
    expect(Tok::Dot);
  }
  return p;
}

Statement Parser::statement() {
  Statement s;
  s.pos = {peek().line, peek().column};
  s.items.push_back(item());
  while (accept(Tok::Semicolon)) s.items.push_back(item());
  return s;
}

Item Parser::item() {
  SourcePos pos{peek().line, peek().column};
  LocRef target = locref();
  expect(Tok::Eq);
  if (at_ident("for")) {
    advance();
    ForLoop loop;
    loop.pos = pos;
    loop.name = std::move(target);
    loop.index_var = identifier();
    expect_ident("in");
    loop.lower = small_integer();
    expect(Tok::DotDot);
    if (at_ident("inf")) {
      advance();
    } else if (at(Tok::Int)) {
      loop.upper = small_integer();
    } else {
      fail({describe(Tok::Int), "'inf'"});
    }
    expect(Tok::Colon);
    loop.body.pos = {peek().line, peek().column};
    loop.body.target = locref();
    expect(Tok::Eq);
    loop.body.formula = disambiguate_binders(formula(), {loop.index_var});
    if (at(Tok::Caret)) loop.body.deps = deps();
    return loop;
  }
  Assignment a;
  a.pos = pos;
  a.target = std::move(target);
  a.formula = disambiguate_binders(formula());
  if (at(Tok::Caret)) a.deps = deps();
  return a;
}

std::vector<Dep> Parser::deps() {
  expect(Tok::Caret);
  expect(Tok::LBrace);
  std::vector<Dep> out;
  do {
    if (at_ident("IND")) {
      advance();
      out.push_back(Dep::tag(Dep::Kind::Ind));
    } else if (at_ident("GIND")) {
      advance();
      out.push_back(Dep::tag(Dep::Kind::Gind));
    } else if (at(Tok::Slash)) {
      out.push_back(Dep::location(locref()));
    } else {
      fail({"'IND'", "'GIND'", describe(Tok::Slash)});
    }
  } while (accept(Tok::Comma));
  expect(Tok::RBrace);
  return out;
}

LocRef Parser::locref() {
  LocRef l;
  l.pos = {peek().line, peek().column};
  expect(Tok::Slash);
  l.name = identifier();
  if (accept(Tok::LBracket)) {
    l.index = index_expr();
    expect(Tok::RBracket);
  }
  return l;
}

IndexExpr Parser::index_expr() {
  IndexExpr e;
  if (at(Tok::Int)) {
    e.offset = small_integer();
    return e;
  }
  if (!at(Tok::Ident)) fail({describe(Tok::Int), describe(Tok::Ident)});
  e.var = identifier();
  if (accept(Tok::Plus)) {
    e.offset = small_integer();
  } else if (accept(Tok::Minus)) {
    e.offset = -small_integer();
  }
  return e;
}

Formula Parser::formula() { return implication(); }

Formula Parser::implication() {
  Formula lhs = nary_level(0);
  if (accept(Tok::Arrow)) return Formula::implies(lhs, implication());
  return lhs;
}

// Levels, loosest first: | & #| #&
Formula Parser::nary_level(int level) {
  static constexpr Tok ops[] = {Tok::Bar, Tok::Amp, Tok::HashBar, Tok::HashAmp};
  static constexpr Formula::Kind kinds[] = {Formula::Kind::ParOr, Formula::Kind::ParAnd,
                                            Formula::Kind::ChoiceOr,
                                            Formula::Kind::ChoiceAnd};
  if (level == 4) return unary();
  std::vector<Formula> parts{nary_level(level + 1)};
  while (accept(ops[level])) parts.push_back(nary_level(level + 1));
  if (parts.size() == 1) return parts.front();
  return Formula::nary(kinds[level], std::move(parts));
}

Formula Parser::unary() {
  if (accept(Tok::Tilde)) return Formula::neg(unary());
  Formula::Kind qkind{};
  bool quant = true;
  if (at(Tok::Bang)) {
    qkind = Formula::Kind::ChAll;
  } else if (at(Tok::Question)) {
    qkind = Formula::Kind::ChExists;
  } else if (at_ident("all") && peek(1).kind == Tok::Ident) {
    qkind = Formula::Kind::BlindAll;
  } else if (at_ident("exi") && peek(1).kind == Tok::Ident) {
    qkind = Formula::Kind::BlindExists;
  } else {
    quant = false;
  }
  if (!quant) return primary();
  advance();
  std::vector<std::string> vars{identifier()};
  while (accept(Tok::Comma)) vars.push_back(identifier());
  expect(Tok::Dot);
  Formula body = formula();
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    body = Formula::quant(qkind, *it, body);
  return body;
}

Formula Parser::primary() {
  if (accept(Tok::LParen)) {
    Formula f = formula();
    expect(Tok::RParen);
    return f;
  }
  if (at_ident("tt")) {
    advance();
    return Formula::truth();
  }
  if (at_ident("ff")) {
    advance();
    return Formula::falsity();
  }
  if (!at(Tok::Ident) || is_reserved_word(peek().text))
    fail({"formula", describe(Tok::LParen), describe(Tok::Tilde), describe(Tok::Bang),
          describe(Tok::Question)});
  return Formula::atomic(atom());
}

Atom Parser::atom() {
  Atom a;
  a.predicate = identifier();
  if (accept(Tok::LParen)) {
    a.args.push_back(term());
    while (accept(Tok::Comma)) a.args.push_back(term());
    expect(Tok::RParen);
  }
  return a;
}

Term Parser::term() {
  Term t = term_primary();
  while (accept(Tok::Plus)) t = Term::sum(t, term_primary());
  return t;
}

Term Parser::term_primary() {
  if (at(Tok::Int)) return Term::integer(integer());
  if (accept(Tok::LParen)) {
    Term t = term();
    expect(Tok::RParen);
    return t;
  }
  if (at(Tok::Ident) && !is_reserved_word(peek().text)) return Term::var(advance().text);
  fail({describe(Tok::Int), describe(Tok::Ident), describe(Tok::LParen)});
}

Program parse_program(std::string_view text) {
  Parser p(text);
  return p.program();
}

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = disambiguate_binders(p.formula());
  p.expect(Tok::End);
  return f;
}

}  // namespace lpc
