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

#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpcode/formula.hpp"
#include "lpcode/syntax.hpp"

namespace lpc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::set<std::string> expected, std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::set<std::string> expected_;
  std::string found_;
};

enum class Tok {
  Ident, Int,
  Slash, LBracket, RBracket, LParen, RParen, LBrace, RBrace, Lt, Gt,
  Comma, Dot, DotDot, Semicolon, Colon, Eq, Caret,
  Bang, Question, Amp, Bar, HashAmp, HashBar, Arrow, Tilde, Plus, Minus,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Splits source text into tokens; `%` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text);

std::string describe(Tok kind);

// Recursive-descent parser over a token vector. Also used by the trace reader.
class Parser {
 public:
  explicit Parser(std::string_view text);

  Program program();
  Formula formula();
  Term term();
  Atom atom();
  LocRef locref();
  std::vector<Dep> deps();

  const Token& peek(std::size_t ahead = 0) const;
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_ident(std::string_view word) const;
  bool accept(Tok kind);
  Token expect(Tok kind);
  void expect_ident(std::string_view word);
  Token advance();
  [[noreturn]] void fail(std::set<std::string> expected) const;
  BigInt integer();
  std::int64_t small_integer();
  std::string identifier();

 private:
  Statement statement();
  Item item();
  IndexExpr index_expr();
  Formula implication();
  Formula nary_level(int level);
  Formula unary();
  Formula primary();
  Term term_primary();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Program parse_program(std::string_view text);
Formula parse_formula(std::string_view text);

bool is_reserved_word(std::string_view word);

}  // namespace lpc
