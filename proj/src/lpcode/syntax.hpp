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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lpcode/formula.hpp"

namespace lpc {

struct SourcePos {
  int line = 0;
  int column = 0;
  // Positions never take part in structural equality.
  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

// A concrete agent location: `/x` or `/a[3]`.
struct Location {
  std::string name;
  std::optional<std::int64_t> index;

  friend bool operator==(const Location&, const Location&) = default;
  friend auto operator<=>(const Location&, const Location&) = default;
};

// Index inside a location reference: a literal, the loop variable, or the
// loop variable plus or minus a constant.
struct IndexExpr {
  std::optional<std::string> var;
  std::int64_t offset = 0;

  bool is_literal() const { return !var.has_value(); }
  friend bool operator==(const IndexExpr&, const IndexExpr&) = default;
};

struct LocRef {
  std::string name;
  std::optional<IndexExpr> index;
  SourcePos pos;

  bool is_concrete() const { return !index || index->is_literal(); }
  // Only valid when is_concrete().
  Location concrete() const;
  friend bool operator==(const LocRef&, const LocRef&) = default;
};

struct Dep {
  enum class Kind { Loc, Ind, Gind };
  Kind kind = Kind::Loc;
  LocRef loc;  // Kind::Loc only

  static Dep location(LocRef l) { return Dep{Kind::Loc, std::move(l)}; }
  static Dep tag(Kind k) { return Dep{k, {}}; }
  bool is_tag() const { return kind != Kind::Loc; }
  friend bool operator==(const Dep&, const Dep&) = default;
};

struct Assignment {
  LocRef target;
  Formula formula;
  std::vector<Dep> deps;
  SourcePos pos;

  // IND or GIND when the deps carry one.
  std::optional<Dep::Kind> induction_tag() const;
  std::vector<LocRef> dep_locations() const;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// `/name = for i in lower..upper: /arr[i] = F(i) ^ {...}`
struct ForLoop {
  LocRef name;
  std::string index_var;
  std::int64_t lower = 0;
  std::optional<std::int64_t> upper;  // nullopt = unbounded
  Assignment body;
  SourcePos pos;

  friend bool operator==(const ForLoop&, const ForLoop&) = default;
};

using Item = std::variant<Assignment, ForLoop>;

// Items joined by `;`: each must execute before the next.
struct Statement {
  std::vector<Item> items;
  SourcePos pos;
  friend bool operator==(const Statement&, const Statement&) = default;
};

struct Program {
  std::vector<Statement> statements;
  friend bool operator==(const Program&, const Program&) = default;
};

}  // namespace lpc
