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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpcode/syntax.hpp"

namespace lpc {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownLocation : public ModelError {
 public:
  explicit UnknownLocation(const std::string& loc);
};

class CycleError : public ModelError {
 public:
  explicit CycleError(std::vector<Location> cycle);
  const std::vector<Location>& cycle() const { return cycle_; }

 private:
  std::vector<Location> cycle_;
};

class IndexOutOfRange : public ModelError {
 public:
  using ModelError::ModelError;
};

class SchemeError : public ModelError {
 public:
  using ModelError::ModelError;
};

// Position of an item in the program: used for deterministic ordering.
struct ItemPos {
  std::size_t statement = 0;
  std::size_t item = 0;
  friend auto operator<=>(const ItemPos&, const ItemPos&) = default;
};

struct UnfoldResult {
  std::vector<Assignment> instances;
  std::optional<ForLoop> residual;  // nullopt: loop exhausted
};

// Body instances for i = loop.lower..k in order, plus the loop restarted at k+1.
UnfoldResult unfold_loop(const ForLoop& loop, std::int64_t k);

// Evaluates index expressions over `var` at `value` and substitutes the
// formula. Throws IndexOutOfRange when an index would be negative.
Assignment instantiate(const Assignment& tmpl, const std::string& var, std::int64_t value);
Assignment instantiate(const ForLoop& loop, std::int64_t value);

struct InductionScheme {
  Dep::Kind kind = Dep::Kind::Ind;
  std::size_t order = 1;
  std::vector<Location> bases;  // /arr[1] .. /arr[order]
  Location step;                // name of the step loop
  std::string array;
  std::string var;              // the leading ⊓ variable
  Formula matrix;               // body of the leading ⊓
};

// Indexed view of a program: which item declares each location, loop
// families, sequence edges.
class ProgramModel {
 public:
  explicit ProgramModel(Program program);

  struct Decl {
    ItemPos pos;
    const Assignment* assignment = nullptr;  // explicit declaration
    const ForLoop* loop = nullptr;           // loop instance
  };

  const Program& program() const { return program_; }

  // Explicit declaration or covering loop instance.
  std::optional<Decl> find(const Location& loc) const;
  // Loop bound to a name such as /istep.
  const ForLoop* loop_named(const Location& loc) const;
  // Loop whose body populates `array`.
  const ForLoop* loop_for_array(const std::string& array) const;
  std::optional<ItemPos> loop_pos(const ForLoop* loop) const;

  // The assignment executed for `loc`, instantiated for loop instances.
  Assignment assignment_for(const Location& loc) const;

  // Locations that must execute first because of `;` sequencing.
  std::vector<Location> sequence_predecessors(const Location& loc) const;

  // Locations an assignment reads from (deps that are not tags or loop names).
  std::vector<Location> data_deps(const Assignment& a) const;

  // Every location declared twice (explicitly, or by overlapping loops).
  const std::vector<Location>& duplicates() const { return duplicates_; }

  // All explicit declarations in program order.
  const std::vector<std::pair<ItemPos, const Assignment*>>& assignments() const {
    return assignments_;
  }
  const std::vector<std::pair<ItemPos, const ForLoop*>>& loops() const { return loops_; }

 private:
  const Item& item_at(ItemPos pos) const;

  Program program_;
  std::map<Location, ItemPos> explicit_;
  std::map<std::string, std::vector<std::pair<ItemPos, const ForLoop*>>> arrays_;
  std::map<Location, const ForLoop*> loop_names_;
  std::vector<Location> duplicates_;
  std::vector<std::pair<ItemPos, const Assignment*>> assignments_;
  std::vector<std::pair<ItemPos, const ForLoop*>> loops_;
};

// Topological order of everything `target` transitively needs, ending with
// `target`. Ties break by program order, then index.
std::vector<Location> dependency_order(const ProgramModel& model, const Location& target);

InductionScheme validate_induction(const Assignment& a, const ProgramModel& model);

}  // namespace lpc
