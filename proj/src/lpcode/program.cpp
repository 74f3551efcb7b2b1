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

#include "lpcode/program.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "lpcode/render.hpp"

namespace lpc {

UnknownLocation::UnknownLocation(const std::string& loc)
    : ModelError("unknown location " + loc) {}

namespace {

std::string cycle_text(const std::vector<Location>& cycle) {
  std::string out = "dependency cycle:";
  for (const auto& l : cycle) out += " " + render(l);
  return out;
}

bool covers(const ForLoop& loop, std::int64_t idx) {
  return idx >= loop.lower && (!loop.upper || idx <= *loop.upper);
}

}  // namespace

CycleError::CycleError(std::vector<Location> cycle)
    : ModelError(cycle_text(cycle)), cycle_(std::move(cycle)) {}

// ---------------------------------------------------------------------------
// Loops

Assignment instantiate(const Assignment& tmpl, const std::string& var, std::int64_t value) {
  auto eval = [&](const LocRef& ref) {
    LocRef out = ref;
    if (ref.index && !ref.index->is_literal()) {
      if (*ref.index->var != var)
        throw UnknownLocation(render(ref) + " (index variable is not '" + var + "')");
      std::int64_t idx = value + ref.index->offset;
      if (idx < 0)
        throw IndexOutOfRange(render(ref) + " at " + var + "=" + std::to_string(value) +
                              " gives negative index " + std::to_string(idx));
      out.index = IndexExpr{std::nullopt, idx};
    }
    return out;
  };
  Assignment out;
  out.pos = tmpl.pos;
  out.target = eval(tmpl.target);
  for (const auto& d : tmpl.deps)
    out.deps.push_back(d.is_tag() ? d : Dep::location(eval(d.loc)));
  out.formula = substitute(tmpl.formula, Substitution{{var, Term::integer(value)}});
  return out;
}

Assignment instantiate(const ForLoop& loop, std::int64_t value) {
  if (!covers(loop, value))
    throw IndexOutOfRange(render(loop.name) + " has no instance at " + std::to_string(value));
  return instantiate(loop.body, loop.index_var, value);
}

UnfoldResult unfold_loop(const ForLoop& loop, std::int64_t k) {
  if (!covers(loop, k))
    throw IndexOutOfRange("cannot unfold " + render(loop.name) + " to " + std::to_string(k));
  UnfoldResult out;
  for (std::int64_t i = loop.lower; i <= k; ++i) out.instances.push_back(instantiate(loop, i));
  if (!loop.upper || k < *loop.upper) {
    ForLoop rest = loop;
    rest.lower = k + 1;
    out.residual = std::move(rest);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ProgramModel

ProgramModel::ProgramModel(Program program) : program_(std::move(program)) {
  std::set<Location> dup;
  for (std::size_t s = 0; s < program_.statements.size(); ++s) {
    const auto& items = program_.statements[s].items;
    for (std::size_t i = 0; i < items.size(); ++i) {
      ItemPos pos{s, i};
      if (const auto* a = std::get_if<Assignment>(&items[i])) {
        assignments_.emplace_back(pos, a);
        if (!a->target.is_concrete()) continue;
        Location loc = a->target.concrete();
        if (!explicit_.emplace(loc, pos).second) dup.insert(loc);
      } else {
        const auto* loop = &std::get<ForLoop>(items[i]);
        loops_.emplace_back(pos, loop);
        if (loop->name.is_concrete()) {
          Location name = loop->name.concrete();
          if (!loop_names_.emplace(name, loop).second) dup.insert(name);
        }
        arrays_[loop->body.target.name].emplace_back(pos, loop);
      }
    }
  }
  for (const auto& [name, loop] : loop_names_)
    if (explicit_.count(name)) dup.insert(name);
  // Explicit declarations inside a loop's range, and overlapping loops.
  for (const auto& [loc, pos] : explicit_) {
    if (!loc.index) continue;
    auto it = arrays_.find(loc.name);
    if (it == arrays_.end()) continue;
    for (const auto& [lpos, loop] : it->second)
      if (covers(*loop, *loc.index)) dup.insert(loc);
  }
  for (const auto& [name, family] : arrays_) {
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j) {
        const ForLoop& a = *family[i].second;
        const ForLoop& b = *family[j].second;
        std::int64_t lo = std::max(a.lower, b.lower);
        if (covers(a, lo) && covers(b, lo)) dup.insert(Location{name, lo});
      }
  }
  duplicates_.assign(dup.begin(), dup.end());
}

const Item& ProgramModel::item_at(ItemPos pos) const {
  return program_.statements[pos.statement].items[pos.item];
}

std::optional<ProgramModel::Decl> ProgramModel::find(const Location& loc) const {
  if (auto it = explicit_.find(loc); it != explicit_.end())
    return Decl{it->second, &std::get<Assignment>(item_at(it->second)), nullptr};
  if (!loc.index) return std::nullopt;
  auto it = arrays_.find(loc.name);
  if (it == arrays_.end()) return std::nullopt;
  for (const auto& [pos, loop] : it->second)
    if (covers(*loop, *loc.index)) return Decl{pos, nullptr, loop};
  return std::nullopt;
}

const ForLoop* ProgramModel::loop_named(const Location& loc) const {
  auto it = loop_names_.find(loc);
  return it == loop_names_.end() ? nullptr : it->second;
}

const ForLoop* ProgramModel::loop_for_array(const std::string& array) const {
  auto it = arrays_.find(array);
  return it == arrays_.end() || it->second.empty() ? nullptr : it->second.front().second;
}

std::optional<ItemPos> ProgramModel::loop_pos(const ForLoop* loop) const {
  for (const auto& [pos, l] : loops_)
    if (l == loop) return pos;
  return std::nullopt;
}

Assignment ProgramModel::assignment_for(const Location& loc) const {
  auto decl = find(loc);
  if (!decl) throw UnknownLocation(render(loc));
  if (decl->assignment) return *decl->assignment;
  return instantiate(*decl->loop, *loc.index);
}

std::vector<Location> ProgramModel::sequence_predecessors(const Location& loc) const {
  auto decl = find(loc);
  if (!decl || decl->pos.item == 0) return {};
  const Item& pred = program_.statements[decl->pos.statement].items[decl->pos.item - 1];
  if (const auto* a = std::get_if<Assignment>(&pred)) {
    if (!a->target.is_concrete()) throw UnknownLocation(render(a->target));
    return {a->target.concrete()};
  }
  const auto& loop = std::get<ForLoop>(pred);
  if (!loop.upper)
    throw ModelError("cannot sequence after unbounded loop " + render(loop.name));
  std::vector<Location> out;
  for (std::int64_t i = loop.lower; i <= *loop.upper; ++i)
    out.push_back(Location{loop.body.target.name, i});
  return out;
}

std::vector<Location> ProgramModel::data_deps(const Assignment& a) const {
  std::vector<Location> out;
  for (const auto& d : a.deps) {
    if (d.is_tag()) continue;
    if (!d.loc.is_concrete()) throw UnknownLocation(render(d.loc));
    Location l = d.loc.concrete();
    if (loop_named(l)) continue;
    out.push_back(std::move(l));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ordering

std::vector<Location> dependency_order(const ProgramModel& model, const Location& target) {
  std::map<Location, std::vector<Location>> preds;
  std::map<Location, std::tuple<ItemPos, std::int64_t>> key;
  std::vector<Location> stack{target};
  while (!stack.empty()) {
    Location loc = stack.back();
    stack.pop_back();
    if (preds.count(loc)) continue;
    auto decl = model.find(loc);
    if (!decl) throw UnknownLocation(render(loc));
    Assignment a = model.assignment_for(loc);
    std::vector<Location> before = model.data_deps(a);
    for (auto& p : model.sequence_predecessors(loc)) before.push_back(std::move(p));
    key[loc] = {decl->pos, loc.index.value_or(-1)};
    for (const auto& p : before)
      if (!preds.count(p)) stack.push_back(p);
    preds[loc] = std::move(before);
  }

  std::map<Location, std::size_t> missing;
  std::map<Location, std::vector<Location>> succs;
  for (const auto& [loc, ps] : preds) {
    std::set<Location> unique(ps.begin(), ps.end());
    missing[loc] = unique.size();
    for (const auto& p : unique) succs[p].push_back(loc);
  }
  using Entry = std::tuple<ItemPos, std::int64_t, Location>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (const auto& [loc, n] : missing)
    if (n == 0) ready.emplace(std::get<0>(key[loc]), std::get<1>(key[loc]), loc);
  std::vector<Location> order;
  while (!ready.empty()) {
    Location loc = std::get<2>(ready.top());
    ready.pop();
    order.push_back(loc);
    for (const auto& s : succs[loc])
      if (--missing[s] == 0) ready.emplace(std::get<0>(key[s]), std::get<1>(key[s]), s);
  }
  if (order.size() == preds.size()) return order;

  // Walk back through unfinished predecessors until a node repeats.
  Location cur;
  for (const auto& [loc, n] : missing)
    if (n > 0) {
      cur = loc;
      break;
    }
  std::vector<Location> path;
  std::map<Location, std::size_t> seen;
  while (!seen.count(cur)) {
    seen[cur] = path.size();
    path.push_back(cur);
    for (const auto& p : preds[cur])
      if (missing[p] > 0) {
        cur = p;
        break;
      }
  }
  std::vector<Location> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen[cur]), path.end());
  std::reverse(cycle.begin(), cycle.end());
  cycle.push_back(cycle.front());
  throw CycleError(std::move(cycle));
}

// ---------------------------------------------------------------------------
// Induction

InductionScheme validate_induction(const Assignment& a, const ProgramModel& model) {
  InductionScheme scheme;
  std::size_t tags = 0;
  for (const auto& d : a.deps)
    if (d.is_tag()) {
      ++tags;
      scheme.kind = d.kind;
    }
  if (tags == 0) throw SchemeError("statement carries no IND/GIND tag");
  if (tags > 1) throw SchemeError("more than one induction tag");
  const char* tag_name = scheme.kind == Dep::Kind::Ind ? "IND" : "GIND";

  if (a.formula.kind() != Formula::Kind::ChAll)
    throw SchemeError(std::string(tag_name) + " formula must start with a choice universal (!x.)");
  scheme.var = a.formula.var();
  scheme.matrix = a.formula.body();
  if (scheme.matrix.kind() == Formula::Kind::ChAll)
    throw SchemeError("induction ranges over exactly one choice universal");

  const ForLoop* step = nullptr;
  std::vector<LocRef> base_refs;
  for (const auto& ref : a.dep_locations()) {
    if (!ref.is_concrete()) throw SchemeError("dependency " + render(ref) + " is not concrete");
    if (const ForLoop* loop = model.loop_named(ref.concrete())) {
      if (step) throw SchemeError("more than one step loop");
      step = loop;
      scheme.step = ref.concrete();
    } else {
      base_refs.push_back(ref);
    }
  }
  if (!step) throw SchemeError("missing step loop");
  scheme.array = step->body.target.name;

  std::set<std::int64_t> indices;
  for (const auto& ref : base_refs) {
    Location l = ref.concrete();
    if (l.name != scheme.array || !l.index)
      throw SchemeError("base " + render(l) + " is not an element of /" + scheme.array);
    if (!indices.insert(*l.index).second) throw SchemeError("base " + render(l) + " repeated");
  }
  if (indices.empty()) throw SchemeError("missing base case");
  scheme.order = scheme.kind == Dep::Kind::Ind ? 1 : indices.size();
  if (indices.size() != scheme.order)
    throw SchemeError("IND takes exactly one base, found " + std::to_string(indices.size()));
  for (std::size_t k = 1; k <= scheme.order; ++k) {
    Location base{scheme.array, static_cast<std::int64_t>(k)};
    if (!indices.count(static_cast<std::int64_t>(k)))
      throw SchemeError("missing base " + render(base));
    scheme.bases.push_back(base);
  }
  auto r = static_cast<std::int64_t>(scheme.order);
  if (step->lower != r + 1)
    throw SchemeError("step loop " + render(scheme.step) + " starts at " +
                      std::to_string(step->lower) + ", expected " + std::to_string(r + 1));
  if (step->upper) throw SchemeError("step loop " + render(scheme.step) + " must be unbounded");

  const LocRef& target = step->body.target;
  if (!target.index || target.index->var != step->index_var || target.index->offset != 0)
    throw SchemeError("step loop body must assign /" + scheme.array + "[" + step->index_var + "]");
  std::set<std::int64_t> offsets;
  for (const auto& ref : step->body.dep_locations()) {
    if (ref.name != scheme.array) continue;
    if (!ref.index || ref.index->var != step->index_var || ref.index->offset >= 0)
      throw SchemeError("step dependency " + render(ref) + " is not an earlier element");
    offsets.insert(ref.index->offset);
  }
  std::set<std::int64_t> expected;
  for (std::int64_t k = 1; k <= r; ++k) expected.insert(-k);
  if (offsets != expected)
    throw SchemeError("step dependencies on /" + scheme.array + " must be exactly the previous " +
                      std::to_string(r) + " elements");

  for (const auto& base : scheme.bases) {
    auto decl = model.find(base);
    if (!decl || !decl->assignment) throw SchemeError("missing base " + render(base));
    Formula want = substitute(scheme.matrix, Substitution{{scheme.var, Term::integer(*base.index)}});
    if (!alpha_equal(decl->assignment->formula, want))
      throw SchemeError("base " + render(base) + " does not state " + render(want));
  }
  Formula want_step =
      substitute(scheme.matrix, Substitution{{scheme.var, Term::var(step->index_var)}});
  if (!alpha_equal(step->body.formula, want_step))
    throw SchemeError("step body does not state " + render(want_step));
  return scheme;
}

}  // namespace lpc
