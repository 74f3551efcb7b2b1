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

#include "lpcode/formula.hpp"

#include <cassert>
#include <utility>

namespace lpc {

// ---------------------------------------------------------------------------
// Term

Term Term::integer(BigInt value) {
  return Term(Kind::Int, std::move(value), {}, nullptr);
}

Term Term::var(std::string name) {
  assert(!name.empty());
  return Term(Kind::Var, 0, std::move(name), nullptr);
}

Term Term::sum(Term lhs, Term rhs) {
  return Term(Kind::Sum, 0, {},
              std::make_shared<const SumNode>(SumNode{std::move(lhs), std::move(rhs)}));
}

const Term& Term::lhs() const {
  assert(is_sum());
  return sum_->lhs;
}

const Term& Term::rhs() const {
  assert(is_sum());
  return sum_->rhs;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Term::Kind::Int:
      return a.value_ == b.value_;
    case Term::Kind::Var:
      return a.name_ == b.name_;
    case Term::Kind::Sum:
      return a.sum_ == b.sum_ || (a.lhs() == b.lhs() && a.rhs() == b.rhs());
  }
  return false;
}

bool operator<(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  switch (a.kind_) {
    case Term::Kind::Int:
      return a.value_ < b.value_;
    case Term::Kind::Var:
      return a.name_ < b.name_;
    case Term::Kind::Sum:
      if (!(a.lhs() == b.lhs())) return a.lhs() < b.lhs();
      return a.rhs() < b.rhs();
  }
  return false;
}

std::optional<BigInt> eval_term(const Term& t) {
  // Explicit stack: long left-leaning sums must not exhaust the call stack.
  BigInt total = 0;
  std::vector<const Term*> pending{&t};
  while (!pending.empty()) {
    const Term* cur = pending.back();
    pending.pop_back();
    switch (cur->kind()) {
      case Term::Kind::Int:
        total += cur->value();
        break;
      case Term::Kind::Var:
        return std::nullopt;
      case Term::Kind::Sum:
        pending.push_back(&cur->rhs());
        pending.push_back(&cur->lhs());
        break;
    }
  }
  return total;
}

Term substitute(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Int:
      return t;
    case Term::Kind::Var: {
      auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Sum:
      return Term::sum(substitute(t.lhs(), s), substitute(t.rhs(), s));
  }
  return t;
}

Atom substitute(const Atom& a, const Substitution& s) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& arg : a.args) out.args.push_back(substitute(arg, s));
  return out;
}

Term normalize(const Term& t) {
  if (!t.is_sum()) return t;
  if (auto v = eval_term(t)) return Term::integer(*v);
  return Term::sum(normalize(t.lhs()), normalize(t.rhs()));
}

Atom normalize(const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& arg : a.args) out.args.push_back(normalize(arg));
  return out;
}

static void collect_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Int:
      break;
    case Term::Kind::Var:
      out.insert(t.name());
      break;
    case Term::Kind::Sum:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
      break;
  }
}

std::set<std::string> vars_of(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> vars_of(const Atom& a) {
  std::set<std::string> out;
  for (const auto& arg : a.args) collect_vars(arg, out);
  return out;
}

bool is_ground(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Int:
      return true;
    case Term::Kind::Var:
      return false;
    case Term::Kind::Sum:
      return is_ground(t.lhs()) && is_ground(t.rhs());
  }
  return false;
}

bool is_ground(const Atom& a) {
  for (const auto& arg : a.args)
    if (!is_ground(arg)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Formula

bool is_quantifier_kind(Formula::Kind k) {
  using K = Formula::Kind;
  return k == K::ChAll || k == K::ChExists || k == K::BlindAll || k == K::BlindExists;
}

bool is_choice_kind(Formula::Kind k) {
  using K = Formula::Kind;
  return k == K::ChAll || k == K::ChExists || k == K::ChoiceAnd || k == K::ChoiceOr;
}

Formula Formula::truth() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::Truth, {}, {}, {}}));
  return t;
}

Formula Formula::falsity() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::Falsity, {}, {}, {}}));
  return f;
}

Formula Formula::atomic(Atom atom) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atomic, std::move(atom), {}, {}}));
}

Formula Formula::neg(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Neg, {}, {std::move(f)}, {}}));
}

Formula Formula::nary(Kind kind, std::vector<Formula> parts) {
  assert(kind == Kind::ParAnd || kind == Kind::ParOr || kind == Kind::ChoiceAnd ||
         kind == Kind::ChoiceOr);
  return Formula(std::make_shared<const Node>(Node{kind, {}, std::move(parts), {}}));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Implies, {}, {std::move(antecedent), std::move(consequent)}, {}}));
}

Formula Formula::quant(Kind kind, std::string var, Formula body) {
  assert(is_quantifier_kind(kind));
  return Formula(
      std::make_shared<const Node>(Node{kind, {}, {std::move(body)}, std::move(var)}));
}

bool Formula::is_quantifier() const { return is_quantifier_kind(kind()); }

bool Formula::is_nary() const {
  return kind() == Kind::ParAnd || kind() == Kind::ParOr || kind() == Kind::ChoiceAnd ||
         kind() == Kind::ChoiceOr;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->var == b.node_->var &&
         a.node_->atom == b.node_->atom && a.node_->parts == b.node_->parts;
}

static void collect_free(const Formula& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return;
    case Formula::Kind::Atomic:
      for (const auto& v : vars_of(f.atom()))
        if (!bound.count(v)) out.insert(v);
      return;
    default:
      break;
  }
  if (f.is_quantifier()) {
    bool fresh = bound.insert(f.var()).second;
    collect_free(f.body(), bound, out);
    if (fresh) bound.erase(f.var());
    return;
  }
  for (const auto& p : f.parts()) collect_free(p, bound, out);
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

static void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Formula::Kind::Atomic) {
    for (const auto& arg : f.atom().args) collect_vars(arg, out);
    return;
  }
  if (f.is_quantifier()) out.insert(f.var());
  for (const auto& p : f.parts()) collect_all(p, out);
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return f;
    case Formula::Kind::Atomic:
      return Formula::atomic(substitute(f.atom(), s));
    case Formula::Kind::Neg:
      return Formula::neg(substitute(f.body(), s));
    case Formula::Kind::Implies:
      return Formula::implies(substitute(f.antecedent(), s), substitute(f.consequent(), s));
    default:
      break;
  }
  if (f.is_nary()) {
    std::vector<Formula> parts;
    parts.reserve(f.parts().size());
    for (const auto& p : f.parts()) parts.push_back(substitute(p, s));
    return Formula::nary(f.kind(), std::move(parts));
  }

  // Quantifier: drop the bound name, rename the binder if it would capture.
  Substitution inner = s;
  inner.erase(f.var());
  if (inner.empty()) return f;
  std::set<std::string> range_vars;
  for (const auto& v : free_vars(f.body())) {
    auto it = inner.find(v);
    if (it != inner.end()) {
      auto vs = vars_of(it->second);
      range_vars.insert(vs.begin(), vs.end());
    }
  }
  std::string binder = f.var();
  Formula body = f.body();
  if (range_vars.count(binder)) {
    std::set<std::string> avoid = all_vars(body);
    avoid.insert(range_vars.begin(), range_vars.end());
    for (const auto& [k, v] : inner) {
      avoid.insert(k);
      auto vs = vars_of(v);
      avoid.insert(vs.begin(), vs.end());
    }
    std::string renamed = fresh_name(binder, avoid);
    body = substitute(body, Substitution{{binder, Term::var(renamed)}});
    binder = renamed;
  }
  return Formula::quant(f.kind(), binder, substitute(body, inner));
}

static bool alpha_terms(const Term& a, const Term& b,
                        const std::map<std::string, std::size_t>& la,
                        const std::map<std::string, std::size_t>& lb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Int:
      return a.value() == b.value();
    case Term::Kind::Var: {
      auto ia = la.find(a.name());
      auto ib = lb.find(b.name());
      if (ia == la.end() || ib == lb.end())
        return ia == la.end() && ib == lb.end() && a.name() == b.name();
      return ia->second == ib->second;
    }
    case Term::Kind::Sum:
      return alpha_terms(a.lhs(), b.lhs(), la, lb) && alpha_terms(a.rhs(), b.rhs(), la, lb);
  }
  return false;
}

static bool alpha_rec(const Formula& a, const Formula& b,
                      std::map<std::string, std::size_t>& la,
                      std::map<std::string, std::size_t>& lb, std::size_t depth) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Formula::Kind::Atomic) {
    if (a.atom().predicate != b.atom().predicate ||
        a.atom().args.size() != b.atom().args.size())
      return false;
    for (std::size_t i = 0; i < a.atom().args.size(); ++i)
      if (!alpha_terms(a.atom().args[i], b.atom().args[i], la, lb)) return false;
    return true;
  }
  if (a.is_quantifier()) {
    auto sa = la.find(a.var());
    auto sb = lb.find(b.var());
    std::optional<std::size_t> old_a, old_b;
    if (sa != la.end()) old_a = sa->second;
    if (sb != lb.end()) old_b = sb->second;
    la[a.var()] = depth;
    lb[b.var()] = depth;
    bool ok = alpha_rec(a.body(), b.body(), la, lb, depth + 1);
    if (old_a) la[a.var()] = *old_a; else la.erase(a.var());
    if (old_b) lb[b.var()] = *old_b; else lb.erase(b.var());
    return ok;
  }
  if (a.parts().size() != b.parts().size()) return false;
  for (std::size_t i = 0; i < a.parts().size(); ++i)
    if (!alpha_rec(a.parts()[i], b.parts()[i], la, lb, depth)) return false;
  return true;
}

bool alpha_equal(const Formula& a, const Formula& b) {
  std::map<std::string, std::size_t> la, lb;
  return alpha_rec(a, b, la, lb, 0);
}

bool has_choice(const Formula& f) {
  if (is_choice_kind(f.kind())) return true;
  for (const auto& p : f.parts())
    if (has_choice(p)) return true;
  return false;
}

static Formula disambiguate_rec(const Formula& f, std::set<std::string>& scope,
                                std::set<std::string>& avoid) {
  if (f.kind() == Formula::Kind::Atomic || f.kind() == Formula::Kind::Truth ||
      f.kind() == Formula::Kind::Falsity)
    return f;
  if (f.is_quantifier()) {
    std::string binder = f.var();
    Formula body = f.body();
    if (scope.count(binder)) {
      std::string renamed = fresh_name(binder, avoid);
      avoid.insert(renamed);
      body = substitute(body, Substitution{{binder, Term::var(renamed)}});
      binder = renamed;
    }
    scope.insert(binder);
    Formula out = Formula::quant(f.kind(), binder, disambiguate_rec(body, scope, avoid));
    scope.erase(binder);
    return out;
  }
  std::vector<Formula> parts;
  for (const auto& p : f.parts()) parts.push_back(disambiguate_rec(p, scope, avoid));
  switch (f.kind()) {
    case Formula::Kind::Neg:
      return Formula::neg(parts[0]);
    case Formula::Kind::Implies:
      return Formula::implies(parts[0], parts[1]);
    default:
      return Formula::nary(f.kind(), std::move(parts));
  }
}

Formula disambiguate_binders(const Formula& f, const std::set<std::string>& in_scope) {
  std::set<std::string> scope = in_scope;
  std::set<std::string> avoid = all_vars(f);
  avoid.insert(in_scope.begin(), in_scope.end());
  return disambiguate_rec(f, scope, avoid);
}

void collect_arities(const Formula& f, std::map<std::string, std::size_t>& table,
                     std::vector<ArityClash>& clashes) {
  if (f.kind() == Formula::Kind::Atomic) {
    auto [it, inserted] = table.emplace(f.atom().predicate, f.atom().args.size());
    if (!inserted && it->second != f.atom().args.size())
      clashes.push_back({f.atom().predicate, it->second, f.atom().args.size()});
    return;
  }
  for (const auto& p : f.parts()) collect_arities(p, table, clashes);
}

}  // namespace lpc
