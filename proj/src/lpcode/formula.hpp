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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lpc {

using BigInt = boost::multiprecision::cpp_int;

// First-order term over the naturals: integer constants, variables and `+`.
// Terms are immutable; copies share structure.
class Term {
 public:
  enum class Kind { Int, Var, Sum };

  Term() : Term(integer(0)) {}

  static Term integer(BigInt value);
  static Term var(std::string name);
  static Term sum(Term lhs, Term rhs);

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_sum() const { return kind_ == Kind::Sum; }

  const BigInt& value() const { return value_; }
  const std::string& name() const { return name_; }
  const Term& lhs() const;
  const Term& rhs() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct SumNode;
  Term(Kind kind, BigInt value, std::string name,
       std::shared_ptr<const SumNode> sum)
      : kind_(kind),
        value_(std::move(value)),
        name_(std::move(name)),
        sum_(std::move(sum)) {}

  Kind kind_;
  BigInt value_;
  std::string name_;
  std::shared_ptr<const SumNode> sum_;
};

struct Term::SumNode {
  Term lhs;
  Term rhs;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.args < b.args;
  }
};

// Formula over the supported connectives. Immutable, shared structure.
class Formula {
 public:
  enum class Kind {
    Truth,        // tt
    Falsity,      // ff
    Atomic,
    Neg,          // ~
    ParAnd,       // &
    ParOr,        // |
    Implies,      // ->
    ChoiceAnd,    // #&
    ChoiceOr,     // #|
    ChAll,        // !x.
    ChExists,     // ?x.
    BlindAll,     // all x.
    BlindExists,  // exi x.
  };

  Formula() : Formula(truth()) {}

  static Formula truth();
  static Formula falsity();
  static Formula atomic(Atom atom);
  static Formula neg(Formula f);
  static Formula nary(Kind kind, std::vector<Formula> parts);
  static Formula implies(Formula antecedent, Formula consequent);
  static Formula quant(Kind kind, std::string var, Formula body);

  Kind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  const std::vector<Formula>& parts() const { return node_->parts; }
  // Neg/quantifier body.
  const Formula& body() const { return node_->parts.front(); }
  const Formula& antecedent() const { return node_->parts[0]; }
  const Formula& consequent() const { return node_->parts[1]; }
  const std::string& var() const { return node_->var; }

  bool is_quantifier() const;
  bool is_nary() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    Atom atom;
    std::vector<Formula> parts;
    std::string var;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

bool is_quantifier_kind(Formula::Kind k);
bool is_choice_kind(Formula::Kind k);

// Mapping from variable names to terms.
using Substitution = std::map<std::string, Term>;

// Value of a variable-free term; nullopt when the term still has variables.
std::optional<BigInt> eval_term(const Term& t);

Term substitute(const Term& t, const Substitution& s);
Atom substitute(const Atom& a, const Substitution& s);
// Capture-avoiding: binders whose name occurs free in the range are renamed.
Formula substitute(const Formula& f, const Substitution& s);

// Collapses every ground Sum to its integer value.
Term normalize(const Term& t);
Atom normalize(const Atom& a);

std::set<std::string> vars_of(const Term& t);
std::set<std::string> vars_of(const Atom& a);
std::set<std::string> free_vars(const Formula& f);
// Every variable name occurring in f, bound or free.
std::set<std::string> all_vars(const Formula& f);

bool is_ground(const Term& t);
bool is_ground(const Atom& a);

// Equality up to consistent renaming of bound variables.
bool alpha_equal(const Formula& a, const Formula& b);

// True when the formula contains a choice connective (⊓ ⊔ #& #|).
bool has_choice(const Formula& f);

// Renames binders so that no quantifier rebinds a name already bound by an
// enclosing quantifier (or listed in `in_scope`). Fresh names take the form
// `name_k` and avoid every name occurring in the formula.
Formula disambiguate_binders(const Formula& f,
                             const std::set<std::string>& in_scope = {});

// Predicate name -> arity for every atom occurring in f, reporting the first
// clash in `clash` (predicate, seen arity, new arity).
struct ArityClash {
  std::string predicate;
  std::size_t first_arity = 0;
  std::size_t second_arity = 0;
};
void collect_arities(const Formula& f, std::map<std::string, std::size_t>& table,
                     std::vector<ArityClash>& clashes);

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

}  // namespace lpc
