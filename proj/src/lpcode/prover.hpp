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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpcode/formula.hpp"

namespace lpc {

// Raised for formulas outside the fragment the prover and executor handle.
class UnsupportedFormula : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KbEntry {
  std::string source;  // rendered agent key, e.g. "/a[3]" or "/fib<4>"
  Formula formula;
};

// Formulas bound at the dependency locations, in dependency order.
struct KnowledgeBase {
  std::vector<KbEntry> entries;
};

// One Horn clause extracted from a knowledge-base entry. Facts have no
// variables and an empty body.
struct Clause {
  std::string source;
  std::vector<std::string> vars;  // universally bound names, in binder order
  std::vector<Atom> body;
  Atom head;

  bool is_fact() const { return body.empty(); }
};

// Accepts ground atoms, closed range-restricted Horn rules
// `all x... . (A1 & ... & An) -> B`, `tt`, and ground `&`-conjunctions of
// those. Throws UnsupportedFormula otherwise.
std::vector<Clause> clauses_of(const Formula& f, const std::string& source);
std::vector<Clause> compile(const KnowledgeBase& kb);

// A conjunction of atoms with the names bound by a leading ?-prefix.
struct ConjGoal {
  std::vector<Atom> atoms;
  std::vector<std::string> existentials;
};

// Lemma candidates: the lowest derivable disjunct is chosen.
struct ChoicePick {
  std::vector<ConjGoal> candidates;
};

struct Goal {
  bool is_pick = false;
  ConjGoal conj;     // when !is_pick
  ChoicePick pick;   // when is_pick
};

// Reads a goal shape: `?x... . A1 & ... & An` (or `tt`), optionally under one
// `#|` whose disjuncts each have that shape. Throws UnsupportedFormula.
ConjGoal conj_goal_of(const Formula& f);
Goal goal_of(const Formula& f);

// Equalities between terms that are not yet ground enough to decide.
struct ConstraintStore {
  std::vector<std::pair<Term, Term>> pending;
  bool empty() const { return pending.empty(); }
};

struct Derivation {
  enum class Kind { Fact, Rule, Pick, Conj, Axiom };

  Kind kind = Kind::Fact;
  std::string source;           // Fact, Rule, Axiom
  Atom conclusion;              // Fact, Rule
  Substitution subst;           // Rule: rule variable -> value
  std::vector<Derivation> premises;  // Rule premises, Conj parts, Pick child
  std::size_t index = 0;        // Pick

  static Derivation fact(std::string source, Atom atom);
  static Derivation axiom(std::string source);
  static Derivation pick(std::size_t index, Derivation sub);
  static Derivation conj(std::vector<Derivation> parts);

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

struct SearchLimits {
  std::size_t max_depth = 64;
  std::size_t max_steps = 100000;
};

struct UnifyResult {
  Substitution subst;
  ConstraintStore constraints;
};

// Unifies a goal atom against a clause head, extending `s` and `c`.
// A head argument `v + k` against a ground n binds v = n - k (natural numbers
// only); other non-ground sums are deferred as pending constraints.
std::optional<UnifyResult> unify(const Atom& goal, const Atom& head, const Substitution& s,
                                 const ConstraintStore& c);

enum class ProofStatus { Proved, NotDerivable, BoundExhausted };

const char* to_string(ProofStatus s);

struct DeriveResult {
  ProofStatus status = ProofStatus::NotDerivable;
  Substitution witnesses;  // existential name -> integer term
  Derivation derivation;
  std::size_t steps = 0;
  std::size_t depth = 0;   // depth bound at which the proof was found
};

// Depth-first search over clauses in KB order with iterative deepening; the
// first proof found wins.
DeriveResult derive(const ConjGoal& goal, const KnowledgeBase& kb, const SearchLimits& lim);

struct SelectResult {
  ProofStatus status = ProofStatus::NotDerivable;
  std::size_t index = 0;
  Substitution witnesses;
  Derivation derivation;  // Pick node
  std::size_t steps = 0;
};

SelectResult select_lemma(const ChoicePick& candidates, const KnowledgeBase& kb,
                          const SearchLimits& lim);

// Instantiates a goal with its witnesses: the evolved formula.
Formula instantiate_goal(const ConjGoal& goal, const Substitution& witnesses);

}  // namespace lpc
